#include "gleak/renyi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

namespace gleak {

Order Order::alpha(double a) {
    if (!(a > 0.0) || !std::isfinite(a))
        throw validation_error("order: alpha must be a positive real");
    if (a == 1.0) throw validation_error("order: alpha 1 must use the ONE marker");
    return Order(Kind::Alpha, a);
}

Order Order::of(double a) {
    if (a == 1.0) return one();
    if (std::isinf(a) && a > 0) return infinity();
    return alpha(a);
}

double Order::alpha_value() const {
    if (kind_ != Kind::Alpha) throw validation_error("order: no finite alpha value");
    return alpha_;
}

std::string Order::str() const {
    if (is_one()) return "1";
    if (is_infinity()) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", alpha_);
    return buf;
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(sum(exp(t))) with max shift; -inf for an empty or all minus-inf list.
double log_sum_exp(const std::vector<double>& terms) {
    double m = kNegInf;
    for (double t : terms) m = std::max(m, t);
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (double t : terms)
        if (t != kNegInf) s += std::exp(t - m);
    return m + std::log(s);
}

void check_same_alphabet(const Distribution& p, const Distribution& q) {
    if (p.labels != q.labels)
        throw label_error("renyi_divergence: distributions over different alphabets");
}

} // namespace

ExtendedReal renyi_divergence(const Distribution& p, const Distribution& q, Order a) {
    check_same_alphabet(p, q);

    if (a.is_infinity()) {
        // max over supp(P) of log P/Q
        double best = kNegInf;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p.probs[i] <= 0.0) continue;
            if (q.probs[i] <= 0.0) return ExtendedReal::infinity();
            best = std::max(best, std::log(p.probs[i] / q.probs[i]));
        }
        return ExtendedReal(best == kNegInf ? 0.0 : best);
    }

    if (a.is_one()) {
        double kl = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p.probs[i] <= 0.0) continue;
            if (q.probs[i] <= 0.0) return ExtendedReal::infinity();
            kl += p.probs[i] * std::log(p.probs[i] / q.probs[i]);
        }
        return ExtendedReal(std::max(kl, 0.0));
    }

    const double alpha = a.alpha_value();
    std::vector<double> terms;
    terms.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.probs[i] <= 0.0) continue;
        if (q.probs[i] <= 0.0) {
            if (alpha > 1.0) return ExtendedReal::infinity();
            continue; // 0^(1-a) = 0 for a < 1
        }
        terms.push_back(alpha * std::log(p.probs[i]) + (1.0 - alpha) * std::log(q.probs[i]));
    }
    double lse = log_sum_exp(terms);
    if (lse == kNegInf) return ExtendedReal::infinity(); // vanishing sum
    double d = lse / (alpha - 1.0);
    // The sum is <= 1 for a < 1 and >= 1 for a > 1 up to rounding; clamp the
    // few-ulp negatives so D(P||P) is exactly nonnegative.
    return ExtendedReal(std::max(d, 0.0));
}

double renyi_entropy(const Distribution& p, Order a) {
    if (a.is_infinity()) {
        double pmax = *std::max_element(p.probs.begin(), p.probs.end());
        return -std::log(pmax);
    }
    if (a.is_one()) {
        double h = 0.0;
        for (double pi : p.probs)
            if (pi > 0.0) h -= pi * std::log(pi);
        return std::max(h, 0.0);
    }
    const double alpha = a.alpha_value();
    std::vector<double> terms;
    terms.reserve(p.size());
    for (double pi : p.probs)
        if (pi > 0.0) terms.push_back(alpha * std::log(pi));
    double h = log_sum_exp(terms) / (1.0 - alpha);
    return std::max(h, 0.0);
}

double arimoto_cond_entropy(const JointSource& j, Order a) {
    if (a.is_one()) {
        double h = 0.0;
        for (std::size_t k = 0; k < j.ny(); ++k) {
            if (j.py[k] <= 0.0) continue;
            for (double px_given_y : j.posteriors[k])
                if (px_given_y > 0.0) h -= j.py[k] * px_given_y * std::log(px_given_y);
        }
        return std::max(h, 0.0);
    }
    if (a.is_infinity()) {
        // -log sum_y P_Y(y) max_x P(x|y)
        double s = 0.0;
        for (std::size_t k = 0; k < j.ny(); ++k) {
            if (j.py[k] <= 0.0) continue;
            s += j.py[k] * *std::max_element(j.posteriors[k].begin(), j.posteriors[k].end());
        }
        return -std::log(s);
    }

    const double alpha = a.alpha_value();
    std::vector<double> outer;
    outer.reserve(j.ny());
    for (std::size_t k = 0; k < j.ny(); ++k) {
        if (j.py[k] <= 0.0) continue;
        std::vector<double> inner;
        inner.reserve(j.nx());
        for (double px_given_y : j.posteriors[k])
            if (px_given_y > 0.0) inner.push_back(alpha * std::log(px_given_y));
        outer.push_back(std::log(j.py[k]) + log_sum_exp(inner) / alpha);
    }
    return alpha / (1.0 - alpha) * log_sum_exp(outer);
}

double arimoto_mi(const JointSource& j, Order a) {
    return renyi_entropy(marginal_x(j), a) - arimoto_cond_entropy(j, a);
}

} // namespace gleak
