#include "gleak/guessing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gleak/detail/rng.hpp"
#include "gleak/renyi.hpp"

namespace gleak {

CostH CostH::power(double rho) {
    if (!(rho > 0.0)) throw validation_error("cost: power exponent must be > 0");
    return CostH(Kind::Power, rho, {});
}

CostH CostH::log() { return CostH(Kind::Log, 0.0, {}); }

CostH CostH::exp_over_linear() { return CostH(Kind::ExpOverLinear, 0.0, {}); }

CostH CostH::geometric(double a) {
    if (!(a > 1.0)) throw validation_error("cost: geometric base must be > 1");
    return CostH(Kind::Geometric, a, {});
}

CostH CostH::table(std::vector<double> values) {
    if (values.empty()) throw validation_error("cost: empty table");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0.0) throw validation_error("cost: table values must be nonnegative");
        if (i > 0 && values[i] < values[i - 1])
            throw validation_error("cost: table must be nondecreasing");
    }
    return CostH(Kind::Table, 0.0, std::move(values));
}

double CostH::operator()(std::uint64_t n) const {
    if (n == 0) throw validation_error("cost: guess index starts at 1");
    double nd = static_cast<double>(n);
    switch (kind_) {
        case Kind::Power: return std::pow(nd, param_);
        case Kind::Log: return std::log(nd);
        case Kind::ExpOverLinear: return std::exp(nd) / (nd + 1.0);
        case Kind::Geometric: return std::pow(param_, nd);
        case Kind::Table: return n <= table_.size() ? table_[n - 1] : table_.back();
    }
    return 0.0;
}

std::string CostH::name() const {
    char buf[48];
    switch (kind_) {
        case Kind::Power: std::snprintf(buf, sizeof(buf), "power:%g", param_); return buf;
        case Kind::Log: return "log";
        case Kind::ExpOverLinear: return "exp_over_linear";
        case Kind::Geometric: std::snprintf(buf, sizeof(buf), "geometric:%g", param_); return buf;
        case Kind::Table: return "table[" + std::to_string(table_.size()) + "]";
    }
    return "?";
}

GuessOrder optimal_order(const Distribution& p) {
    GuessOrder g;
    g.indices.resize(p.size());
    std::iota(g.indices.begin(), g.indices.end(), std::size_t{0});
    std::stable_sort(g.indices.begin(), g.indices.end(),
                     [&](std::size_t a, std::size_t b) { return p.probs[a] > p.probs[b]; });
    return g;
}

double guesswork(const Distribution& p) {
    auto g = optimal_order(p);
    double total = 0.0;
    for (std::size_t k = 0; k < g.indices.size(); ++k)
        total += static_cast<double>(k + 1) * p.probs[g.indices[k]];
    return total;
}

double h_guesswork(const Distribution& p, const CostH& h) {
    auto g = optimal_order(p);
    double total = 0.0;
    for (std::size_t k = 0; k < g.indices.size(); ++k) {
        double mass = p.probs[g.indices[k]];
        if (mass > 0.0) total += h(k + 1) * mass;
    }
    return total;
}

double conditional_h_guesswork(const JointSource& j, const CostH& h) {
    double total = 0.0;
    for (std::size_t k = 0; k < j.ny(); ++k) {
        if (j.py[k] <= 0.0) continue;
        total += j.py[k] * h_guesswork(Distribution{j.x_labels, j.posteriors[k]}, h);
    }
    return total;
}

double generalized_binomial(double x, double y) {
    auto is_gamma_pole = [](double v) { return v <= 0.0 && v == std::floor(v); };
    if (is_gamma_pole(x + 1.0) || is_gamma_pole(y + 1.0) || is_gamma_pole(x - y + 1.0))
        throw validation_error("generalized_binomial: gamma pole");
    return std::exp(std::lgamma(x + 1.0) - std::lgamma(y + 1.0) - std::lgamma(x - y + 1.0));
}

namespace {

void check_rho(double rho) {
    if (!(rho > 0.0)) throw validation_error("rho must be > 0");
}

} // namespace

double oblivious_cost(const Distribution& p, double rho) {
    check_rho(rho);
    return std::exp(rho * renyi_entropy(p, Order::of(1.0 / (1.0 + rho))));
}

double oblivious_cost_conditional(const JointSource& j, double rho) {
    check_rho(rho);
    return std::exp(rho * arimoto_cond_entropy(j, Order::of(1.0 / (1.0 + rho))));
}

Distribution oblivious_optimal_phat(const Distribution& p, double rho) {
    check_rho(rho);
    std::vector<double> w(p.size());
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        w[i] = p.probs[i] > 0.0 ? std::pow(p.probs[i], 1.0 / (1.0 + rho)) : 0.0;
        total += w[i];
    }
    for (double& v : w) v /= total;
    return Distribution{p.labels, std::move(w)};
}

ExtendedReal oblivious_expected_v(const Distribution& p, const Distribution& phat, double rho) {
    check_rho(rho);
    if (p.labels != phat.labels)
        throw label_error("oblivious_expected_v: alphabets differ");
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.probs[i] <= 0.0) continue;
        if (phat.probs[i] <= 0.0) return ExtendedReal::infinity();
        total += p.probs[i] * std::pow(phat.probs[i], -rho);
    }
    return ExtendedReal(total);
}

namespace {

constexpr std::uint64_t kDrawCap = 10'000'000;

std::size_t sample_index(const std::vector<double>& cdf, double u) {
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t i = static_cast<std::size_t>(it - cdf.begin());
    return std::min(i, cdf.size() - 1);
}

std::vector<double> cumulative(const std::vector<double>& probs) {
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;
    return cdf;
}

} // namespace

SimResult simulate_memoryless_guessing(const Distribution& p, const Distribution& phat,
                                       double rho, std::uint64_t trials, std::uint64_t seed) {
    check_rho(rho);
    if (p.labels != phat.labels)
        throw label_error("simulate_memoryless_guessing: alphabets differ");
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.probs[i] > 0.0 && phat.probs[i] <= 0.0)
            throw zero_mass_error("simulate_memoryless_guessing: supp(P) not covered by Phat");
    if (trials == 0) throw validation_error("simulate_memoryless_guessing: trials must be >= 1");

    std::mt19937_64 rng(detail::mix_seed(seed));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto p_cdf = cumulative(p.probs);
    auto phat_cdf = cumulative(phat.probs);

    SimResult r;
    r.trials = trials;
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::size_t x = sample_index(p_cdf, unif(rng));
        std::uint64_t k = 0;
        bool hit = false;
        while (k < kDrawCap) {
            ++k;
            if (sample_index(phat_cdf, unif(rng)) == x) {
                hit = true;
                break;
            }
        }
        if (!hit) ++r.truncated;
        double v = generalized_binomial(static_cast<double>(k) + rho - 1.0, rho);
        sum += v;
        sumsq += v * v;
    }
    double n = static_cast<double>(trials);
    r.mean = sum / n;
    double var = std::max(0.0, (sumsq - n * r.mean * r.mean) / std::max(1.0, n - 1.0));
    r.stderr_ = std::sqrt(var / n);
    return r;
}

} // namespace gleak
