#include "gleak/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "gleak/detail/rng.hpp"

namespace gleak {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Descending-mass index order with ties broken by stored position.
std::vector<std::size_t> descending_order(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
    return idx;
}

double gamma_bar_raw(const std::vector<double>& masses) {
    auto idx = descending_order(masses);
    double total = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k)
        total += static_cast<double>(k + 1) * masses[idx[k]];
    return total;
}

void check_pair_shapes(const SplitPair& s) {
    if (s.a.labels != s.base.labels || s.b.labels != s.base.labels)
        throw label_error("split pair: labels differ from base");
    for (std::size_t i = 0; i < s.base.size(); ++i) {
        double want = 2.0 * s.base.probs[i];
        if (std::abs(s.a.masses[i] + s.b.masses[i] - want) > kMassTolerance)
            throw validation_error("split pair: a + b != 2 * base at '" + s.base.labels[i] + "'");
    }
}

void check_disjoint(const SplitPair& s, const char* what) {
    for (std::size_t i = 0; i < s.base.size(); ++i)
        if (s.a.masses[i] > 0.0 && s.b.masses[i] > 0.0)
            throw validation_error(std::string(what) + ": supports not disjoint");
}

} // namespace

MassVector make_mass_vector(std::vector<std::string> labels, std::vector<double> masses) {
    if (labels.size() != masses.size())
        throw validation_error("mass vector: labels/masses length mismatch");
    for (double m : masses)
        if (std::isnan(m) || m < 0.0) throw validation_error("mass vector: negative or NaN mass");
    return MassVector{std::move(labels), std::move(masses)};
}

SplitPair make_split_pair(MassVector a, MassVector b, Distribution base) {
    SplitPair s{std::move(a), std::move(b), std::move(base)};
    check_pair_shapes(s);
    return s;
}

double gamma_bar(const MassVector& v) { return gamma_bar_raw(v.masses); }

Channel shattering_channel(const Distribution& px, std::string_view x_star, std::uint64_t m) {
    auto star = px.index_of(x_star);
    if (!star) throw label_error("shattering_channel: unknown symbol '" + std::string(x_star) + "'");
    if (px.probs[*star] <= 0.0)
        throw zero_mass_error("shattering_channel: x_star must have positive mass");
    if (m < 1) throw validation_error("shattering_channel: m must be >= 1");

    std::vector<std::string> u_labels;
    std::vector<std::vector<double>> rows(px.size());
    // one dedicated output per ordinary symbol, a block of m for x_star
    std::size_t col = 0;
    std::vector<std::size_t> first_col(px.size());
    for (std::size_t i = 0; i < px.size(); ++i) {
        first_col[i] = col;
        if (i == *star) {
            for (std::uint64_t k = 0; k < m; ++k)
                u_labels.push_back("u:" + px.labels[i] + ":" + std::to_string(k));
            col += m;
        } else {
            u_labels.push_back("u:" + px.labels[i]);
            col += 1;
        }
    }
    for (std::size_t i = 0; i < px.size(); ++i) {
        rows[i].assign(u_labels.size(), 0.0);
        if (i == *star) {
            for (std::uint64_t k = 0; k < m; ++k)
                rows[i][first_col[i] + k] = 1.0 / static_cast<double>(m);
        } else {
            rows[i][first_col[i]] = 1.0;
        }
    }
    return make_channel(px.labels, std::move(u_labels), std::move(rows));
}

double log_tau_sum(const CostH& h, std::uint64_t offset, std::uint64_t m) {
    if (offset < 1 || m < 1) throw validation_error("tau: offset and m must be >= 1");
    const std::uint64_t last = offset + m - 1;

    switch (h.kind()) {
        case CostH::Kind::Log: {
            // sum log i = lgamma(offset+m) - lgamma(offset)
            double s = std::lgamma(static_cast<double>(offset) + static_cast<double>(m)) -
                       std::lgamma(static_cast<double>(offset));
            return s > 0.0 ? std::log(s) : kNegInf;
        }
        case CostH::Kind::Geometric: {
            // sum a^i = a^offset (a^m - 1)/(a - 1)
            double lna = std::log(h.param());
            double md = static_cast<double>(m);
            double log_num = md * lna;
            if (md * lna < 50.0) log_num = std::log(std::exp(md * lna) - 1.0);
            return static_cast<double>(offset) * lna + log_num - std::log(h.param() - 1.0);
        }
        case CostH::Kind::ExpOverLinear: {
            // dominated by the top of the window; 96 terms cover the rest
            // beyond double precision even for m near 1e9
            std::uint64_t start = (m > 96) ? last - 95 : offset;
            double peak = static_cast<double>(last) - std::log(static_cast<double>(last) + 1.0);
            double acc = 0.0;
            for (std::uint64_t i = start; i <= last; ++i) {
                double t = static_cast<double>(i) - std::log(static_cast<double>(i) + 1.0);
                acc += std::exp(t - peak);
            }
            return peak + std::log(acc);
        }
        case CostH::Kind::Power: {
            double rho = h.param();
            double s;
            if (m <= 1'000'000) {
                s = 0.0;
                for (std::uint64_t i = offset; i <= last; ++i)
                    s += std::pow(static_cast<double>(i), rho);
            } else {
                // Euler-Maclaurin; relative error is negligible at this size
                double a = static_cast<double>(offset), b = static_cast<double>(last);
                s = (std::pow(b, rho + 1.0) - std::pow(a, rho + 1.0)) / (rho + 1.0) +
                    0.5 * (std::pow(a, rho) + std::pow(b, rho)) +
                    rho / 12.0 * (std::pow(b, rho - 1.0) - std::pow(a, rho - 1.0));
            }
            return s > 0.0 ? std::log(s) : kNegInf;
        }
        case CostH::Kind::Table: {
            // explicit values up to the table end, the held last value after
            double s = 0.0;
            std::uint64_t stored_end = std::min<std::uint64_t>(last, h.table_size());
            for (std::uint64_t i = offset; i <= stored_end; ++i) s += h(i);
            if (last > stored_end && last > h.table_size()) {
                std::uint64_t held_from = std::max<std::uint64_t>(offset, h.table_size() + 1);
                s += static_cast<double>(last - held_from + 1) * h(last);
            }
            return s > 0.0 ? std::log(s) : kNegInf;
        }
    }
    return kNegInf;
}

double tau_average(const CostH& h, std::uint64_t offset, std::uint64_t m) {
    double ls = log_tau_sum(h, offset, m);
    if (ls == kNegInf) return 0.0;
    return std::exp(ls - std::log(static_cast<double>(m)));
}

ShatterRatio shattering_pointwise_ratio(const JointSource& j, std::string_view y_label,
                                        const CostH& h, std::uint64_t m) {
    auto yi = j.y_index_of(y_label);
    if (!yi) throw label_error("shattering_pointwise_ratio: unknown y '" + std::string(y_label) + "'");
    if (j.py[*yi] <= 0.0)
        throw zero_mass_error("shattering_pointwise_ratio: P_Y(y) = 0");
    const auto& post = j.posteriors[*yi];

    // x_star maximizes prior/posterior; a zero posterior with positive prior
    // dominates everything (the infinite-ratio case).
    std::size_t star = j.nx();
    double best = -1.0;
    bool best_inf = false;
    for (std::size_t i = 0; i < j.nx(); ++i) {
        if (j.px[i] <= 0.0) continue;
        if (post[i] <= 0.0) {
            if (!best_inf) {
                star = i;
                best_inf = true;
            }
            continue;
        }
        if (best_inf) continue;
        double r = j.px[i] / post[i];
        if (r > best) {
            best = r;
            star = i;
        }
    }
    if (star == j.nx()) throw zero_mass_error("shattering_pointwise_ratio: prior has no support");

    // Closed sums: ordinary symbols occupy guess ranks 1..|X|-1 in their own
    // descending order on each side; the block fills ranks |X|..|X|-1+m.
    auto side_sum = [&](const std::vector<double>& masses) {
        std::vector<double> others;
        others.reserve(j.nx() - 1);
        for (std::size_t i = 0; i < j.nx(); ++i)
            if (i != star) others.push_back(masses[i]);
        std::sort(others.begin(), others.end(), std::greater<double>());
        double s = 0.0;
        for (std::size_t k = 0; k < others.size(); ++k)
            if (others[k] > 0.0) s += h(k + 1) * others[k];
        return s;
    };
    double s_prior = side_sum(j.px);
    double s_post = side_sum(post);

    double log_tau = log_tau_sum(h, j.nx(), m) - std::log(static_cast<double>(m));
    double inv_tau = std::exp(-log_tau);

    ShatterRatio out;
    out.diverges = post[star] <= 0.0;
    double num, den;
    if (std::isfinite(inv_tau)) {
        num = s_prior * inv_tau + j.px[star];
        den = s_post * inv_tau + post[star];
    } else {
        // tau vanished (flat zero-cost window); the block contributes nothing
        num = s_prior;
        den = s_post;
    }
    if (den <= 0.0)
        out.ratio = num <= 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    else
        out.ratio = num / den;
    return out;
}

namespace {

// Work on a padded copy when the alphabet size is odd; the pad symbol never
// carries mass and is dropped again before returning.
struct Padded {
    Distribution pu;
    bool padded = false;
};

Padded pad_to_even(const Distribution& pu) {
    Padded out{pu, false};
    if (pu.size() % 2 == 0) return out;
    std::string pad = "_pad";
    while (out.pu.index_of(pad)) pad += "_";
    out.pu.labels.push_back(pad);
    out.pu.probs.push_back(0.0);
    out.padded = true;
    return out;
}

} // namespace

SplitPair optimal_split(const Distribution& pu) {
    Padded p = pad_to_even(pu);
    auto order = descending_order(p.pu.probs);
    std::vector<double> a(p.pu.size(), 0.0), b(p.pu.size(), 0.0);
    for (std::size_t k = 0; k < order.size(); ++k) {
        double doubled = 2.0 * p.pu.probs[order[k]];
        if (k % 2 == 0)
            a[order[k]] = doubled;
        else
            b[order[k]] = doubled;
    }
    if (p.padded) {
        a.pop_back();
        b.pop_back();
    }
    return SplitPair{MassVector{pu.labels, std::move(a)}, MassVector{pu.labels, std::move(b)}, pu};
}

double claim1_lower_bound(const Distribution& pu) {
    auto order = descending_order(pu.probs);
    double total = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k)
        total += static_cast<double>(k / 2 + 1) * pu.probs[order[k]];
    return total;
}

double split_objective(const SplitPair& s) {
    check_pair_shapes(s);
    double g = guesswork(s.base);
    if (g <= 0.0) throw validation_error("split_objective: degenerate base");
    return 0.5 * (gamma_bar(s.a) + gamma_bar(s.b)) / g;
}

SplitPair disjointify(const SplitPair& s, const SplitObserver& observer) {
    check_pair_shapes(s);
    SplitPair cur = s;
    const std::size_t n = cur.base.size();
    for (std::size_t k = 0; k < n; ++k) {
        auto ord_a = descending_order(cur.a.masses);
        auto ord_b = descending_order(cur.b.masses);
        std::size_t pos_a = 0, pos_b = 0;
        for (std::size_t t = 0; t < n; ++t) {
            if (ord_a[t] == k) pos_a = t;
            if (ord_b[t] == k) pos_b = t;
        }
        double doubled = cur.a.masses[k] + cur.b.masses[k];
        if (pos_a <= pos_b) {
            cur.a.masses[k] = doubled;
            cur.b.masses[k] = 0.0;
        } else {
            cur.b.masses[k] = doubled;
            cur.a.masses[k] = 0.0;
        }
        if (observer) observer(cur);
    }
    return cur;
}

SplitPair balance_supports(const SplitPair& s) {
    check_pair_shapes(s);
    check_disjoint(s, "balance_supports");
    SplitPair cur = s;

    auto support_by_base = [&](const MassVector& side) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < side.size(); ++i)
            if (side.masses[i] > 0.0) idx.push_back(i);
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
            return cur.base.probs[x] > cur.base.probs[y];
        });
        return idx;
    };

    auto sa = support_by_base(cur.a);
    auto sb = support_by_base(cur.b);
    if (sa.size() == sb.size() || sa.size() + 1 == sb.size() || sb.size() + 1 == sa.size())
        return cur;

    MassVector* big = &cur.a;
    MassVector* small = &cur.b;
    std::vector<std::size_t>* big_supp = &sa;
    if (sb.size() > sa.size()) {
        big = &cur.b;
        small = &cur.a;
        big_supp = &sb;
    }
    std::size_t p = big_supp->size();
    std::size_t total = sa.size() + sb.size();
    std::size_t keep = (total + 1) / 2;
    // move the least-probable tail of the larger support to the other side
    for (std::size_t t = keep; t < p; ++t) {
        std::size_t i = (*big_supp)[t];
        small->masses[i] = big->masses[i];
        big->masses[i] = 0.0;
    }
    return cur;
}

SplitPair alternate_swap(const SplitPair& s, const SplitObserver& observer) {
    check_pair_shapes(s);
    check_disjoint(s, "alternate_swap");
    SplitPair cur = s;

    // ranks over positive-mass base symbols
    std::vector<std::size_t> ranked;
    {
        auto ord = descending_order(cur.base.probs);
        for (std::size_t i : ord)
            if (cur.base.probs[i] > 0.0) ranked.push_back(i);
    }
    const std::size_t count = ranked.size();
    if (count == 0) return cur;

    std::vector<char> in_a(count);
    std::size_t na = 0;
    for (std::size_t r = 0; r < count; ++r) {
        in_a[r] = cur.a.masses[ranked[r]] > 0.0;
        na += in_a[r] ? 1 : 0;
    }
    std::size_t nb = count - na;
    if (na > nb + 1 || nb > na + 1)
        throw validation_error("alternate_swap: pair is not balanced");

    // The side taking the odd ranks needs ceil(count/2) symbols: the larger
    // side when count is odd, otherwise whichever side holds rank 1.
    bool odd_side_is_a;
    if (count % 2 == 1)
        odd_side_is_a = na > nb;
    else
        odd_side_is_a = in_a[0];

    for (std::size_t r = 0; r < count; ++r) {
        bool want_a = (r % 2 == 0) ? odd_side_is_a : !odd_side_is_a;
        if (static_cast<bool>(in_a[r]) == want_a) continue;
        std::size_t partner = count;
        for (std::size_t t = r + 1; t < count; ++t) {
            if (static_cast<bool>(in_a[t]) == want_a) {
                partner = t;
                break;
            }
        }
        if (partner == count)
            throw validation_error("alternate_swap: no swap partner; pair not balanced");
        std::swap(in_a[r], in_a[partner]);
        // each symbol keeps its doubled base mass on whichever side now owns it
        for (std::size_t t : {r, partner}) {
            std::size_t i = ranked[t];
            double doubled = 2.0 * cur.base.probs[i];
            cur.a.masses[i] = in_a[t] ? doubled : 0.0;
            cur.b.masses[i] = in_a[t] ? 0.0 : doubled;
        }
        if (observer) observer(cur);
    }
    return cur;
}

double bes_construction_value(std::uint64_t n, double p) {
    if (n < 2 || n % 2 != 0)
        throw validation_error("bes_construction_value: n must be even and >= 2");
    if (!(p >= 0.0 && p < 1.0))
        throw validation_error("bes_construction_value: p must lie in [0,1)");

    std::vector<std::string> labels(n);
    std::vector<double> uniform(n, 1.0 / static_cast<double>(n));
    std::vector<double> a(n, 0.0), b(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = "u" + std::to_string(i + 1);
        if (i % 2 == 0)
            a[i] = 2.0 / static_cast<double>(n);
        else
            b[i] = 2.0 / static_cast<double>(n);
    }
    SplitPair sp{MassVector{labels, std::move(a)}, MassVector{labels, std::move(b)},
                 Distribution{std::move(labels), std::move(uniform)}};
    return 1.0 / ((1.0 - p) * split_objective(sp) + p);
}

double brute_force_split_infimum(const Distribution& pu, unsigned resolution) {
    const std::size_t n = pu.size();
    if (n > 4) throw validation_error("brute_force_split_infimum: |U| must be <= 4");
    if (resolution < 1 || resolution > 50)
        throw validation_error("brute_force_split_infimum: resolution must be in [1,50]");

    std::vector<double> a(n, 0.0), b(n, 0.0);
    double best = std::numeric_limits<double>::infinity();
    const double step = 1.0 / static_cast<double>(resolution);

    // enumerate lattice points of the simplex: compositions of `resolution`
    std::function<void(std::size_t, unsigned)> recurse = [&](std::size_t i, unsigned left) {
        if (i + 1 == n) {
            a[i] = left * step;
            bool ok = true;
            for (std::size_t t = 0; t < n; ++t) {
                b[t] = 2.0 * pu.probs[t] - a[t];
                if (b[t] < -1e-12) {
                    ok = false;
                    break;
                }
                b[t] = std::max(b[t], 0.0);
            }
            if (ok) best = std::min(best, 0.5 * (gamma_bar_raw(a) + gamma_bar_raw(b)));
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            a[i] = k * step;
            recurse(i + 1, left - k);
        }
    };
    recurse(0, resolution);

    if (!std::isfinite(best))
        throw validation_error("brute_force_split_infimum: no feasible grid point");
    return best;
}

SplitPair random_feasible_split(const Distribution& pu, std::uint64_t seed) {
    std::mt19937_64 rng(detail::mix_seed(seed));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t n = pu.size();
    std::vector<double> a(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = 2.0 * pu.probs[i] * unif(rng);
        total += a[i];
    }
    // push the normalization error into whatever headroom each entry has
    for (int pass = 0; pass < 64 && std::abs(total - 1.0) > 1e-14; ++pass) {
        double delta = 1.0 - total;
        double room = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            room += delta > 0.0 ? (2.0 * pu.probs[i] - a[i]) : a[i];
        if (room <= 0.0) break;
        for (std::size_t i = 0; i < n; ++i) {
            double h = delta > 0.0 ? (2.0 * pu.probs[i] - a[i]) : a[i];
            a[i] += delta * h / room;
            a[i] = std::clamp(a[i], 0.0, 2.0 * pu.probs[i]);
        }
        total = std::accumulate(a.begin(), a.end(), 0.0);
    }
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = std::max(2.0 * pu.probs[i] - a[i], 0.0);
    return SplitPair{MassVector{pu.labels, std::move(a)}, MassVector{pu.labels, std::move(b)},
                     pu};
}

} // namespace gleak
