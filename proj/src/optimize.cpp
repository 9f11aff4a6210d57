#include "gleak/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <numeric>
#include <random>

#include "gleak/detail/rng.hpp"
#include "gleak/renyi.hpp"

namespace gleak {

namespace {

using Rows = std::vector<std::vector<double>>;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Euclidean projection onto the probability simplex (sort and threshold).
std::vector<double> project_to_simplex(std::vector<double> v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0, theta = 0.0;
    std::size_t rho = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        css += u[i];
        double t = (css - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) {
            rho = i;
            theta = t;
        }
    }
    (void)rho;
    for (double& x : v) x = std::max(x - theta, 0.0);
    return v;
}

std::vector<double> random_simplex_point(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> v(n);
    double total = 0.0;
    for (double& x : v) {
        x = -std::log(1.0 - unif(rng)); // Exp(1) spacings give a flat simplex draw
        total += x;
    }
    for (double& x : v) x /= total;
    return v;
}

// h-weighted guesswork of raw masses: sum h(i) m_(i) over the descending order.
double hg_raw(std::vector<double> masses, const CostH& h) {
    std::sort(masses.begin(), masses.end(), std::greater<double>());
    double s = 0.0;
    for (std::size_t k = 0; k < masses.size(); ++k) {
        if (masses[k] <= 0.0) break;
        s += h(k + 1) * masses[k];
    }
    return s;
}

struct Objective {
    const JointSource* j;
    enum class Kind { Guesswork, Oblivious, Pointwise } kind;
    CostH h = CostH::power(1.0);
    double rho = 1.0;
    std::size_t y_index = 0;

    double operator()(const Rows& rows) const {
        const JointSource& src = *j;
        const std::size_t nu = rows.empty() ? 0 : rows[0].size();
        const std::size_t ny = src.ny();

        // induced P_UY and P_U
        std::vector<std::vector<double>> puy(nu, std::vector<double>(ny, 0.0));
        std::vector<double> pu(nu, 0.0);
        for (std::size_t x = 0; x < src.nx(); ++x) {
            for (std::size_t u = 0; u < nu; ++u) {
                double k = rows[x][u];
                if (k <= 0.0) continue;
                for (std::size_t y = 0; y < ny; ++y) puy[u][y] += k * src.pxy[x][y];
            }
        }
        for (std::size_t u = 0; u < nu; ++u)
            for (std::size_t y = 0; y < ny; ++y) pu[u] += puy[u][y];

        if (kind == Kind::Oblivious) {
            const double alpha = 1.0 / (1.0 + rho);
            double sum_pu = 0.0;
            for (double v : pu)
                if (v > 0.0) sum_pu += std::pow(v, alpha);
            double h_alpha = std::log(sum_pu) / (1.0 - alpha);
            double outer = 0.0;
            for (std::size_t y = 0; y < ny; ++y) {
                double inner = 0.0;
                for (std::size_t u = 0; u < nu; ++u)
                    if (puy[u][y] > 0.0) inner += std::pow(puy[u][y], alpha);
                if (inner > 0.0) outer += std::pow(inner, 1.0 / alpha);
            }
            double h_cond = alpha / (1.0 - alpha) * std::log(outer);
            return rho * (h_alpha - h_cond);
        }

        double num = hg_raw(pu, h);
        double den;
        if (kind == Kind::Guesswork) {
            den = 0.0;
            for (std::size_t y = 0; y < ny; ++y) {
                if (src.py[y] <= 0.0) continue;
                std::vector<double> col(nu);
                for (std::size_t u = 0; u < nu; ++u) col[u] = puy[u][y];
                den += hg_raw(std::move(col), h);
            }
        } else {
            std::vector<double> col(nu);
            for (std::size_t u = 0; u < nu; ++u) col[u] = puy[u][y_index];
            den = hg_raw(std::move(col), h) / src.py[y_index];
        }
        if (den <= 0.0) return num <= 0.0 ? 0.0 : kInf;
        return std::log(num / den);
    }
};

Objective resolve_objective(const JointSource& j, const ChannelObjective& objective) {
    Objective f;
    f.j = &j;
    if (const auto* g = std::get_if<GuessworkRatio>(&objective)) {
        f.kind = Objective::Kind::Guesswork;
        f.h = g->h;
    } else if (const auto* o = std::get_if<ObliviousRatio>(&objective)) {
        if (!(o->rho > 0.0)) throw validation_error("objective: rho must be > 0");
        f.kind = Objective::Kind::Oblivious;
        f.rho = o->rho;
    } else {
        const auto& pw = std::get<PointwiseRatio>(objective);
        auto yi = j.y_index_of(pw.y);
        if (!yi) throw label_error("objective: unknown y label '" + pw.y + "'");
        if (j.py[*yi] <= 0.0) throw zero_mass_error("objective: P_Y(y) = 0");
        f.kind = Objective::Kind::Pointwise;
        f.h = pw.h;
        f.y_index = *yi;
    }
    return f;
}

Channel rows_to_channel(const std::vector<std::string>& x_labels, Rows rows) {
    std::vector<std::string> u_labels(rows.empty() ? 0 : rows[0].size());
    for (std::size_t u = 0; u < u_labels.size(); ++u) u_labels[u] = "u" + std::to_string(u);
    return make_channel(x_labels, std::move(u_labels), std::move(rows));
}

// One block of outputs per input, uniform within the block.
Rows block_rows(std::size_t nx, std::size_t nu, const std::vector<std::size_t>& m) {
    Rows rows(nx, std::vector<double>(nu, 0.0));
    std::size_t col = 0;
    for (std::size_t x = 0; x < nx; ++x) {
        for (std::size_t k = 0; k < m[x] && col + k < nu; ++k)
            rows[x][col + k] = 1.0 / static_cast<double>(m[x]);
        col += m[x];
    }
    return rows;
}

// Integer block sizes >= 1 summing to nu, proportional to the weights.
std::vector<std::size_t> proportional_blocks(const std::vector<double>& w, std::size_t nu) {
    const std::size_t n = w.size();
    std::vector<std::size_t> m(n, 1);
    double total = 0.0;
    for (double x : w) total += std::max(x, 0.0);
    std::size_t assigned = n;
    if (total > 0.0) {
        for (std::size_t i = 0; i < n && assigned < nu; ++i) {
            std::size_t extra = static_cast<std::size_t>(std::floor(w[i] / total * static_cast<double>(nu - n)));
            m[i] += extra;
            assigned += extra;
        }
    }
    // hand out the rounding remainder by largest weight
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
    for (std::size_t t = 0; assigned < nu; ++t) {
        ++m[idx[t % n]];
        ++assigned;
    }
    return m;
}

struct RestartOutcome {
    double value = -kInf;
    Rows rows;
    int iterations = 0;
    bool converged = false;
};

// Projected coordinate ascent on one starting channel: per-row
// finite-difference direction, simplex projection, geometric step decay.
RestartOutcome ascend(const Objective& f, Rows rows, const OptimizerConfig& cfg) {
    RestartOutcome out;
    const std::size_t nx = rows.size();
    const std::size_t nu = rows[0].size();
    double best = f(rows);
    double step = cfg.initial_step;
    int stall = 0;

    std::vector<double> grad(nu);
    for (int it = 1; it <= cfg.max_iters; ++it) {
        out.iterations = it;
        if (std::isinf(best)) { // an unbounded point; nothing left to improve
            out.converged = true;
            break;
        }
        double before = best;
        for (std::size_t r = 0; r < nx; ++r) {
            for (std::size_t c = 0; c < nu; ++c) {
                Rows probe = rows;
                probe[r][c] += cfg.fd_step;
                probe[r] = project_to_simplex(std::move(probe[r]));
                grad[c] = (f(probe) - best) / cfg.fd_step;
            }
            double mean = std::accumulate(grad.begin(), grad.end(), 0.0) / static_cast<double>(nu);
            double norm = 0.0;
            for (double& g : grad) {
                g -= mean;
                norm = std::max(norm, std::abs(g));
            }
            if (norm < 1e-15) continue;

            bool accepted = false;
            for (double s : {step, step * 0.5, step * 0.25}) {
                Rows cand = rows;
                for (std::size_t c = 0; c < nu; ++c) cand[r][c] += s / norm * grad[c];
                cand[r] = project_to_simplex(std::move(cand[r]));
                double val = f(cand);
                if (val > best) {
                    rows = std::move(cand);
                    best = val;
                    accepted = true;
                    break;
                }
            }
            if (!accepted) step *= cfg.step_decay;
        }
        if (best - before < cfg.tol)
            ++stall;
        else
            stall = 0;
        if (stall >= cfg.stall_iters || step < 1e-13) {
            out.converged = true;
            break;
        }
    }
    out.value = best;
    out.rows = std::move(rows);
    return out;
}

// Runs one job per restart, optionally batched over threads; the reduction
// is by value with ties to the lower restart index, so the thread count
// never changes the result.
std::vector<RestartOutcome> run_restarts(int n, int threads,
                                         const std::function<RestartOutcome(int)>& job) {
    std::vector<RestartOutcome> out(n);
    if (threads <= 1) {
        for (int r = 0; r < n; ++r) out[r] = job(r);
        return out;
    }
    for (int base = 0; base < n; base += threads) {
        int hi = std::min(n, base + threads);
        std::vector<std::future<RestartOutcome>> batch;
        for (int r = base; r < hi; ++r)
            batch.push_back(std::async(std::launch::async, job, r));
        for (int r = base; r < hi; ++r) out[r] = batch[r - base].get();
    }
    return out;
}

} // namespace

double evaluate_channel_objective(const JointSource& j, const ChannelObjective& objective,
                                  const std::vector<std::vector<double>>& u_rows) {
    if (u_rows.size() != j.nx())
        throw validation_error("evaluate_channel_objective: one row per x required");
    return resolve_objective(j, objective)(u_rows);
}

Channel seeded_bes_channel(std::uint64_t n) {
    if (n < 2 || n % 2 != 0)
        throw validation_error("seeded_bes_channel: n must be even and >= 2");
    Rows rows(2, std::vector<double>(n, 0.0));
    for (std::uint64_t i = 0; i < n; ++i) {
        double v = 2.0 / static_cast<double>(n);
        if (i % 2 == 0)
            rows[0][i] = v;
        else
            rows[1][i] = v;
    }
    std::vector<std::string> u_labels(n);
    for (std::uint64_t i = 0; i < n; ++i) u_labels[i] = "u" + std::to_string(i + 1);
    return make_channel({"0", "1"}, std::move(u_labels), std::move(rows));
}

OptResult maximize_u_channel(const JointSource& j, const ChannelObjective& objective,
                             const OptimizerConfig& cfg) {
    if (cfg.u_size < 2) throw validation_error("maximize_u_channel: u_size must be >= 2");
    if (cfg.restarts < 1) throw validation_error("maximize_u_channel: restarts must be >= 1");
    const std::size_t nx = j.nx();
    const std::size_t nu = cfg.u_size;
    Objective f = resolve_objective(j, objective);

    std::vector<Rows> warm;

    { // identity-style embedding of X into U
        Rows rows(nx, std::vector<double>(nu, 0.0));
        for (std::size_t x = 0; x < nx; ++x) rows[x][x % nu] = 1.0;
        warm.push_back(std::move(rows));
    }

    if (nx == 2) { // interleaved split, the erasure-source construction
        std::size_t even = nu - (nu % 2);
        Rows rows(2, std::vector<double>(nu, 0.0));
        for (std::size_t i = 0; i < even; ++i)
            rows[i % 2][i] = 2.0 / static_cast<double>(even);
        warm.push_back(std::move(rows));
    }

    if (f.kind == Objective::Kind::Pointwise && nu >= nx + 1) {
        // shattering start: spread the prior/posterior ratio maximizer
        const auto& post = j.posteriors[f.y_index];
        std::size_t star = nx;
        double best_ratio = -1.0;
        bool best_inf = false;
        for (std::size_t i = 0; i < nx; ++i) {
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
            if (r > best_ratio) {
                best_ratio = r;
                star = i;
            }
        }
        if (star < nx) {
            std::vector<std::size_t> m(nx, 1);
            m[star] = nu - (nx - 1);
            warm.push_back(block_rows(nx, nu, m));
        }
    }

    if (f.kind == Objective::Kind::Oblivious && nu >= nx) {
        // shape blocks toward the capacity-achieving prior at order 1/(1+rho)
        try {
            Channel ch = channel_from_joint(j).channel;
            OptimizerConfig inner;
            inner.restarts = 2;
            inner.max_iters = 500;
            inner.seed = detail::derive_seed(cfg.seed, 0x0B15);
            OptResult cap = arimoto_capacity(ch, 1.0 / (1.0 + f.rho), inner);
            const auto& prior = std::get<Distribution>(cap.argument);
            const double alpha = 1.0 / (1.0 + f.rho);
            std::vector<double> w(nx, 0.0);
            for (std::size_t i = 0; i < nx; ++i) {
                if (j.px[i] <= 0.0) continue;
                auto k = prior.index_of(j.x_labels[i]);
                if (!k || prior.probs[*k] <= 0.0) continue;
                // block sizes m_x with m^(1-a) P_X^a proportional to the
                // target prior raised to a
                double q_target = std::pow(prior.probs[*k], alpha);
                w[i] = std::pow(q_target / std::pow(j.px[i], alpha), 1.0 / (1.0 - alpha));
            }
            warm.push_back(block_rows(nx, nu, proportional_blocks(w, nu)));
        } catch (const std::exception&) {
            // warm start is best-effort; random restarts still run
        }
    }

    int total = std::max<int>(cfg.restarts, static_cast<int>(warm.size()));
    auto job = [&](int r) {
        Rows start;
        if (r < static_cast<int>(warm.size())) {
            start = warm[r];
        } else {
            std::mt19937_64 rng(detail::derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
            start.resize(nx);
            for (std::size_t x = 0; x < nx; ++x) start[x] = random_simplex_point(rng, nu);
        }
        return ascend(f, std::move(start), cfg);
    };
    auto outcomes = run_restarts(total, cfg.threads, job);

    int best_r = 0;
    for (int r = 1; r < total; ++r)
        if (outcomes[r].value > outcomes[best_r].value) best_r = r;

    OptResult res;
    res.best_value = outcomes[best_r].value;
    res.argument = rows_to_channel(j.x_labels, outcomes[best_r].rows);
    res.iterations = outcomes[best_r].iterations;
    res.converged = outcomes[best_r].converged;
    res.restart_best.reserve(total);
    for (const auto& o : outcomes) res.restart_best.push_back(o.value);
    return res;
}

// ---------------------------------------------------------------------------
// Input-prior optimization of Arimoto mutual information.
//
// With s_x = P(x)^alpha and Q = s / sum(s), the mutual information becomes
//   f(Q) = alpha/(alpha-1) log sum_y (sum_x Q_x P(y|x)^alpha)^(1/alpha),
// which is concave (alpha > 1) or a negative multiple of a convex function
// (alpha < 1) in Q, so accepted-ascent steps cannot get trapped.

namespace {

struct CapacityWork {
    const Channel* ch;
    double alpha;
    std::vector<std::vector<double>> w; // P(y|x)^alpha

    double value(const std::vector<double>& q) const {
        const std::size_t ny = ch->num_outputs();
        const std::size_t nx = ch->num_inputs();
        double lse_max = -kInf;
        std::vector<double> t;
        t.reserve(ny);
        for (std::size_t y = 0; y < ny; ++y) {
            double s = 0.0;
            for (std::size_t x = 0; x < nx; ++x) s += q[x] * w[x][y];
            if (s <= 0.0) continue;
            double ty = std::log(s) / alpha;
            t.push_back(ty);
            lse_max = std::max(lse_max, ty);
        }
        double acc = 0.0;
        for (double ty : t) acc += std::exp(ty - lse_max);
        double lse = lse_max + std::log(acc);
        return alpha / (alpha - 1.0) * lse;
    }

    // D_x = sum_y w[x][y] S_y^((1-alpha)/alpha), the common gradient factor.
    std::vector<double> factor(const std::vector<double>& q) const {
        const std::size_t ny = ch->num_outputs();
        const std::size_t nx = ch->num_inputs();
        std::vector<double> sy(ny, 0.0);
        for (std::size_t y = 0; y < ny; ++y)
            for (std::size_t x = 0; x < nx; ++x) sy[y] += q[x] * w[x][y];
        std::vector<double> d(nx, 0.0);
        for (std::size_t x = 0; x < nx; ++x)
            for (std::size_t y = 0; y < ny; ++y)
                if (sy[y] > 0.0) d[x] += w[x][y] * std::pow(sy[y], (1.0 - alpha) / alpha);
        return d;
    }
};

} // namespace

OptResult arimoto_capacity(const Channel& ch, double alpha, const OptimizerConfig& cfg) {
    if (!(alpha > 0.0) || alpha == 1.0)
        throw validation_error("arimoto_capacity: alpha must be positive and != 1");
    if (cfg.restarts < 1) throw validation_error("arimoto_capacity: restarts must be >= 1");
    const std::size_t nx = ch.num_inputs();

    CapacityWork work;
    work.ch = &ch;
    work.alpha = alpha;
    work.w.assign(nx, {});
    for (std::size_t x = 0; x < nx; ++x) {
        work.w[x].resize(ch.num_outputs());
        for (std::size_t y = 0; y < ch.num_outputs(); ++y)
            work.w[x][y] = ch.rows[x][y] > 0.0 ? std::pow(ch.rows[x][y], alpha) : 0.0;
    }

    const double dir = alpha > 1.0 ? 1.0 : -1.0;

    auto job = [&](int r) {
        std::vector<double> q;
        if (r == 0) {
            q.assign(nx, 1.0 / static_cast<double>(nx));
        } else {
            std::mt19937_64 rng(detail::derive_seed(cfg.seed, 0xA100 + static_cast<std::uint64_t>(r)));
            q = random_simplex_point(rng, nx);
        }
        RestartOutcome out;
        double best = work.value(q);
        double step = cfg.initial_step;
        int stall = 0;
        for (int it = 1; it <= cfg.max_iters; ++it) {
            out.iterations = it;
            double before = best;
            auto d = work.factor(q);

            // multiplicative update, damped until it improves
            bool accepted = false;
            for (double s : {1.0, 0.5, 0.25, 0.125}) {
                std::vector<double> cand(nx, 0.0);
                double total = 0.0;
                for (std::size_t x = 0; x < nx; ++x) {
                    if (q[x] <= 0.0 || d[x] <= 0.0) {
                        cand[x] = 0.0;
                        continue;
                    }
                    cand[x] = q[x] * std::pow(d[x], dir * s);
                    total += cand[x];
                }
                if (total <= 0.0) continue;
                for (double& v : cand) v /= total;
                double val = work.value(cand);
                if (val > best) {
                    q = std::move(cand);
                    best = val;
                    accepted = true;
                    break;
                }
            }
            if (!accepted) {
                // projected-gradient fallback with geometric decay
                double norm = 0.0;
                for (double v : d) norm = std::max(norm, std::abs(v));
                if (norm > 0.0) {
                    std::vector<double> cand(nx);
                    for (std::size_t x = 0; x < nx; ++x) cand[x] = q[x] + dir * step / norm * d[x];
                    cand = project_to_simplex(std::move(cand));
                    double val = work.value(cand);
                    if (val > best) {
                        q = std::move(cand);
                        best = val;
                    } else {
                        step *= cfg.step_decay;
                    }
                }
            }
            if (best - before < cfg.tol)
                ++stall;
            else
                stall = 0;
            if (stall >= cfg.stall_iters || step < 1e-14) {
                out.converged = true;
                break;
            }
        }
        out.value = best;
        out.rows.assign(1, q);
        return out;
    };

    auto outcomes = run_restarts(cfg.restarts, cfg.threads, job);
    int best_r = 0;
    for (int r = 1; r < cfg.restarts; ++r)
        if (outcomes[r].value > outcomes[best_r].value) best_r = r;

    // prior recovered from the substitution: P* proportional to Q^(1/alpha)
    const auto& q = outcomes[best_r].rows[0];
    std::vector<double> prior(nx, 0.0);
    double total = 0.0;
    for (std::size_t x = 0; x < nx; ++x) {
        prior[x] = q[x] > 0.0 ? std::pow(q[x], 1.0 / alpha) : 0.0;
        total += prior[x];
    }
    for (double& v : prior) v /= total;

    OptResult res;
    res.best_value = outcomes[best_r].value;
    res.argument = make_distribution(ch.input_labels, prior);
    res.iterations = outcomes[best_r].iterations;
    res.converged = outcomes[best_r].converged;
    res.restart_best.reserve(cfg.restarts);
    for (const auto& o : outcomes) res.restart_best.push_back(o.value);
    return res;
}

namespace {

double definitional_mi(const Channel& ch, const std::vector<double>& prior, double alpha) {
    JointSource j = joint_from(make_distribution(ch.input_labels, prior), ch);
    return arimoto_mi(j, Order::of(alpha));
}

} // namespace

double grid_capacity_oracle(const Channel& ch, double alpha, unsigned resolution) {
    const std::size_t nx = ch.num_inputs();
    if (nx > 3) throw validation_error("grid_capacity_oracle: at most 3 inputs");
    if (nx == 1) return 0.0;
    if (nx == 2) {
        if (resolution < 1 || resolution > 100000)
            throw validation_error("grid_capacity_oracle: binary resolution must be in [1,1e5]");
        double best = 0.0;
        for (unsigned i = 0; i <= resolution; ++i) {
            double t = static_cast<double>(i) / resolution;
            best = std::max(best, definitional_mi(ch, {t, 1.0 - t}, alpha));
        }
        return best;
    }
    if (resolution < 1 || resolution > 300)
        throw validation_error("grid_capacity_oracle: ternary resolution must be in [1,300]");
    double best = 0.0;
    for (unsigned i = 0; i <= resolution; ++i)
        for (unsigned k = 0; k + i <= resolution; ++k) {
            double a = static_cast<double>(i) / resolution;
            double b = static_cast<double>(k) / resolution;
            double c = std::max(1.0 - a - b, 0.0); // guard boundary rounding
            best = std::max(best, definitional_mi(ch, {a, b, c}, alpha));
        }
    return best;
}

namespace {

// D_inf between a prior and its posterior under the channel, for one y.
// Returns +inf when the posterior loses part of the prior's support.
double prior_posterior_dinf(const Channel& ch, const std::vector<double>& prior, std::size_t y) {
    double py = 0.0;
    for (std::size_t x = 0; x < ch.num_inputs(); ++x) py += prior[x] * ch.rows[x][y];
    if (py <= 0.0) return 0.0;
    double best = 0.0;
    for (std::size_t x = 0; x < ch.num_inputs(); ++x) {
        if (prior[x] <= 0.0) continue;
        double post = prior[x] * ch.rows[x][y] / py;
        if (post <= 0.0) return kInf;
        best = std::max(best, std::log(prior[x] / post));
    }
    return best;
}

double scan_prior(const Channel& ch, const std::vector<double>& prior) {
    double best = 0.0;
    for (std::size_t y = 0; y < ch.num_outputs(); ++y)
        best = std::max(best, prior_posterior_dinf(ch, prior, y));
    return best;
}

} // namespace

ExtendedReal max_prior_pointwise_leakage(const Channel& ch, unsigned resolution) {
    const std::size_t nx = ch.num_inputs();
    if (nx > 3) throw validation_error("max_prior_pointwise_leakage: at most 3 inputs");
    if (resolution < 1) throw validation_error("max_prior_pointwise_leakage: bad resolution");
    if (nx == 1) return ExtendedReal(0.0);

    double best = 0.0;
    if (nx == 2) {
        for (unsigned i = 0; i <= resolution; ++i) {
            double t = static_cast<double>(i) / resolution;
            double v = scan_prior(ch, {t, 1.0 - t});
            if (std::isinf(v)) return ExtendedReal::infinity();
            best = std::max(best, v);
        }
        return ExtendedReal(best);
    }
    for (unsigned i = 0; i <= resolution; ++i)
        for (unsigned k = 0; k + i <= resolution; ++k) {
            double a = static_cast<double>(i) / resolution;
            double b = static_cast<double>(k) / resolution;
            double v = scan_prior(ch, {a, b, std::max(1.0 - a - b, 0.0)});
            if (std::isinf(v)) return ExtendedReal::infinity();
            best = std::max(best, v);
        }
    return ExtendedReal(best);
}

} // namespace gleak
