// Acceptance suite: one pass/fail line per criterion, exit code equal to the
// number of failed criteria. Run a single criterion with --criterion N.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gleak/cli.hpp"
#include "gleak/constructions.hpp"
#include "gleak/detail/rng.hpp"
#include "gleak/guessing.hpp"
#include "gleak/leakage.hpp"
#include "gleak/optimize.hpp"
#include "gleak/renyi.hpp"

using namespace gleak;
using nlohmann::json;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Check {
    Outcome* out;
    void operator()(bool ok, const std::string& why) {
        if (!ok) {
            out->pass = false;
            if (!out->detail.empty()) out->detail += "; ";
            out->detail += why;
        }
    }
};

std::string fmt(double v, const char* f = "%.4f") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

Distribution random_distribution(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> probs(n);
    double total = 0.0;
    for (double& p : probs) {
        p = -std::log(1.0 - unif(rng));
        total += p;
    }
    for (double& p : probs) p /= total;
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = "s" + std::to_string(i);
    return make_distribution(std::move(labels), std::move(probs));
}

JointSource random_joint(std::mt19937_64& rng, std::size_t nx, std::size_t ny) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::vector<double>> pxy(nx, std::vector<double>(ny));
    double total = 0.0;
    for (auto& row : pxy)
        for (double& p : row) {
            p = -std::log(1.0 - unif(rng));
            total += p;
        }
    for (auto& row : pxy)
        for (double& p : row) p /= total;
    std::vector<std::string> xs(nx), ys(ny);
    for (std::size_t i = 0; i < nx; ++i) xs[i] = "x" + std::to_string(i);
    for (std::size_t k = 0; k < ny; ++k) ys[k] = "y" + std::to_string(k);
    return make_joint(std::move(xs), std::move(ys), std::move(pxy));
}

// Shared state between criteria 1/3 and the never-exceed audit (criterion 4).
struct AuditedValue {
    double value;
    double bound; // +inf allowed
};
std::vector<AuditedValue> g_audit;

// ---------------------------------------------------------------------------
// 1. Erasure-source closed form via the optimize-channel subcommand.

Outcome criterion1() {
    Outcome out;
    Check check{&out};
    g_audit.clear();

    for (double p : {0.0, 0.25, 0.5, 0.75}) {
        std::string src_path = "acc1_src.json";
        {
            JointSource bes = erasure_source(p);
            std::ofstream f(src_path);
            f << R"({"x_labels":["0","1"],"y_labels":["0","e","1"],"pxy":[[)"
              << (1.0 - p) / 2.0 << "," << p / 2.0 << ",0],[0," << p / 2.0 << ","
              << (1.0 - p) / 2.0 << "]]}";
        }
        cli::OptimizeArgs args;
        args.common.input = src_path;
        args.common.out = "acc1_out.json";
        args.common.u_size = 16;
        args.common.restarts = 32;
        args.common.seed = 0;
        args.objective = "guesswork";
        int rc = cli::run_optimize_channel(args);
        check(rc == 0, "p=" + fmt(p, "%.2f") + ": exit code " + std::to_string(rc));

        std::ifstream f(args.common.out);
        json j = json::parse(f);
        double best = j["result"]["best_value"].get<double>();
        double target = std::log(2.0 / (1.0 + p));
        double bound = mgl_upper_bound(erasure_source(p)).value();
        for (const auto& v : j["result"]["restart_best"])
            g_audit.push_back({v.get<double>(), bound});

        check(best <= target + 1e-9,
              "p=" + fmt(p, "%.2f") + ": value exceeds the closed form");
        double gap = target - best;
        check(gap <= 0.03, "p=" + fmt(p, "%.2f") + ": gap to log(2/(1+p)) is " + fmt(gap) +
                               " nats (> 0.03); the |U|=16 supremum log(2*17/(16(1+p)+2)) lies " +
                               fmt(target - std::log(bes_construction_value(16, p))) +
                               " nats below the closed form, and the optimizer reached it to " +
                               fmt(std::log(bes_construction_value(16, p)) - best, "%.2e"));
        std::remove(src_path.c_str());
        std::remove(args.common.out.c_str());
    }
    return out;
}

// ---------------------------------------------------------------------------
// 2. Finite-size construction value: monotone, 10/n of the limit, exact at
//    n=4, p=1/2.

Outcome criterion2() {
    Outcome out;
    Check check{&out};

    check(std::abs(bes_construction_value(4, 0.5) - 1.25) < 1e-12,
          "first-principles value at n=4, p=1/2 is " + fmt(bes_construction_value(4, 0.5), "%.15f"));

    for (double p : {0.0, 0.25, 0.5, 0.75, 0.9}) {
        double prev = 0.0;
        for (std::uint64_t n = 2; n <= 10000; n += (n < 200 ? 2 : 98)) {
            if (n % 2 == 1) ++n;
            double v = bes_construction_value(n, p);
            check(v > prev, "not monotone at n=" + std::to_string(n) + ", p=" + fmt(p, "%.2f"));
            check(std::abs(v - 2.0 / (1.0 + p)) < 10.0 / static_cast<double>(n),
                  "limit gap too wide at n=" + std::to_string(n) + ", p=" + fmt(p, "%.2f"));
            prev = v;
        }
        double v = bes_construction_value(10000, p);
        check(std::abs(v - 2.0 / (1.0 + p)) < 10.0 / 10000.0, "limit gap at n=10000");
    }
    return out;
}

// ---------------------------------------------------------------------------
// 3. Pointwise leakage equals the order-infinity divergence: shattering log
//    ratio at m=1e5 within 0.02 nats for five cost functions, and the
//    oblivious pointwise value is exactly rho-independent.

Outcome criterion3() {
    Outcome out;
    Check check{&out};

    const CostH costs[] = {CostH::power(0.5), CostH::power(1.0), CostH::power(2.0),
                           CostH::log(), CostH::geometric(2.0)};
    const char* names[] = {"power:0.5", "power:1", "power:2", "log", "geometric:2"};
    double worst[5] = {0, 0, 0, 0, 0};
    double dinf_at_worst[5] = {0, 0, 0, 0, 0};

    std::mt19937_64 rng(301);
    int used = 0;
    while (used < 50) {
        auto j = random_joint(rng, 2 + used % 3, 2 + (used / 3) % 3);
        bool finite = true;
        for (std::size_t y = 0; y < j.ny() && finite; ++y)
            finite = !pointwise_guesswork_leakage(j, j.y_labels[y]).is_infinite();
        if (!finite) continue; // criterion is scoped to finite-divergence sources
        ++used;

        for (std::size_t y = 0; y < j.ny(); ++y) {
            double dinf = pointwise_guesswork_leakage(j, j.y_labels[y]).value();
            for (int c = 0; c < 5; ++c) {
                auto r = shattering_pointwise_ratio(j, j.y_labels[y], costs[c], 100000);
                double log_ratio = std::log(r.ratio);
                if (std::abs(log_ratio - dinf) > worst[c]) {
                    worst[c] = std::abs(log_ratio - dinf);
                    dinf_at_worst[c] = dinf;
                }
                g_audit.push_back({log_ratio, dinf});
            }

            auto v1 = pointwise_oblivious_mgl(j, j.y_labels[y], 0.5);
            auto v2 = pointwise_oblivious_mgl(j, j.y_labels[y], 1.0);
            auto v3 = pointwise_oblivious_mgl(j, j.y_labels[y], 2.0);
            check(v1 == v2 && v2 == v3, "oblivious pointwise value depends on rho");
        }
    }

    bool any_slow = false;
    for (int c = 0; c < 5; ++c) {
        any_slow = any_slow || worst[c] > 0.02;
        check(worst[c] <= 0.02, std::string(names[c]) + ": worst gap " + fmt(worst[c]) +
                                    " nats at D_inf = " + fmt(dinf_at_worst[c]));
    }
    if (any_slow)
        out.detail +=
            "; the finite-m bias of the log-ratio scales like 1/(tau(m) * posterior mass), and "
            "tau(1e5) is only ~211 for power:0.5 and ~10.5 for log, so sources with large "
            "divergence cannot settle within 0.02 nats at this block size";
    return out;
}

// ---------------------------------------------------------------------------
// 4. Audited objective values from criteria 1 and 3 never exceed their
//    closed bounds.

Outcome criterion4() {
    Outcome out;
    Check check{&out};
    // re-run the producers when invoked standalone
    if (g_audit.empty()) {
        criterion1();
        Outcome tmp = criterion3();
        (void)tmp;
    }
    std::size_t over = 0;
    double worst = 0.0;
    for (const auto& [value, bound] : g_audit) {
        if (value > bound + 1e-9) {
            ++over;
            worst = std::max(worst, value - bound);
        }
    }
    check(over == 0, std::to_string(over) + " of " + std::to_string(g_audit.size()) +
                         " audited values exceed their bound, worst by " + fmt(worst, "%.2e"));
    out.detail = std::to_string(g_audit.size()) + " values audited; " + out.detail;
    return out;
}

// ---------------------------------------------------------------------------
// 5. Split infimum against the paired-rank lower bound, plus the pipeline
//    reproduction.

Outcome criterion5() {
    Outcome out;
    Check check{&out};

    auto support = [](const MassVector& v) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v.masses[i] > 0.0) s.push_back(i);
        return s;
    };

    std::mt19937_64 rng(501);
    int violations = 0, pipeline_fails = 0;
    for (int t = 0; t < 100; ++t) {
        std::size_t n = (t % 2 == 0) ? 2 : 4;
        auto pu = random_distribution(rng, n);

        double bound = claim1_lower_bound(pu);
        double brute = brute_force_split_infimum(pu, 40);
        if (brute < bound - 1e-9) ++violations;

        double last = 1e300;
        bool monotone = true;
        auto observe = [&](const SplitPair& sp) {
            double v = 0.5 * (gamma_bar(sp.a) + gamma_bar(sp.b));
            if (v > last + 1e-9) monotone = false;
            last = v;
        };
        auto start = random_feasible_split(pu, detail::derive_seed(501, t));
        last = 0.5 * (gamma_bar(start.a) + gamma_bar(start.b));
        auto stage = disjointify(start, observe);
        stage = balance_supports(stage);
        observe(stage);
        stage = alternate_swap(stage, observe);

        auto target = optimal_split(pu);
        bool match =
            (support(stage.a) == support(target.a) && support(stage.b) == support(target.b)) ||
            (support(stage.a) == support(target.b) && support(stage.b) == support(target.a));
        if (!monotone || !match) ++pipeline_fails;
    }
    check(violations == 0, std::to_string(violations) + " brute-force values below the bound");
    check(pipeline_fails == 0, std::to_string(pipeline_fails) + " pipeline reproductions failed");
    return out;
}

// ---------------------------------------------------------------------------
// 6. Memoryless guessing: the geometric-series oracle and the simulator
//    against the closed-form cost.

Outcome criterion6() {
    Outcome out;
    Check check{&out};

    // pre-build oracle: per-symbol expected cost is q^-rho
    for (double q : {0.1, 0.5, 0.9}) {
        for (double rho : {0.5, 1.0, 2.0}) {
            double sum = 0.0, k = 1.0;
            for (;;) {
                double term =
                    generalized_binomial(k + rho - 1.0, rho) * std::pow(1.0 - q, k - 1.0) * q;
                sum += term;
                double r = (1.0 - q) * (1.0 + rho / k);
                if (r < 1.0 && term * r / (1.0 - r) < 1e-8) break;
                k += 1.0;
            }
            check(std::abs(sum - std::pow(q, -rho)) < 1e-6,
                  "series oracle off at q=" + fmt(q, "%.1f") + ", rho=" + fmt(rho, "%.1f"));
        }
    }

    std::mt19937_64 rng(601);
    int over_3_sigma = 0;
    double worst_z = 0.0;
    for (int t = 0; t < 20; ++t) {
        auto p = random_distribution(rng, 2 + t % 4); // supports up to 5
        for (double rho : {0.5, 1.0, 2.0}) {
            auto phat = oblivious_optimal_phat(p, rho);
            auto sim = simulate_memoryless_guessing(p, phat, rho, 100000,
                                                    detail::derive_seed(601, t));
            double exact = oblivious_cost(p, rho);
            double z = sim.stderr_ > 0.0 ? (sim.mean - exact) / sim.stderr_ : 0.0;
            worst_z = std::max(worst_z, std::abs(z));
            if (std::abs(z) > 3.0) ++over_3_sigma;
            check(sim.truncated == 0, "truncated trials present");
        }
    }
    check(over_3_sigma == 0, std::to_string(over_3_sigma) + " runs beyond 3 standard errors");
    out.detail = "worst |z| = " + fmt(worst_z, "%.2f") + (out.detail.empty() ? "" : "; ") +
                 out.detail;
    return out;
}

// ---------------------------------------------------------------------------
// 7. Oblivious leakage: capacity route against the grid oracle, and the
//    channel-space route bracketing at least one candidate order.

Outcome criterion7() {
    Outcome out;
    Check check{&out};

    std::mt19937_64 rng(701);
    double worst_cap = 0.0;
    int bracket_fails = 0, order_disagreements = 0;
    for (int t = 0; t < 20; ++t) {
        auto j = random_joint(rng, 2 + t % 2, 2 + t % 3);
        auto ch = channel_from_joint(j).channel;
        for (double rho : {0.5, 1.0, 2.0}) {
            OptimizerConfig cap_cfg;
            cap_cfg.restarts = 6;
            cap_cfg.max_iters = 8000;
            cap_cfg.tol = 1e-13;
            cap_cfg.stall_iters = 40;
            cap_cfg.seed = 7;

            double orders[2] = {rho / (1.0 + rho), 1.0 / (1.0 + rho)};
            double caps[2];
            for (int k = 0; k < 2; ++k) {
                caps[k] = arimoto_capacity(ch, orders[k], cap_cfg).best_value;
                double grid = grid_capacity_oracle(ch, orders[k],
                                                   ch.num_inputs() == 2 ? 20000 : 300);
                worst_cap = std::max(worst_cap, std::abs(caps[k] - grid));
                check(std::abs(caps[k] - grid) <= 1e-4,
                      "capacity vs grid off by " + fmt(std::abs(caps[k] - grid), "%.2e"));
            }

            OptimizerConfig cfg;
            cfg.u_size = 12;
            cfg.restarts = 10;
            cfg.seed = 7;
            double v = maximize_u_channel(j, ObliviousRatio{rho}, cfg).best_value;
            bool ok = false;
            for (int k = 0; k < 2; ++k)
                ok = ok || (v >= rho * caps[k] - 0.05 && v <= rho * caps[k] + 1e-9);
            if (!ok) ++bracket_fails;
            // disagreement between the two orders is logged, not failed
            if (std::abs(caps[0] - caps[1]) > 1e-6) ++order_disagreements;
        }
    }
    check(bracket_fails == 0,
          std::to_string(bracket_fails) + " channel-space values outside both brackets");
    out.detail = "worst |capacity - grid| = " + fmt(worst_cap, "%.2e") + "; " +
                 std::to_string(order_disagreements) +
                 "/60 cases with order-subscript disagreement (logged)" +
                 (out.detail.empty() ? "" : "; " + out.detail);
    return out;
}

// ---------------------------------------------------------------------------
// 8. Prior-maximized pointwise leakage equals the local differential
//    privacy level on symmetric binary channels.

Outcome criterion8() {
    Outcome out;
    Check check{&out};
    for (double q : {0.1, 0.2, 0.3}) {
        auto bsc = make_channel({"0", "1"}, {"0", "1"}, {{1.0 - q, q}, {q, 1.0 - q}});
        auto grid = max_prior_pointwise_leakage(bsc, 4000);
        double target = local_dp_leakage(bsc).value();
        check(!grid.is_infinite() && std::abs(grid.value() - target) <= 1e-3,
              "q=" + fmt(q, "%.1f") + ": grid " + fmt(grid.value(), "%.6f") + " vs " +
                  fmt(target, "%.6f"));
        check(std::abs(target - std::log((1.0 - q) / q)) < 1e-12, "closed form mismatch");
    }
    return out;
}

// ---------------------------------------------------------------------------
// 9. Measure unit checks: erasure maximal leakage and the divergence
//    invariant suite on 200 random pairs.

Outcome criterion9() {
    Outcome out;
    Check check{&out};

    for (double p : {0.0, 0.2, 0.5, 0.8})
        check(std::abs(maximal_leakage(erasure_source(p)).value() - std::log(2.0 - p)) < 1e-12,
              "maximal leakage of the erasure source at p=" + fmt(p, "%.1f"));

    std::mt19937_64 rng(901);
    const double grid[] = {0.1, 0.5, 0.999, 1.0, 1.001, 2.0, 5.0, 10.0};
    for (int t = 0; t < 200; ++t) {
        auto p = random_distribution(rng, 2 + t % 4);
        auto q = random_distribution(rng, p.size());

        double prev = -1e300;
        for (double a : grid) {
            double d = renyi_divergence(p, q, Order::of(a)).value();
            check(d >= -1e-10, "negative divergence");
            check(d >= prev - 1e-10, "divergence not monotone in the order");
            prev = d;
        }
        check(renyi_divergence(p, q, Order::infinity()).value() >= prev - 1e-10,
              "order-infinity divergence below the finite-order values");
        check(renyi_divergence(p, p, Order::of(0.7)).value() <= 1e-10, "D(P||P) not zero");

        // limit consistency around order one; the slope there is half the
        // variance of log P/Q, so smooth the pair toward uniform first
        auto ps = p, qs = q;
        for (std::size_t i = 0; i < p.size(); ++i) {
            ps.probs[i] = 0.5 * ps.probs[i] + 0.5 / static_cast<double>(ps.size());
            qs.probs[i] = 0.5 * qs.probs[i] + 0.5 / static_cast<double>(qs.size());
        }
        double d1 = renyi_divergence(ps, qs, Order::one()).value();
        check(std::abs(renyi_divergence(ps, qs, Order::of(0.999)).value() - d1) < 1e-3,
              "order 0.999 inconsistent with the order-one extension");
        check(std::abs(renyi_divergence(ps, qs, Order::of(1.001)).value() - d1) < 1e-3,
              "order 1.001 inconsistent with the order-one extension");

        // order-infinity approach: the gap at order a is |log P(x*)|/(a-1),
        // so a heavy ratio maximizer keeps 1e-3 meaningful at a = 1000
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        double p0 = 0.45 + 0.15 * unif(rng);
        double q0 = 0.15 + 0.10 * unif(rng);
        auto ph = make_distribution({"a", "b"}, {p0, 1.0 - p0});
        auto qh = make_distribution({"a", "b"}, {q0, 1.0 - q0});
        double dinf = renyi_divergence(ph, qh, Order::infinity()).value();
        check(std::abs(renyi_divergence(ph, qh, Order::of(1000.0)).value() - dinf) < 1e-3,
              "order 1000 inconsistent with the order-infinity extension");
    }
    return out;
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

const Criterion kCriteria[] = {
    {1, "erasure-source closed form via channel optimization", criterion1},
    {2, "finite-size construction approaches the closed form", criterion2},
    {3, "pointwise leakage equals the order-infinity divergence", criterion3},
    {4, "objective values never exceed their closed bounds", criterion4},
    {5, "split lower bound and pipeline reproduction", criterion5},
    {6, "memoryless guessing simulation against the closed form", criterion6},
    {7, "oblivious leakage: capacity routes and channel-space bracket", criterion7},
    {8, "prior-maximized pointwise leakage equals the privacy level", criterion8},
    {9, "measure unit checks and divergence invariants", criterion9},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }

    int failures = 0;
    for (const auto& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        auto start = std::chrono::steady_clock::now();
        Outcome out = c.run();
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %d (%s)%s%s (%.1f s)\n", out.pass ? "PASS" : "FAIL", c.id,
                    c.name, out.detail.empty() ? "" : ": ", out.detail.c_str(), secs);
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    return failures;
}
