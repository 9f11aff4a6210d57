#include "gleak/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "gleak/constructions.hpp"
#include "gleak/detail/rng.hpp"
#include "gleak/renyi.hpp"

namespace gleak::cli {

namespace {

using nlohmann::ordered_json;

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

double round12(double v) { return std::stod(fmt12(v)); }

ordered_json value_or_inf(const ExtendedReal& v) {
    if (v.is_infinite()) return "inf";
    return round12(v.value());
}

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

ordered_json manifest_to_json(const RunManifest& m) {
    ordered_json j;
    j["tool"] = "gleak";
    j["version"] = m.version;
    j["subcommand"] = m.subcommand;
    ordered_json flags = ordered_json::object();
    for (const auto& [k, v] : m.flags) flags[k] = v;
    j["flags"] = flags;
    j["input_checksum"] = m.input_checksum;
    j["seed"] = m.seed;
    j["duration_ms"] = round12(m.duration_ms);
    return j;
}

int write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        if (content.empty() || content.back() != '\n') std::cout << '\n';
        return kExitOk;
    }
    std::ofstream f(out_path);
    if (!f) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return kExitInputError;
    }
    f << content;
    if (content.empty() || content.back() != '\n') f << '\n';
    return kExitOk;
}

// Manifest flags: every option that shapes the run, sorted by key.
std::vector<std::pair<std::string, std::string>> common_flags(const CommonOptions& c) {
    std::vector<std::pair<std::string, std::string>> f;
    f.emplace_back("input", c.input);
    f.emplace_back("log-base", c.base == LogBase::Two ? "2" : "e");
    f.emplace_back("max-iters", std::to_string(c.max_iters));
    f.emplace_back("out", c.out);
    f.emplace_back("restarts", std::to_string(c.restarts));
    std::string rhos;
    for (double r : c.rho_or_default()) rhos += (rhos.empty() ? "" : ",") + fmt12(r);
    f.emplace_back("rho", rhos);
    f.emplace_back("seed", std::to_string(c.seed));
    f.emplace_back("threads", std::to_string(c.threads));
    f.emplace_back("tol", fmt12(c.tol));
    f.emplace_back("u-size", std::to_string(c.u_size));
    return f;
}

RunManifest start_manifest(const std::string& subcommand, const CommonOptions& c,
                           std::vector<std::pair<std::string, std::string>> extra = {}) {
    RunManifest m;
    m.subcommand = subcommand;
    m.version = tool_version();
    m.seed = c.seed;
    m.flags = common_flags(c);
    for (auto& kv : extra) m.flags.push_back(std::move(kv));
    std::sort(m.flags.begin(), m.flags.end());
    if (!c.input.empty()) m.input_checksum = file_checksum(c.input);
    return m;
}

int report_input_error(const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
}

} // namespace

OptimizerConfig CommonOptions::optimizer_config() const {
    OptimizerConfig cfg;
    cfg.restarts = restarts;
    cfg.max_iters = max_iters;
    cfg.tol = tol;
    cfg.seed = seed;
    cfg.u_size = u_size;
    cfg.threads = threads;
    return cfg;
}

std::string tool_version() { return "0.1.0"; }

std::string manifest_json(const RunManifest& m) { return manifest_to_json(m).dump(); }

CostH parse_cost_h(const std::string& spec) {
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    try {
        if (kind == "power") return CostH::power(std::stod(arg));
        if (kind == "log") return CostH::log();
        if (kind == "exp_over_linear") return CostH::exp_over_linear();
        if (kind == "geometric") return CostH::geometric(std::stod(arg));
        if (kind == "table") {
            std::vector<double> vals;
            std::istringstream ss(arg);
            std::string tok;
            while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
            return CostH::table(std::move(vals));
        }
    } catch (const validation_error&) {
        throw;
    } catch (const std::exception&) {
        throw parse_error("bad cost argument in '" + spec + "'");
    }
    throw parse_error("unknown cost function '" + spec + "'");
}

int run_report(const ReportArgs& args) {
    Timer timer;
    JointSource j;
    try {
        j = load_joint(args.common.input, args.common.format);
    } catch (const std::exception& e) {
        return report_input_error(e);
    }
    RunManifest manifest = start_manifest("report", args.common);

    LeakageReport rep = build_report(j, args.common.rho_or_default(), args.common.base,
                                     args.common.optimizer_config());
    rep.source = args.common.input;

    bool converged = true;
    for (const auto& e : rep.entries)
        for (const auto& [k, v] : e.parameters)
            if (k == "converged" && v == "false") converged = false;

    ordered_json out;
    manifest.duration_ms = timer.ms();
    out["manifest"] = manifest_to_json(manifest);
    out["report"] = ordered_json::parse(report_to_json(rep));
    int rc = write_output(args.common.out, out.dump(2));
    if (rc != kExitOk) return rc;
    return converged ? kExitOk : kExitNonConvergence;
}

int run_bes_sweep(const BesSweepArgs& args) {
    Timer timer;
    if (args.p_grid.empty() || args.n_grid.empty()) {
        std::cerr << "input error: bes-sweep needs at least one --p and one --n\n";
        return kExitInputError;
    }
    for (double p : args.p_grid)
        if (!(p >= 0.0 && p < 1.0)) {
            std::cerr << "input error: p must lie in [0,1)\n";
            return kExitInputError;
        }
    for (std::uint64_t n : args.n_grid)
        if (n < 2 || n % 2 != 0) {
            std::cerr << "input error: n must be even and >= 2\n";
            return kExitInputError;
        }

    std::vector<std::pair<std::string, std::string>> extra;
    std::string ps, ns;
    for (double p : args.p_grid) ps += (ps.empty() ? "" : ",") + fmt12(p);
    for (auto n : args.n_grid) ns += (ns.empty() ? "" : ",") + std::to_string(n);
    extra.emplace_back("p", ps);
    extra.emplace_back("n", ns);
    RunManifest manifest = start_manifest("bes-sweep", args.common, std::move(extra));

    bool converged = true;
    std::ostringstream csv;
    csv << "p,n,construction_value,closed_form,optimizer_value,gap\n";
    for (double p : args.p_grid) {
        JointSource src = erasure_source(p);
        double closed = 2.0 / (1.0 + p);
        for (std::uint64_t n : args.n_grid) {
            double cv = bes_construction_value(n, p);
            OptimizerConfig cfg = args.common.optimizer_config();
            cfg.u_size = n;
            OptResult res = maximize_u_channel(src, GuessworkRatio{CostH::power(1.0)}, cfg);
            converged = converged && res.converged;
            double ov = std::exp(res.best_value);
            csv << fmt12(p) << "," << n << "," << fmt12(cv) << "," << fmt12(closed) << ","
                << fmt12(ov) << "," << fmt12(closed - ov) << "\n";
        }
    }
    manifest.duration_ms = timer.ms();
    std::string content = "# manifest: " + manifest_json(manifest) + "\n" + csv.str();
    int rc = write_output(args.common.out, content);
    if (rc != kExitOk) return rc;
    return converged ? kExitOk : kExitNonConvergence;
}

int run_shatter_converge(const ShatterArgs& args) {
    Timer timer;
    JointSource j;
    CostH h = CostH::power(1.0);
    try {
        j = load_joint(args.common.input, args.common.format);
        h = parse_cost_h(args.h);
        if (args.y.empty()) throw parse_error("--y is required");
        if (!j.y_index_of(args.y)) throw parse_error("unknown y label '" + args.y + "'");
    } catch (const std::exception& e) {
        return report_input_error(e);
    }

    std::vector<std::uint64_t> ms = args.m_grid;
    if (ms.empty()) ms = {100, 1000, 10000, 100000};

    RunManifest manifest = start_manifest(
        "shatter-converge", args.common,
        {{"y", args.y}, {"cost", h.name()}, {"m", [&] {
             std::string s;
             for (auto m : ms) s += (s.empty() ? "" : ",") + std::to_string(m);
             return s;
         }()}});

    ExtendedReal target(0.0);
    try {
        target = in_base(pointwise_guesswork_leakage(j, args.y), args.common.base);
    } catch (const std::exception& e) {
        return report_input_error(e);
    }

    std::ostringstream csv;
    csv << "m,log_ratio,d_inf,gap,inf_trend\n";
    for (std::uint64_t m : ms) {
        ShatterRatio r = shattering_pointwise_ratio(j, args.y, h, m);
        double log_ratio = in_base(std::log(r.ratio), args.common.base);
        csv << m << "," << fmt12(log_ratio) << ",";
        if (target.is_infinite())
            csv << "inf,inf," << (r.diverges ? 1 : 0) << "\n";
        else
            csv << fmt12(target.value()) << "," << fmt12(target.value() - log_ratio) << ","
                << (r.diverges ? 1 : 0) << "\n";
    }
    manifest.duration_ms = timer.ms();
    std::string content = "# manifest: " + manifest_json(manifest) + "\n" + csv.str();
    return write_output(args.common.out, content);
}

namespace {

Distribution parse_inline_probs(const std::string& spec) {
    std::vector<double> probs;
    std::istringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) probs.push_back(std::stod(tok));
    std::vector<std::string> labels(probs.size());
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = "x" + std::to_string(i);
    return make_distribution(std::move(labels), std::move(probs));
}

} // namespace

int run_simulate_oblivious(const SimulateArgs& args) {
    Timer timer;
    Distribution p;
    try {
        if (!args.dist.empty())
            p = parse_inline_probs(args.dist);
        else if (!args.common.input.empty())
            p = load_distribution(args.common.input, args.common.format);
        else
            throw parse_error("simulate-oblivious needs --input or --dist");
    } catch (const std::exception& e) {
        return report_input_error(e);
    }

    RunManifest manifest = start_manifest(
        "simulate-oblivious", args.common,
        {{"dist", args.dist}, {"phat", args.phat}, {"trials", std::to_string(args.trials)}});

    ordered_json results = ordered_json::array();
    for (double rho : args.common.rho_or_default()) {
        Distribution phat;
        try {
            phat = args.phat.empty() ? oblivious_optimal_phat(p, rho)
                                     : Distribution{p.labels, parse_inline_probs(args.phat).probs};
            if (phat.probs.size() != p.probs.size())
                throw validation_error("phat arity mismatch");
        } catch (const std::exception& e) {
            return report_input_error(e);
        }

        SimResult sim;
        ExtendedReal exact(0.0);
        try {
            sim = simulate_memoryless_guessing(p, phat, rho, args.trials, args.common.seed);
            exact = oblivious_expected_v(p, phat, rho);
        } catch (const std::exception& e) {
            return report_input_error(e);
        }
        double z = sim.stderr_ > 0.0 && !exact.is_infinite()
                       ? (sim.mean - exact.value()) / sim.stderr_
                       : 0.0;
        ordered_json r;
        r["rho"] = round12(rho);
        r["mean"] = round12(sim.mean);
        r["stderr"] = round12(sim.stderr_);
        r["exact"] = value_or_inf(exact);
        r["z"] = round12(z);
        r["trials"] = sim.trials;
        r["truncated"] = sim.truncated;
        r["oblivious_cost"] = round12(oblivious_cost(p, rho));
        results.push_back(r);
    }

    ordered_json out;
    manifest.duration_ms = timer.ms();
    out["manifest"] = manifest_to_json(manifest);
    out["results"] = results;
    return write_output(args.common.out, out.dump(2));
}

int run_claim1_check(const Claim1Args& args) {
    Timer timer;
    if (args.n != 2 && args.n != 4) {
        std::cerr << "input error: claim1-check supports n in {2,4}\n";
        return kExitInputError;
    }
    if (args.samples < 1 || args.resolution < 1 || args.resolution > 50) {
        std::cerr << "input error: bad samples/resolution\n";
        return kExitInputError;
    }

    RunManifest manifest = start_manifest("claim1-check", args.common,
                                          {{"n", std::to_string(args.n)},
                                           {"samples", std::to_string(args.samples)},
                                           {"resolution", std::to_string(args.resolution)}});

    std::mt19937_64 rng(detail::mix_seed(args.common.seed));
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    ordered_json samples = ordered_json::array();
    bool all_ok = true;
    for (int s = 0; s < args.samples; ++s) {
        std::vector<double> probs(args.n);
        double total = 0.0;
        for (double& v : probs) {
            v = -std::log(1.0 - unif(rng));
            total += v;
        }
        std::vector<std::string> labels(args.n);
        for (std::size_t i = 0; i < args.n; ++i) labels[i] = "u" + std::to_string(i + 1);
        for (double& v : probs) v /= total;
        Distribution pu = make_distribution(labels, probs);

        double bound = claim1_lower_bound(pu);
        double brute = brute_force_split_infimum(pu, args.resolution);
        bool violation = brute < bound - 1e-9;

        // pipeline reproduction: random feasible pair -> disjoint ->
        // balanced -> alternating, objective monotone at every step
        bool monotone = true;
        double last = 0.0;
        auto observe = [&](const SplitPair& sp) {
            double v = 0.5 * (gamma_bar(sp.a) + gamma_bar(sp.b));
            if (v > last + 1e-9) monotone = false;
            last = v;
        };
        SplitPair start = random_feasible_split(pu, detail::derive_seed(args.common.seed, s));
        last = 0.5 * (gamma_bar(start.a) + gamma_bar(start.b));
        SplitPair stage = disjointify(start, observe);
        stage = balance_supports(stage);
        double balanced_value = 0.5 * (gamma_bar(stage.a) + gamma_bar(stage.b));
        if (balanced_value > last + 1e-9) monotone = false;
        last = balanced_value;
        stage = alternate_swap(stage, observe);

        SplitPair target = optimal_split(pu);
        auto support = [](const MassVector& v) {
            std::vector<std::size_t> s_;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (v.masses[i] > 0.0) s_.push_back(i);
            return s_;
        };
        bool supports_match =
            (support(stage.a) == support(target.a) && support(stage.b) == support(target.b)) ||
            (support(stage.a) == support(target.b) && support(stage.b) == support(target.a));

        bool ok = !violation && monotone && supports_match;
        all_ok = all_ok && ok;
        ordered_json row;
        row["claim1_lower_bound"] = round12(bound);
        row["brute_force"] = round12(brute);
        row["violation"] = violation;
        row["pipeline_monotone"] = monotone;
        row["pipeline_supports_match"] = supports_match;
        samples.push_back(row);
    }

    ordered_json out;
    manifest.duration_ms = timer.ms();
    out["manifest"] = manifest_to_json(manifest);
    out["samples"] = samples;
    out["pass"] = all_ok;
    return write_output(args.common.out, out.dump(2));
}

int run_optimize_channel(const OptimizeArgs& args) {
    Timer timer;
    JointSource j;
    ChannelObjective objective = GuessworkRatio{CostH::power(1.0)};
    double rho = args.common.rho_or_default().front();
    try {
        j = load_joint(args.common.input, args.common.format);
        if (args.objective == "guesswork") {
            objective = GuessworkRatio{parse_cost_h(args.h)};
        } else if (args.objective == "oblivious") {
            objective = ObliviousRatio{rho};
        } else if (args.objective == "pointwise") {
            if (args.y.empty()) throw parse_error("pointwise objective needs --y");
            auto yi = j.y_index_of(args.y);
            if (!yi) throw parse_error("unknown y label '" + args.y + "'");
            if (j.py[*yi] <= 0.0) throw parse_error("P_Y(" + args.y + ") = 0");
            objective = PointwiseRatio{args.y, parse_cost_h(args.h)};
        } else {
            throw parse_error("unknown objective '" + args.objective + "'");
        }
    } catch (const std::exception& e) {
        return report_input_error(e);
    }

    RunManifest manifest = start_manifest(
        "optimize-channel", args.common,
        {{"objective", args.objective}, {"cost", args.h}, {"y", args.y}});

    OptResult res = maximize_u_channel(j, objective, args.common.optimizer_config());

    ordered_json out;
    ordered_json jres;
    jres["objective"] = args.objective;
    jres["estimate_kind"] = "lower_estimate_of_supremum_at_u_size";
    jres["u_size"] = args.common.u_size;
    jres["best_value"] = round12(in_base(res.best_value, args.common.base));
    jres["iterations"] = res.iterations;
    jres["converged"] = res.converged;
    ordered_json trace = ordered_json::array();
    for (double v : res.restart_best) trace.push_back(round12(in_base(v, args.common.base)));
    jres["restart_best"] = trace;

    ordered_json bounds = ordered_json::object();
    if (args.objective == "guesswork") {
        ExtendedReal b = in_base(mgl_upper_bound(j), args.common.base);
        bounds["mgl_upper_bound"] = value_or_inf(b);
        if (!b.is_infinite())
            bounds["gap"] = round12(b.value() - in_base(res.best_value, args.common.base));
    } else if (args.objective == "pointwise") {
        ExtendedReal b = in_base(pointwise_guesswork_leakage(j, args.y), args.common.base);
        bounds["pointwise_d_inf"] = value_or_inf(b);
        if (!b.is_infinite())
            bounds["gap"] = round12(b.value() - in_base(res.best_value, args.common.base));
    } else {
        Channel ch = channel_from_joint(j).channel;
        OptimizerConfig cfg = args.common.optimizer_config();
        OptResult cap_a = arimoto_capacity(ch, rho / (1.0 + rho), cfg);
        OptResult cap_b = arimoto_capacity(ch, 1.0 / (1.0 + rho), cfg);
        double va = in_base(rho * cap_a.best_value, args.common.base);
        double vb = in_base(rho * cap_b.best_value, args.common.base);
        bounds["rho_times_capacity_order_rho_over_1p"] = round12(va);
        bounds["rho_times_capacity_order_1_over_1p"] = round12(vb);
        bounds["gap_order_rho_over_1p"] = round12(va - in_base(res.best_value, args.common.base));
        bounds["gap_order_1_over_1p"] = round12(vb - in_base(res.best_value, args.common.base));
    }
    jres["bounds"] = bounds;

    // the argument channel, rendered at reporting precision
    const Channel& best = std::get<Channel>(res.argument);
    ordered_json rows = ordered_json::array();
    for (const auto& r : best.rows) {
        ordered_json jr = ordered_json::array();
        for (double v : r) jr.push_back(round12(v));
        rows.push_back(jr);
    }
    jres["channel"] = rows;

    manifest.duration_ms = timer.ms();
    out["manifest"] = manifest_to_json(manifest);
    out["result"] = jres;
    int rc = write_output(args.common.out, out.dump(2));
    if (rc != kExitOk) return rc;
    return res.converged ? kExitOk : kExitNonConvergence;
}

} // namespace gleak::cli
