#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gleak/cli.hpp"

namespace {

using namespace gleak;
using namespace gleak::cli;

void add_common(CLI::App* cmd, CommonOptions& c, bool with_input = true) {
    if (with_input) cmd->add_option("--input", c.input, "joint source file (JSON or CSV)");
    cmd->add_option("--format", [&c](const std::vector<std::string>& v) {
        if (v[0] == "json") c.format = SourceFormat::Json;
        else if (v[0] == "csv") c.format = SourceFormat::Csv;
        else return false;
        return true;
    }, "input format: json|csv (default: sniff)");
    cmd->add_option("--log-base", [&c](const std::vector<std::string>& v) {
        if (v[0] == "e") c.base = LogBase::E;
        else if (v[0] == "2") c.base = LogBase::Two;
        else return false;
        return true;
    }, "log base for reported values: e|2 (default e)");
    cmd->add_option("--seed", c.seed, "root seed (default 0)");
    cmd->add_option("--rho", c.rho, "guessing moment order, repeatable (default 1)");
    cmd->add_option("--out", c.out, "output path (default stdout)");
    cmd->add_option("--u-size", c.u_size, "randomizer alphabet budget (default 8)");
    cmd->add_option("--restarts", c.restarts, "optimizer restarts (default 32)");
    cmd->add_option("--max-iters", c.max_iters, "optimizer iteration cap (default 2000)");
    cmd->add_option("--tol", c.tol, "optimizer convergence tolerance (default 1e-9)");
    cmd->add_option("--threads", c.threads, "parallel restarts (default 1; results unchanged)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"guesswork-leakage toolkit"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);

    ReportArgs report_args;
    auto* report = app.add_subcommand("report", "all leakage measures of a source");
    add_common(report, report_args.common);

    BesSweepArgs sweep_args;
    auto* sweep = app.add_subcommand("bes-sweep",
                                     "construction vs closed form vs optimizer on erasure sources");
    add_common(sweep, sweep_args.common, false);
    sweep->add_option("--p", sweep_args.p_grid, "erasure probability, repeatable")->required();
    sweep->add_option("--n", sweep_args.n_grid, "construction size, repeatable (even)")->required();

    ShatterArgs shatter_args;
    auto* shatter = app.add_subcommand("shatter-converge",
                                       "pointwise shattering ratio against its divergence limit");
    add_common(shatter, shatter_args.common);
    shatter->add_option("--y", shatter_args.y, "observation symbol")->required();
    shatter->add_option("--cost", shatter_args.h, "cost function (default power:1)");
    shatter->add_option("--m", shatter_args.m_grid, "block sizes, repeatable");

    SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate-oblivious",
                                   "Monte Carlo memoryless guessing against the exact cost");
    add_common(sim, sim_args.common);
    sim->add_option("--dist", sim_args.dist, "inline probabilities, e.g. 0.3,0.7");
    sim->add_option("--phat", sim_args.phat, "guess distribution override");
    sim->add_option("--trials", sim_args.trials, "trials (default 1e5)");

    Claim1Args claim_args;
    auto* claim = app.add_subcommand("claim1-check",
                                     "split lower bound against brute force and the swap pipeline");
    add_common(claim, claim_args.common, false);
    claim->add_option("--n", claim_args.n, "alphabet size, 2 or 4 (default 4)");
    claim->add_option("--samples", claim_args.samples, "random distributions (default 100)");
    claim->add_option("--resolution", claim_args.resolution, "grid resolution (default 40)");

    OptimizeArgs opt_args;
    auto* opt = app.add_subcommand("optimize-channel", "channel-space leakage supremum estimate");
    add_common(opt, opt_args.common);
    opt->add_option("--objective", opt_args.objective, "guesswork|oblivious|pointwise");
    opt->add_option("--cost", opt_args.h, "cost function (default power:1)");
    opt->add_option("--y", opt_args.y, "observation symbol (pointwise)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*report) return run_report(report_args);
        if (*sweep) return run_bes_sweep(sweep_args);
        if (*shatter) return run_shatter_converge(shatter_args);
        if (*sim) return run_simulate_oblivious(sim_args);
        if (*claim) return run_claim1_check(claim_args);
        if (*opt) return run_optimize_channel(opt_args);
    } catch (const parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const validation_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const label_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const zero_mass_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
