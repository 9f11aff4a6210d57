#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gleak/io.hpp"
#include "gleak/leakage.hpp"

namespace gleak::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNonConvergence = 3;

struct CommonOptions {
    std::string input;
    SourceFormat format = SourceFormat::Auto;
    LogBase base = LogBase::E;
    std::uint64_t seed = 0;
    std::vector<double> rho; // repeatable; {1} when empty
    std::string out;         // empty = stdout

    std::size_t u_size = 8;
    int restarts = 32;
    int max_iters = 2000;
    double tol = 1e-9;
    int threads = 1;

    OptimizerConfig optimizer_config() const;
    std::vector<double> rho_or_default() const { return rho.empty() ? std::vector<double>{1.0} : rho; }
};

// Every output embeds the manifest of the run that produced it; re-running
// with the same manifest reproduces the output byte for byte except for the
// duration field.
struct RunManifest {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> flags; // sorted by key
    std::string input_checksum;
    std::string version;
    std::uint64_t seed = 0;
    double duration_ms = 0.0;
};

std::string manifest_json(const RunManifest& m);

std::string tool_version();

// "power:R" | "log" | "exp_over_linear" | "geometric:A" | "table:v1,v2,..."
CostH parse_cost_h(const std::string& spec);

struct ReportArgs {
    CommonOptions common;
};

struct BesSweepArgs {
    CommonOptions common;
    std::vector<double> p_grid;
    std::vector<std::uint64_t> n_grid;
};

struct ShatterArgs {
    CommonOptions common;
    std::string y;
    std::string h = "power:1";
    std::vector<std::uint64_t> m_grid; // {100,1000,10000,100000} when empty
};

struct SimulateArgs {
    CommonOptions common;
    std::string dist;  // inline "p1,p2,..." alternative to --input
    std::string phat;  // inline override; optimal when empty
    std::uint64_t trials = 100000;
};

struct Claim1Args {
    CommonOptions common;
    std::uint64_t n = 4; // 2 or 4
    int samples = 100;
    unsigned resolution = 40;
};

struct OptimizeArgs {
    CommonOptions common;
    std::string objective = "guesswork"; // guesswork | oblivious | pointwise
    std::string h = "power:1";
    std::string y; // pointwise only
};

int run_report(const ReportArgs& args);
int run_bes_sweep(const BesSweepArgs& args);
int run_shatter_converge(const ShatterArgs& args);
int run_simulate_oblivious(const SimulateArgs& args);
int run_claim1_check(const Claim1Args& args);
int run_optimize_channel(const OptimizeArgs& args);

} // namespace gleak::cli
