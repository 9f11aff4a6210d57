#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "gleak/guessing.hpp"
#include "gleak/prob.hpp"

namespace gleak {

struct OptimizerConfig {
    int restarts = 32;
    int max_iters = 2000;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    std::size_t u_size = 8;
    double fd_step = 1e-6;      // finite-difference probe
    double initial_step = 0.25; // simplex step before decay
    double step_decay = 0.5;    // applied on non-improvement
    int stall_iters = 25;       // convergence window
    int threads = 1;            // parallel restarts; results do not depend on it
};

struct OptResult {
    double best_value = 0.0;
    std::variant<Channel, Distribution> argument;
    int iterations = 0;
    bool converged = false;
    std::vector<double> restart_best; // best value reached by each restart
};

// Objectives for the channel-space search over P_{U|X}; values are the
// corresponding leakage module objectives (log ratios, or rho-scaled
// Arimoto mutual information for the oblivious case).
struct GuessworkRatio {
    CostH h;
};
struct ObliviousRatio {
    double rho;
};
struct PointwiseRatio {
    std::string y;
    CostH h;
};
using ChannelObjective = std::variant<GuessworkRatio, ObliviousRatio, PointwiseRatio>;

// Multi-restart projected coordinate ascent over row-stochastic P_{U|X},
// with construction-based warm starts. Deterministic per seed; the reported
// value is a lower estimate of the supremum at |U| = u_size.
OptResult maximize_u_channel(const JointSource& j, const ChannelObjective& objective,
                             const OptimizerConfig& cfg);

// The interleaved uniform split of the binary erasure analysis as an
// explicit X -> U channel on n outputs; a warm start for erasure-like
// sources and a feasible point of known value.
Channel seeded_bes_channel(std::uint64_t n);

// Supremum of Arimoto mutual information of order alpha over input priors:
// alternating multiplicative updates with a projected-gradient fallback.
OptResult arimoto_capacity(const Channel& ch, double alpha, const OptimizerConfig& cfg);

// Exhaustive simplex-grid capacity for channels with at most 3 inputs;
// the independent check for arimoto_capacity.
double grid_capacity_oracle(const Channel& ch, double alpha, unsigned resolution);

// Grid maximum over priors and observations y of the order-infinity
// divergence between prior and posterior; matches the channel's local
// differential privacy level.
ExtendedReal max_prior_pointwise_leakage(const Channel& ch, unsigned resolution);

// Evaluates a channel objective at a concrete P_{U|X}; the same evaluator
// the optimizer uses, exposed so feasible points can be audited.
double evaluate_channel_objective(const JointSource& j, const ChannelObjective& objective,
                                  const std::vector<std::vector<double>>& u_rows);

} // namespace gleak
