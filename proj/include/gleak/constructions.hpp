#pragma once

#include <functional>

#include "gleak/guessing.hpp"
#include "gleak/prob.hpp"

namespace gleak {

// Nonnegative masses over a labeled alphabet; need not sum to 1.
struct MassVector {
    std::vector<std::string> labels;
    std::vector<double> masses;

    std::size_t size() const { return masses.size(); }
};

// A split of a base distribution into two mass vectors with
// a + b = 2 * base entrywise.
struct SplitPair {
    MassVector a;
    MassVector b;
    Distribution base;
};

MassVector make_mass_vector(std::vector<std::string> labels, std::vector<double> masses);
SplitPair make_split_pair(MassVector a, MassVector b, Distribution base);

// Invoked with the working pair after every iteration of the split
// procedures below; used by tests to assert per-step monotonicity.
using SplitObserver = std::function<void(const SplitPair&)>;

// Guesswork extended to arbitrary nonnegative mass vectors:
// sum_i i * v_(i) over the descending order. Positively homogeneous and
// equal to guesswork on probability vectors.
double gamma_bar(const MassVector& v);

// Channel X -> U that keeps every symbol except x_star on a dedicated
// output and spreads x_star uniformly over a block of m outputs.
Channel shattering_channel(const Distribution& px, std::string_view x_star, std::uint64_t m);

struct ShatterRatio {
    double ratio;   // E[h(G(U))] / E[h(G_y(U))] under the shattering channel
    bool diverges;  // posterior mass at x_star is zero: the ratio grows without bound
};

// Pointwise cost ratio of the shattering channel, evaluated by closed sums
// so the cost never scales with m; x_star is the prior/posterior ratio
// maximizer (ties by label order).
ShatterRatio shattering_pointwise_ratio(const JointSource& j, std::string_view y_label,
                                        const CostH& h, std::uint64_t m);

// Mean cost over a guess-index window: (1/m) sum_{i=offset}^{offset+m-1} h(i).
// Evaluated in closed or truncated form for the built-in kinds, so m up to
// 1e9 stays cheap; may overflow to +inf for fast-growing h.
double tau_average(const CostH& h, std::uint64_t offset, std::uint64_t m);

// log of sum_{i=offset}^{offset+m-1} h(i), computed stably.
double log_tau_sum(const CostH& h, std::uint64_t offset, std::uint64_t m);

// The split minimizing (gamma_bar(a) + gamma_bar(b)) / 2 over disjoint mass
// splits: doubled mass on odd descending ranks for a, even ranks for b.
// An odd-sized alphabet is padded with a fresh zero-mass symbol internally
// and the pad is stripped from the output.
SplitPair optimal_split(const Distribution& pu);

// Lower bound sum_i i (P(u_{2i}) + P(u_{2i-1})) on the split infimum over
// probability pairs, taken over the descending order.
double claim1_lower_bound(const Distribution& pu);

// (gamma_bar(a)/2 + gamma_bar(b)/2) / guesswork(base).
double split_objective(const SplitPair& s);

// Moves each symbol's full mass to the side ranking it higher, one symbol
// per iteration; yields disjoint supports without increasing the half-sum
// of gamma_bar.
SplitPair disjointify(const SplitPair& s, const SplitObserver& observer = {});

// Rebalances a disjoint pair so support sizes differ by at most one, moving
// least-probable symbols from the larger side.
SplitPair balance_supports(const SplitPair& s);

// Swaps symbols between the sides of a disjoint, balanced pair until the
// descending ranks alternate; fixed point is the optimal_split assignment.
SplitPair alternate_swap(const SplitPair& s, const SplitObserver& observer = {});

// Ratio (before the log) of unconditional to Y-conditional guesswork for
// the binary erasure source under the interleaved uniform split on n
// symbols, evaluated from first principles via split_objective.
double bes_construction_value(std::uint64_t n, double p);

// Grid minimum of (gamma(A) + gamma(B)) / 2 over probability pairs with
// A + B = 2 P_U; oracle for claim1_lower_bound. |U| <= 4, resolution <= 50.
double brute_force_split_infimum(const Distribution& pu, unsigned resolution);

// A random probability pair (a, b) with a + b = 2 pu, for exercising the
// split pipeline; deterministic per seed.
SplitPair random_feasible_split(const Distribution& pu, std::uint64_t seed);

} // namespace gleak
