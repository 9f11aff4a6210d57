#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gleak/prob.hpp"

namespace gleak {

// A guessing function as the order in which symbols are tried: indices[k] is
// the position (into the distribution's stored alphabet) of the (k+1)-th
// guess.
struct GuessOrder {
    std::vector<std::size_t> indices;
};

// Nondecreasing cost h(n) of succeeding on the n-th guess. Built-in kinds
// diverge as n grows; a table holds its last value past the end and is
// flagged as non-divergent.
class CostH {
public:
    enum class Kind { Power, Log, ExpOverLinear, Geometric, Table };

    static CostH power(double rho);            // n^rho, rho > 0
    static CostH log();                        // log n
    static CostH exp_over_linear();            // e^n / (n+1)
    static CostH geometric(double a);          // a^n, a > 1
    static CostH table(std::vector<double> values);

    double operator()(std::uint64_t n) const;  // n >= 1
    Kind kind() const { return kind_; }
    double param() const { return param_; }
    std::size_t table_size() const { return table_.size(); }
    bool divergent() const { return kind_ != Kind::Table; }
    std::string name() const;

private:
    CostH(Kind k, double p, std::vector<double> t) : kind_(k), param_(p), table_(std::move(t)) {}
    Kind kind_;
    double param_;
    std::vector<double> table_;
};

// Descending-probability order; ties broken by the stored label order.
GuessOrder optimal_order(const Distribution& p);

// Minimum expected number of guesses, sum_i i P(x_(i)).
double guesswork(const Distribution& p);

// Minimum expected cost sum_i h(i) P(x_(i)); optimal by rearrangement since
// h is nondecreasing.
double h_guesswork(const Distribution& p, const CostH& h);

// sum_y P_Y(y) h_guesswork(P_{X|Y=y}, h): one optimal order per observation.
double conditional_h_guesswork(const JointSource& j, const CostH& h);

// Gamma(x+1) / (Gamma(y+1) Gamma(x-y+1)); throws on poles of Gamma.
double generalized_binomial(double x, double y);

// Cost of optimal memoryless guessing: the infimum over guess distributions
// of the rho-th factorial-moment cost, (sum_x P(x)^(1/(1+rho)))^(1+rho).
double oblivious_cost(const Distribution& p, double rho);

// Conditional variant, exp(rho * arimoto_cond_entropy at order 1/(1+rho)).
double oblivious_cost_conditional(const JointSource& j, double rho);

// Guess distribution achieving oblivious_cost: Phat proportional to
// P^(1/(1+rho)).
Distribution oblivious_optimal_phat(const Distribution& p, double rho);

// Expected factorial-moment cost of memoryless guessing from a fixed Phat:
// sum_x P(x) Phat(x)^(-rho). Infinite when Phat misses mass on supp(P).
ExtendedReal oblivious_expected_v(const Distribution& p, const Distribution& phat, double rho);

struct SimResult {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t truncated = 0; // trials cut off at the draw cap
};

// Monte Carlo estimate of the memoryless guessing cost: draw X ~ P, then
// i.i.d. guesses from Phat until a match, and average the factorial-moment
// cost of the hitting time. Deterministic for a fixed seed. A single trial
// is capped at 10^7 draws and counted in `truncated` instead of spinning.
SimResult simulate_memoryless_guessing(const Distribution& p, const Distribution& phat,
                                       double rho, std::uint64_t trials, std::uint64_t seed);

} // namespace gleak
