#pragma once

#include <string>
#include <vector>

#include "gleak/guessing.hpp"
#include "gleak/optimize.hpp"
#include "gleak/prob.hpp"

namespace gleak {

enum class LogBase { E, Two };

// Scales a nats value to the requested base.
double in_base(double nats, LogBase base);
ExtendedReal in_base(const ExtendedReal& nats, LogBase base);

// Maximal leakage log sum_y max_{x in supp(X)} P(y|x).
ExtendedReal maximal_leakage(const JointSource& j);

// Pointwise maximal guesswork leakage from X to a realization y: the
// order-infinity divergence between prior and posterior. Infinite exactly
// when the posterior loses part of the prior's support.
ExtendedReal pointwise_guesswork_leakage(const JointSource& j, std::string_view y_label);

// Cost-leakage upper bound on maximal guesswork leakage:
// -log sum_y min_{x: P_X(x)>0} P(y|x).
ExtendedReal mgl_upper_bound(const JointSource& j);

// Closed form log(2/(1+p)) for the binary erasure source.
double mgl_bes_closed_form(double p);

// Worst log-ratio of channel rows, the local differential privacy level:
// max_{x,x',y} log P(y|x)/P(y|x').
ExtendedReal local_dp_leakage(const Channel& ch);

// Oblivious rho-guesswork leakage of a fixed randomizer U = K(X):
// rho * I_{1/(1+rho)}(U;Y) on the induced joint.
double oblivious_mgl_objective(const JointSource& j, const Channel& u_channel, double rho);

struct ObliviousMgl {
    double rho = 0.0;
    // capacity route, both candidate orders (they need not agree)
    double rho_over_1p_value = 0.0; // rho * capacity at order rho/(1+rho)
    double one_over_1p_value = 0.0; // rho * capacity at order 1/(1+rho)
    // channel-space route: supremum estimate of oblivious_mgl_objective
    double channel_space_value = 0.0;
    std::size_t u_size = 0;
    int restarts = 0;
    bool converged = false;
    std::string channel_checksum;
};

// All three evaluations of the oblivious maximal rho-guesswork leakage; the
// two capacity orders are both reported rather than silently resolved.
ObliviousMgl oblivious_mgl(const JointSource& j, double rho, const OptimizerConfig& cfg);

// Pointwise oblivious rho-guesswork leakage; equals the order-infinity
// divergence for every rho > 0, so rho is validated and otherwise unused.
ExtendedReal pointwise_oblivious_mgl(const JointSource& j, std::string_view y_label, double rho);

// log of the ratio of alpha-norms (sum p^alpha)^(1/alpha) of two
// distributions, alpha in (0,1).
double alpha_norm_ratio(const Distribution& p, const Distribution& q, double alpha);

// Guesswork leakage of a fixed randomizer: log of unconditional over
// Y-conditional optimal cost of U.
double guesswork_leakage_objective(const JointSource& j, const Channel& u_channel,
                                   const CostH& h);

// Same, conditioning on a single observation y.
double pointwise_guesswork_leakage_objective(const JointSource& j, const Channel& u_channel,
                                             std::string_view y_label, const CostH& h);

// ---------------------------------------------------------------------------
// Aggregated report

struct ReportEntry {
    std::string name;
    ExtendedReal value;
    std::string method; // closed_form | bound | optimized | empirical
    std::vector<std::pair<std::string, std::string>> parameters;
};

struct LeakageReport {
    std::string source;
    LogBase base = LogBase::E;
    std::vector<double> rho_list;
    std::vector<ReportEntry> entries;
};

// Every closed form and bound for a source, pointwise entries per admissible
// y, and the three-way oblivious evaluation per rho.
LeakageReport build_report(const JointSource& j, const std::vector<double>& rho_list,
                           LogBase base, const OptimizerConfig& cfg);

// Stable key order, 12 significant digits, infinities rendered as "inf".
std::string report_to_json(const LeakageReport& report, int indent = 2);

// If the joint is a binary erasure source (up to 1e-9), returns its p.
bool detect_erasure_source(const JointSource& j, double* p_out);

} // namespace gleak
