#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gleak/errors.hpp"

namespace gleak {

// Validation tolerance on stored objects; inputs whose total mass drifts by
// less than kRenormalizeDrift are renormalized, anything worse is rejected.
inline constexpr double kMassTolerance = 1e-12;
inline constexpr double kRenormalizeDrift = 1e-9;

// A nonnegative real value that may be positive infinity. NaN and -inf are
// rejected at construction so downstream code never has to test for them.
class ExtendedReal {
public:
    ExtendedReal() : v_(0.0) {}
    explicit ExtendedReal(double v);
    static ExtendedReal infinity();

    bool is_infinite() const;
    // Underlying double; +inf when infinite.
    double value() const { return v_; }
    std::string str() const; // "inf" or 12 significant digits

    friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) { return a.v_ == b.v_; }
    friend bool operator<(const ExtendedReal& a, const ExtendedReal& b) { return a.v_ < b.v_; }
    friend bool operator<=(const ExtendedReal& a, const ExtendedReal& b) { return a.v_ <= b.v_; }

private:
    double v_;
};

// Probability distribution over a finite labeled alphabet. Labels are opaque
// strings; their stored order is preserved and used to break ties everywhere.
// Zero-probability symbols are kept: support structure matters for the
// order-infinity divergence and the column-minimum leakage bound.
struct Distribution {
    std::vector<std::string> labels;
    std::vector<double> probs;

    std::size_t size() const { return probs.size(); }
    std::optional<std::size_t> index_of(std::string_view label) const;
};

// Row-stochastic conditional distribution: rows[i][j] = P(output j | input i).
struct Channel {
    std::vector<std::string> input_labels;
    std::vector<std::string> output_labels;
    std::vector<std::vector<double>> rows;

    std::size_t num_inputs() const { return rows.size(); }
    std::size_t num_outputs() const { return output_labels.size(); }
};

// Joint distribution over X x Y with cached marginals and posteriors.
// Treated as immutable after construction; safe to share across threads.
struct JointSource {
    std::vector<std::string> x_labels;
    std::vector<std::string> y_labels;
    std::vector<std::vector<double>> pxy; // pxy[i][j] = P(x_i, y_j)

    std::vector<double> px;
    std::vector<double> py;
    // posteriors[j][i] = P(x_i | y_j); empty vector when P_Y(y_j) = 0.
    std::vector<std::vector<double>> posteriors;

    std::size_t nx() const { return x_labels.size(); }
    std::size_t ny() const { return y_labels.size(); }
    std::optional<std::size_t> y_index_of(std::string_view label) const;
    std::optional<std::size_t> x_index_of(std::string_view label) const;
};

// Validating factories. Each rejects negative mass and duplicate labels and
// renormalizes totals whose drift from 1 is below kRenormalizeDrift.
Distribution make_distribution(std::vector<std::string> labels, std::vector<double> probs);
Channel make_channel(std::vector<std::string> input_labels,
                     std::vector<std::string> output_labels,
                     std::vector<std::vector<double>> rows);
JointSource make_joint(std::vector<std::string> x_labels,
                       std::vector<std::string> y_labels,
                       std::vector<std::vector<double>> pxy);

Distribution marginal_x(const JointSource& j);
Distribution marginal_y(const JointSource& j);

// P_{X|Y=y}; throws zero_mass_error when P_Y(y) = 0.
Distribution posterior(const JointSource& j, std::size_t y_index);
Distribution posterior(const JointSource& j, std::string_view y_label);

// Compose a prior on X with a channel X -> Y into the joint P(x)P(y|x).
JointSource joint_from(const Distribution& prior, const Channel& ch);

// Binary erasure source on {0,1} x {0,e,1}: X uniform, Y = X with
// probability 1-p and the erasure symbol otherwise.
JointSource erasure_source(double p);

struct ChannelFromJoint {
    Channel channel;
    std::vector<std::string> omitted_inputs; // x with P_X(x) = 0, rows dropped
};

// Bayes inversion P_{Y|X}; zero-mass inputs cannot be conditioned on, their
// rows are omitted and reported.
ChannelFromJoint channel_from_joint(const JointSource& j);

} // namespace gleak
