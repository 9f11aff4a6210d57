#include "gleak/prob.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <unordered_set>

namespace gleak {

ExtendedReal::ExtendedReal(double v) : v_(v) {
    if (std::isnan(v)) throw validation_error("ExtendedReal: NaN");
    if (v == -std::numeric_limits<double>::infinity())
        throw validation_error("ExtendedReal: -inf");
}

ExtendedReal ExtendedReal::infinity() {
    return ExtendedReal(std::numeric_limits<double>::infinity());
}

bool ExtendedReal::is_infinite() const { return std::isinf(v_); }

std::string ExtendedReal::str() const {
    if (is_infinite()) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v_);
    return buf;
}

namespace {

void check_labels_distinct(const std::vector<std::string>& labels, const char* what) {
    std::unordered_set<std::string_view> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second)
            throw validation_error(std::string(what) + ": duplicate label '" + l + "'");
    }
}

// Shared mass check: entries >= 0, total within kRenormalizeDrift of 1.
// Returns the total so callers can renormalize.
double checked_total(const std::vector<double>& v, const char* what) {
    double total = 0.0;
    for (double p : v) {
        if (std::isnan(p) || p < 0.0)
            throw validation_error(std::string(what) + ": negative or NaN mass");
        total += p;
    }
    if (std::abs(total - 1.0) > kRenormalizeDrift)
        throw validation_error(std::string(what) + ": total mass " + std::to_string(total) +
                               " drifts from 1 by more than " + std::to_string(kRenormalizeDrift));
    return total;
}

std::optional<std::size_t> find_label(const std::vector<std::string>& labels,
                                      std::string_view label) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return i;
    return std::nullopt;
}

} // namespace

std::optional<std::size_t> Distribution::index_of(std::string_view label) const {
    return find_label(labels, label);
}

std::optional<std::size_t> JointSource::y_index_of(std::string_view label) const {
    return find_label(y_labels, label);
}

std::optional<std::size_t> JointSource::x_index_of(std::string_view label) const {
    return find_label(x_labels, label);
}

Distribution make_distribution(std::vector<std::string> labels, std::vector<double> probs) {
    if (labels.size() != probs.size())
        throw validation_error("distribution: labels/probs length mismatch");
    if (labels.empty()) throw validation_error("distribution: empty alphabet");
    check_labels_distinct(labels, "distribution");
    double total = checked_total(probs, "distribution");
    for (double& p : probs) p /= total;
    return Distribution{std::move(labels), std::move(probs)};
}

Channel make_channel(std::vector<std::string> input_labels,
                     std::vector<std::string> output_labels,
                     std::vector<std::vector<double>> rows) {
    if (rows.size() != input_labels.size())
        throw validation_error("channel: one row per input required");
    check_labels_distinct(input_labels, "channel inputs");
    check_labels_distinct(output_labels, "channel outputs");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != output_labels.size())
            throw validation_error("channel: row " + std::to_string(i) + " has wrong arity");
        double total = checked_total(rows[i], "channel row");
        for (double& p : rows[i]) p /= total;
    }
    return Channel{std::move(input_labels), std::move(output_labels), std::move(rows)};
}

JointSource make_joint(std::vector<std::string> x_labels,
                       std::vector<std::string> y_labels,
                       std::vector<std::vector<double>> pxy) {
    if (x_labels.empty() || y_labels.empty())
        throw validation_error("joint: empty alphabet");
    check_labels_distinct(x_labels, "joint x");
    check_labels_distinct(y_labels, "joint y");
    if (pxy.size() != x_labels.size())
        throw validation_error("joint: one row per x required");

    double total = 0.0;
    for (const auto& row : pxy) {
        if (row.size() != y_labels.size())
            throw validation_error("joint: row arity mismatch");
        for (double p : row) {
            if (std::isnan(p) || p < 0.0)
                throw validation_error("joint: negative or NaN mass");
            total += p;
        }
    }
    if (std::abs(total - 1.0) > kRenormalizeDrift)
        throw validation_error("joint: total mass " + std::to_string(total) +
                               " drifts from 1 by more than " + std::to_string(kRenormalizeDrift));
    for (auto& row : pxy)
        for (double& p : row) p /= total;

    JointSource j;
    j.x_labels = std::move(x_labels);
    j.y_labels = std::move(y_labels);
    j.pxy = std::move(pxy);

    j.px.assign(j.nx(), 0.0);
    j.py.assign(j.ny(), 0.0);
    for (std::size_t i = 0; i < j.nx(); ++i)
        for (std::size_t k = 0; k < j.ny(); ++k) {
            j.px[i] += j.pxy[i][k];
            j.py[k] += j.pxy[i][k];
        }

    j.posteriors.assign(j.ny(), {});
    for (std::size_t k = 0; k < j.ny(); ++k) {
        if (j.py[k] <= 0.0) continue;
        auto& col = j.posteriors[k];
        col.resize(j.nx());
        for (std::size_t i = 0; i < j.nx(); ++i) col[i] = j.pxy[i][k] / j.py[k];
    }
    return j;
}

Distribution marginal_x(const JointSource& j) {
    return Distribution{j.x_labels, j.px};
}

Distribution marginal_y(const JointSource& j) {
    return Distribution{j.y_labels, j.py};
}

Distribution posterior(const JointSource& j, std::size_t y_index) {
    if (y_index >= j.ny()) throw label_error("posterior: y index out of range");
    if (j.py[y_index] <= 0.0)
        throw zero_mass_error("posterior: P_Y(" + j.y_labels[y_index] + ") = 0");
    return Distribution{j.x_labels, j.posteriors[y_index]};
}

Distribution posterior(const JointSource& j, std::string_view y_label) {
    auto idx = j.y_index_of(y_label);
    if (!idx) throw label_error("posterior: unknown y label '" + std::string(y_label) + "'");
    return posterior(j, *idx);
}

JointSource joint_from(const Distribution& prior, const Channel& ch) {
    if (prior.labels != ch.input_labels)
        throw label_error("joint_from: prior alphabet does not match channel inputs");
    std::vector<std::vector<double>> pxy(prior.size(),
                                         std::vector<double>(ch.num_outputs(), 0.0));
    for (std::size_t i = 0; i < prior.size(); ++i)
        for (std::size_t k = 0; k < ch.num_outputs(); ++k)
            pxy[i][k] = prior.probs[i] * ch.rows[i][k];
    return make_joint(prior.labels, ch.output_labels, std::move(pxy));
}

JointSource erasure_source(double p) {
    if (!(p >= 0.0 && p < 1.0))
        throw validation_error("erasure_source: p must lie in [0,1)");
    std::vector<std::vector<double>> pxy = {
        {(1.0 - p) / 2.0, p / 2.0, 0.0},
        {0.0, p / 2.0, (1.0 - p) / 2.0},
    };
    return make_joint({"0", "1"}, {"0", "e", "1"}, std::move(pxy));
}

ChannelFromJoint channel_from_joint(const JointSource& j) {
    ChannelFromJoint result;
    std::vector<std::string> kept;
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < j.nx(); ++i) {
        if (j.px[i] <= 0.0) {
            result.omitted_inputs.push_back(j.x_labels[i]);
            continue;
        }
        std::vector<double> row(j.ny());
        for (std::size_t k = 0; k < j.ny(); ++k) row[k] = j.pxy[i][k] / j.px[i];
        kept.push_back(j.x_labels[i]);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw zero_mass_error("channel_from_joint: no positive-mass inputs");
    result.channel = make_channel(std::move(kept), j.y_labels, std::move(rows));
    return result;
}

} // namespace gleak
