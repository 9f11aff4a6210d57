#pragma once

#include <iosfwd>
#include <string>

#include "gleak/prob.hpp"

namespace gleak {

// Joint-source file formats. JSON:
//   {"x_labels":[...], "y_labels":[...], "pxy":[[row per x]]}
// CSV: header "x,y,p", one (x,y,probability) triple per line; label order is
// the order of first appearance. Both parsers produce the same source for
// equivalent inputs.
JointSource parse_joint_json(std::istream& in);
JointSource parse_joint_csv(std::istream& in);

// Standalone distribution, JSON: {"labels":[...], "probs":[...]}.
Distribution parse_distribution_json(std::istream& in);

enum class SourceFormat { Auto, Json, Csv };

// Loads a joint source from disk, sniffing JSON vs CSV unless told otherwise.
JointSource load_joint(const std::string& path, SourceFormat format = SourceFormat::Auto);

// Loads either a joint source (then its X-marginal is the distribution) or a
// standalone distribution file.
Distribution load_distribution(const std::string& path, SourceFormat format = SourceFormat::Auto);

// FNV-1a hash of a file's raw bytes, as fixed-width hex; used in manifests.
std::string file_checksum(const std::string& path);

} // namespace gleak
