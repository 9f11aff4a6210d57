#pragma once

#include <stdexcept>
#include <string>

namespace gleak {

// Malformed probability data: negative mass, drifting sums, duplicate labels.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Operands defined over different or unknown alphabets.
class label_error : public std::runtime_error {
public:
    explicit label_error(const std::string& what) : std::runtime_error(what) {}
};

// A conditioning event or channel row has zero probability.
class zero_mass_error : public std::runtime_error {
public:
    explicit zero_mass_error(const std::string& what) : std::runtime_error(what) {}
};

// Input file could not be parsed; carries a line diagnostic when known.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what, long line = -1)
        : std::runtime_error(line >= 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

} // namespace gleak
