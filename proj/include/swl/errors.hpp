#pragma once

#include <stdexcept>
#include <string>

namespace swl {

// Bad user-supplied parameters or config files. CLI maps this to exit code 2.
class config_error : public std::invalid_argument {
public:
    explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

// Data cannot support the requested estimate (rank deficiency, too few rows).
// CLI maps this to exit code 3.
class identifiability_error : public std::runtime_error {
public:
    explicit identifiability_error(const std::string& what) : std::runtime_error(what) {}
};

// A statistic is undefined for the given input (e.g. PAPR of the zero signal).
class undefined_statistic_error : public std::runtime_error {
public:
    explicit undefined_statistic_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure inside an otherwise valid computation (vanishing pivots,
// non-invertible operating point). CLI maps this to exit code 3.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace swl
