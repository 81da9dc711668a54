#pragma once
#include <stdexcept>
#include <string>

namespace beam {

// Rejected input: bad grid, bad exponent, infeasible plan. CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Computation started but failed a numerical contract (divergence, NaN, precondition
// discovered mid-run). CLI maps this to exit code 3.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace beam
