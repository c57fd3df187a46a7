#pragma once

#include <stdexcept>
#include <string>

namespace epic {

// Bad or inconsistent input data: malformed files, dimension mismatches,
// domain violations. CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: training divergence, regularization escalation
// exhausted, solver breakdown. CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace epic
