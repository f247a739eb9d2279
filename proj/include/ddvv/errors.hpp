#pragma once

#include <stdexcept>
#include <string>

namespace ddvv {

/// Bad arguments or malformed input (CLI exit code 1).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Degenerate geometry, non-finite values, infeasible optimization (CLI exit code 2).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ddvv
