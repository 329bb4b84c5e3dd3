#pragma once

#include <stdexcept>
#include <string>

namespace sunsde {

/// Bad argument to a library call (precondition violated).
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Malformed input data (CSV cell, JSON field). Carries the offending row when known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg, long row = -1)
      : std::runtime_error(row >= 0 ? msg + " (row " + std::to_string(row) + ")" : msg),
        row_(row) {}
  long row() const noexcept { return row_; }

 private:
  long row_;
};

/// Structurally invalid dataset (non-monotonic timestamps, wrong header, ...).
class StructuralError : public std::runtime_error {
 public:
  explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure at run time (non-finite drift, covariance collapse).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid run configuration (grid too coarse, unknown model id, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sunsde
