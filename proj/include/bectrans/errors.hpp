#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bectrans {

// Base class for all library failures.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad user input: malformed config, out-of-range parameter, unknown key.
struct ConfigError : Error {
  using Error::Error;
};

// Violated numeric precondition (degenerate state, mismatched grids, ...).
struct DomainError : Error {
  using Error::Error;
};

// Iterative solver failed to reach its tolerance.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& msg, double residual)
      : Error(msg), last_residual(residual) {}
  double last_residual;
};

// Spatial grid cannot hold the state (boundary truncation, frame escape).
struct GridError : Error {
  using Error::Error;
};

// Constraint set admits no solution; names the violated bound.
struct InfeasibilityError : Error {
  InfeasibilityError(const std::string& msg, std::string bound_name)
      : Error(msg), bound(std::move(bound_name)) {}
  std::string bound;
};

// Non-finite values appeared during time stepping.
struct StabilityError : Error {
  StabilityError(const std::string& msg, std::int64_t at_step)
      : Error(msg), step(at_step) {}
  std::int64_t step;
};

// A sampled signal does not cover the requested interval or shift.
struct CoverageError : Error {
  using Error::Error;
};

}  // namespace bectrans
