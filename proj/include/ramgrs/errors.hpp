#pragma once

#include <stdexcept>
#include <string>

namespace ramgrs {

// Error categories map 1:1 onto CLI exit codes (1, 2, 3).

/// Bad user input: malformed CSV, unknown DMU id, invalid flag values,
/// oracle size-guard violations.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The numerical engine failed: iteration/node limits, pivot breakdown,
/// a residual check that did not hold after a solve.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An internal consistency guarantee did not hold (objective mismatch between
/// equivalent formulations, non-binary relaxed optimum, vanishing scale
/// factor). These indicate an implementation or conditioning bug, never a
/// property of the data.
class TheoremViolation : public std::runtime_error {
 public:
  explicit TheoremViolation(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ramgrs
