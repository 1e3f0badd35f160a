#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "ramgrs/dataset.hpp"

namespace ramgrs {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// maximize objective'x  subject to  A x = rhs,  lower <= x <= upper.
///
/// All constraints are equalities; callers convert <=/>= rows by adding
/// explicit slack columns before submission. Lower bounds must be finite
/// (default 0); upper bounds may be +infinity (default).
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<double> a;  // row-major, num_rows x num_vars
  std::size_t num_rows = 0;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;

  LinearProgram() = default;
  explicit LinearProgram(std::size_t vars)
      : num_vars(vars),
        objective(vars, 0.0),
        lower(vars, 0.0),
        upper(vars, kInfinity) {}

  /// Append the equality row coeffs . x = b. coeffs must have num_vars entries.
  void add_row(const std::vector<double>& coeffs, double b);

  double coef(std::size_t i, std::size_t j) const { return a[i * num_vars + j]; }
  double& coef(std::size_t i, std::size_t j) { return a[i * num_vars + j]; }

  void set_bounds(std::size_t j, double lo, double hi) {
    lower[j] = lo;
    upper[j] = hi;
  }

  /// Throws InputError on inconsistent dimensions or invalid bounds.
  void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;         // primal values, only meaningful when Optimal
  double objective_value = 0.0;  // only meaningful when Optimal
  std::uint64_t iterations = 0;
};

/// Two-phase primal simplex on the bounded-variable form. Optimal solutions
/// are basic (vertices). Deterministic: Dantzig pricing with a switch to
/// Bland's rule after a run of degenerate steps. Numerical breakdown is
/// reported as SolverError, never as Infeasible.
LpSolution solve_lp(const LinearProgram& lp, const Tolerances& tol);

}  // namespace ramgrs
