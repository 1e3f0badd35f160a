#include "ramgrs/milp.hpp"

#include <cmath>
#include <string>
#include <unordered_set>

#include "ramgrs/errors.hpp"

namespace ramgrs {

namespace {

// Prune margin for the incumbent bound test. Well below objective_eps, so the
// returned objective matches the exact mixed 0-1 optimum to reporting
// precision.
constexpr double kBoundEps = 1e-9;

class BranchAndBound {
 public:
  BranchAndBound(const MilpSpec& spec, const Tolerances& tol, const MilpOptions& options)
      : lp_(spec.base), binaries_(spec.binary_indices), tol_(tol), options_(options) {}

  LpSolution run(MilpStats* stats) {
    recurse();
    if (stats) stats->nodes = nodes_;
    LpSolution sol;
    sol.iterations = nodes_;
    if (!have_incumbent_) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    sol.status = LpStatus::Optimal;
    sol.x = best_x_;
    sol.objective_value = best_obj_;
    return sol;
  }

 private:
  void recurse() {
    if (++nodes_ > options_.node_limit) {
      throw SolverError("branch-and-bound node limit (" +
                        std::to_string(options_.node_limit) + ") exceeded");
    }
    const LpSolution relax = solve_lp(lp_, tol_);
    if (relax.status == LpStatus::Infeasible) return;
    if (relax.status == LpStatus::Unbounded) {
      // An unbounded relaxation gives no usable bound and no integral point;
      // none of the models posed here can produce one.
      throw SolverError("unbounded LP relaxation in branch-and-bound");
    }
    if (have_incumbent_ && relax.objective_value <= best_obj_ + kBoundEps) return;

    // Most-fractional binary.
    int branch_var = -1;
    double best_frac = tol_.feasibility_eps;
    for (std::size_t idx : binaries_) {
      const double v = relax.x[idx];
      const double frac = std::min(v, 1.0 - v);
      if (frac > best_frac) {
        best_frac = frac;
        branch_var = static_cast<int>(idx);
      }
    }

    if (branch_var < 0) {
      // Integral within tolerance: candidate incumbent with binaries snapped
      // exactly.
      if (!have_incumbent_ || relax.objective_value > best_obj_) {
        best_obj_ = relax.objective_value;
        best_x_ = relax.x;
        for (std::size_t idx : binaries_) best_x_[idx] = best_x_[idx] >= 0.5 ? 1.0 : 0.0;
        have_incumbent_ = true;
      }
      return;
    }

    const std::size_t j = static_cast<std::size_t>(branch_var);
    const double first = relax.x[j] >= 0.5 ? 1.0 : 0.0;
    const double saved_lower = lp_.lower[j];
    const double saved_upper = lp_.upper[j];
    for (double fixed : {first, 1.0 - first}) {
      lp_.lower[j] = fixed;
      lp_.upper[j] = fixed;
      recurse();
    }
    lp_.lower[j] = saved_lower;
    lp_.upper[j] = saved_upper;
  }

  LinearProgram lp_;
  std::vector<std::size_t> binaries_;
  const Tolerances& tol_;
  const MilpOptions& options_;
  bool have_incumbent_ = false;
  double best_obj_ = 0.0;
  std::vector<double> best_x_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

LpSolution solve_milp(const MilpSpec& spec, const Tolerances& tol,
                      const MilpOptions& options, MilpStats* stats) {
  spec.base.validate();
  std::unordered_set<std::size_t> seen;
  for (std::size_t idx : spec.binary_indices) {
    if (idx >= spec.base.num_vars) {
      throw InputError("binary index " + std::to_string(idx) + " out of range");
    }
    if (!seen.insert(idx).second) {
      throw InputError("duplicate binary index " + std::to_string(idx));
    }
    if (spec.base.lower[idx] != 0.0 || spec.base.upper[idx] != 1.0) {
      throw InputError("binary variable " + std::to_string(idx) +
                       " must have bounds [0,1]");
    }
  }
  BranchAndBound solver(spec, tol, options);
  return solver.run(stats);
}

}  // namespace ramgrs
