#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ramgrs/dataset.hpp"
#include "ramgrs/dense.hpp"
#include "ramgrs/milp.hpp"
#include "ramgrs/ram.hpp"

namespace ramgrs {

/// The equation system whose feasible set is exactly the optimal-solution set
/// of the evaluated unit's score model. Rows, in order: m input rows
/// [X_E I 0], s output rows [Y_E 0 -I], the convexity row, and the weighted
/// slack row pinning total inefficiency. When every data column is constant
/// the weighted row degenerates to 0 = 0 and is dropped (flag below).
///
/// Intensity columns are indexed over the efficient set only; positions map
/// back to dataset indices through `efficient.indices`.
struct OptimalSolutionSystem {
  EfficientSet efficient;
  std::size_t o = 0;
  std::vector<double> x_o;
  std::vector<double> y_o;
  double rho = 1.0;
  double rhs_inefficiency = 0.0;  // (m+s)(1-rho), carried raw from the solver
  RangeWeights weights;
  DenseMatrix coeff;        // rows x (|E| + m + s)
  std::vector<double> rhs;  // length rows
  bool weighted_row_dropped = false;
  std::vector<std::string> diagnostics;

  std::size_t num_inputs() const { return weights.r_minus.size(); }
  std::size_t num_outputs() const { return weights.r_plus.size(); }
  std::size_t num_intensities() const { return efficient.size(); }
};

OptimalSolutionSystem build_system(const Dataset& ds, const EfficientSet& eff,
                                   std::size_t o, const RamResult& ram,
                                   const RangeWeights& w);

struct MembershipReport {
  bool member = false;
  double max_residual = 0.0;  // largest row residual at the best slack choice
};

/// Is there a slack pair making (lambda, s-, s+) satisfy the system? Solved
/// as a phase-1 style LP that minimizes the largest tolerance-scaled row
/// violation over all slack choices; the weighted row gets a 10x band since
/// it inherits error from the prior score solve.
MembershipReport membership_residual(const OptimalSolutionSystem& sys,
                                     const std::vector<double>& lambda,
                                     const Tolerances& tol);
bool check_membership(const OptimalSolutionSystem& sys,
                            const std::vector<double>& lambda, const Tolerances& tol);

/// Optimum of the scaled support-counting model: the homogeneous system in
/// (lambda, s-, s+, delta) with indicator relaxations alpha <= lambda (alpha
/// in [0,1]) and gamma <= delta (gamma in [0,1]), maximizing 1'alpha + gamma.
/// At any optimum gamma = 1 and alpha is componentwise binary; the solver
/// checks this and raises TheoremViolation otherwise.
struct ScaledSupportSolution {
  std::vector<double> lambda;
  std::vector<double> s_minus;
  std::vector<double> s_plus;
  double delta = 0.0;
  std::vector<double> alpha;
  double gamma = 0.0;
  double objective = 0.0;
  std::uint64_t nodes = 0;  // branch-and-bound nodes (mixed 0-1 route only)
};

ScaledSupportSolution solve_support_relaxed(const OptimalSolutionSystem& sys, const Tolerances& tol);

/// Same model with alpha and gamma genuinely binary, solved by branch and
/// bound. Kept as a cross-check for the relaxation; objectives must agree.
ScaledSupportSolution solve_support_binary(const OptimalSolutionSystem& sys, const Tolerances& tol,
                             const MilpOptions& options = {});

/// A maximal element of the optimal intensity set: a member whose positive
/// support has maximum cardinality. The support is unique; the values are not.
struct MaximalElement {
  std::vector<double> lambda_max;      // length |E|, sums to 1
  std::vector<std::size_t> support;    // positions into the efficient set
  std::size_t cardinality = 0;
};

/// lambda_max = lambda*/delta*, support thresholded after the division, and
/// membership re-verified.
MaximalElement recover_lambda_max(const OptimalSolutionSystem& sys,
                                  const ScaledSupportSolution& sol, const Tolerances& tol);

/// The earlier one-shot LP formulation (variables alpha+beta, gamma+nu);
/// equivalent through beta := lambda - alpha, nu := delta - gamma.
struct SplitSupportSolution {
  MaximalElement maximal;
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> s_minus;
  std::vector<double> s_plus;
  double gamma = 0.0;
  double nu = 0.0;
  double objective = 0.0;
};

SplitSupportSolution solve_support_split(const OptimalSolutionSystem& sys, const Tolerances& tol);

/// A feasible point of the mixed 0-1 model constructed from a member of the
/// optimal intensity set. The homogeneous system permits rescaling, so the
/// member is scaled until every supported intensity reaches 1; its indicator
/// pattern then counts exactly the member's positive components.
struct LiftedPoint {
  std::vector<double> lambda;
  std::vector<double> s_minus;
  std::vector<double> s_plus;
  double delta = 1.0;
  std::vector<double> alpha;
  double gamma = 1.0;
  double objective = 0.0;
};

LiftedPoint lift_member(const OptimalSolutionSystem& sys,
                           const std::vector<double>& lambda,
                           const std::vector<double>& s_minus,
                           const std::vector<double>& s_plus, const Tolerances& tol);

/// Final report row: the evaluated unit's global reference set as dataset ids.
struct GrsResult {
  std::string evaluated_id;
  std::vector<std::string> reference_ids;  // dataset order
  MaximalElement maximal;
  double rho = 1.0;
};

GrsResult extract_grs(const Dataset& ds, const EfficientSet& eff,
                      const MaximalElement& maximal, std::size_t o, double rho);

}  // namespace ramgrs
