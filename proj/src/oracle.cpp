#include "ramgrs/oracle.hpp"

#include <algorithm>
#include <string>

#include "ramgrs/errors.hpp"
#include "ramgrs/lp.hpp"
#include "ramgrs/util.hpp"

namespace ramgrs {

namespace {

// System rows over (lambda, s-, s+) with the original right-hand side.
LinearProgram system_lp(const OptimalSolutionSystem& sys) {
  LinearProgram lp(sys.coeff.cols);
  std::vector<double> row(lp.num_vars, 0.0);
  for (std::size_t r = 0; r < sys.coeff.rows; ++r) {
    for (std::size_t c = 0; c < sys.coeff.cols; ++c) row[c] = sys.coeff.at(r, c);
    lp.add_row(row, sys.rhs[r]);
  }
  return lp;
}

IntensityMember member_from(const OptimalSolutionSystem& sys, const LpSolution& sol) {
  const std::size_t k = sys.num_intensities();
  const std::size_t m = sys.num_inputs();
  IntensityMember member;
  member.lambda.assign(sol.x.begin(), sol.x.begin() + k);
  member.s_minus.assign(sol.x.begin() + k, sol.x.begin() + k + m);
  member.s_plus.assign(sol.x.begin() + k + m, sol.x.end());
  return member;
}

}  // namespace

std::vector<std::size_t> oracle_support(const OptimalSolutionSystem& sys,
                                        const Tolerances& tol, unsigned jobs) {
  const std::size_t k = sys.num_intensities();
  std::vector<double> best(k, 0.0);
  parallel_for(k, jobs, [&](std::size_t p) {
    LinearProgram lp = system_lp(sys);
    lp.objective[p] = 1.0;
    const LpSolution sol = solve_lp(lp, tol);
    if (sol.status != LpStatus::Optimal) {
      // The system is feasible by construction and lambda_p <= 1.
      throw SolverError("internal: per-unit support LP reported non-optimal status");
    }
    best[p] = sol.objective_value;
  });
  std::vector<std::size_t> support;
  for (std::size_t p = 0; p < k; ++p) {
    if (best[p] > tol.support_eps) support.push_back(p);
  }
  return support;
}

IntensityMember sample_intensity_member(const OptimalSolutionSystem& sys,
                                const std::vector<double>& weight,
                                const Tolerances& tol) {
  const std::size_t k = sys.num_intensities();
  if (weight.size() != k) throw InputError("sample weight length must equal |E|");
  LinearProgram lp = system_lp(sys);
  for (std::size_t p = 0; p < k; ++p) lp.objective[p] = weight[p];
  const LpSolution sol = solve_lp(lp, tol);
  if (sol.status != LpStatus::Optimal) {
    throw SolverError("internal: sampling LP reported non-optimal status");
  }
  return member_from(sys, sol);
}

BruteForceResult brute_force_support(const OptimalSolutionSystem& sys,
                                    const Tolerances& tol) {
  const std::size_t k = sys.num_intensities();
  if (k > 16) {
    throw InputError("brute-force guard: " + std::to_string(k) +
                     " efficient units exceed the limit of 16 (2^(|E|+1) patterns)");
  }
  const std::size_t m = sys.num_inputs();
  const std::size_t s = sys.num_outputs();

  // Variables: lambda (k), s- (m), s+ (s), delta; homogeneous system rows.
  // A pattern is feasible iff the LP with lower bounds lambda_p >= alpha_p,
  // delta >= gamma admits a point.
  LinearProgram base(k + m + s + 1);
  const std::size_t delta_idx = k + m + s;
  std::vector<double> row(base.num_vars, 0.0);
  for (std::size_t r = 0; r < sys.coeff.rows; ++r) {
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t c = 0; c < sys.coeff.cols; ++c) row[c] = sys.coeff.at(r, c);
    row[delta_idx] = -sys.rhs[r];
    base.add_row(row, 0.0);
  }

  BruteForceResult best;
  best.objective = -1.0;
  const std::uint32_t patterns = 1u << (k + 1);
  for (std::uint32_t mask = 0; mask < patterns; ++mask) {
    LinearProgram lp = base;
    int count = 0;
    for (std::size_t p = 0; p < k; ++p) {
      if (mask & (1u << p)) {
        lp.lower[p] = 1.0;
        ++count;
      }
    }
    const int gamma = (mask & (1u << k)) ? 1 : 0;
    if (gamma) lp.lower[delta_idx] = 1.0;
    const double objective = count + gamma;
    if (objective <= best.objective) continue;  // cannot improve; skip the LP

    const LpSolution sol = solve_lp(lp, tol);
    if (sol.status == LpStatus::Optimal) {
      best.objective = objective;
      best.alpha.assign(k, 0);
      for (std::size_t p = 0; p < k; ++p) best.alpha[p] = (mask & (1u << p)) ? 1 : 0;
      best.gamma = gamma;
    }
  }
  return best;
}

}  // namespace ramgrs
