#include "ramgrs/grs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ramgrs/errors.hpp"
#include "ramgrs/lp.hpp"

namespace ramgrs {

namespace {

// The weighted slack row inherits round-off from the prior score solve, so it
// gets a 10x residual band; all other rows are first-class equalities.
double row_tolerance(const OptimalSolutionSystem& sys, std::size_t row,
                     const Tolerances& tol) {
  const std::size_t weighted_row = sys.num_inputs() + sys.num_outputs() + 1;
  if (!sys.weighted_row_dropped && row == weighted_row) return 10.0 * tol.feasibility_eps;
  return tol.feasibility_eps;
}

std::vector<double> clamped_lambda(const OptimalSolutionSystem& sys,
                                   const std::vector<double>& lambda,
                                   const Tolerances& tol, bool* negative) {
  if (lambda.size() != sys.num_intensities()) {
    throw InputError("intensity vector has length " + std::to_string(lambda.size()) +
                     ", expected " + std::to_string(sys.num_intensities()));
  }
  *negative = false;
  std::vector<double> lam = lambda;
  for (double& v : lam) {
    if (v < -tol.feasibility_eps) *negative = true;
    if (v < 0.0) v = 0.0;
  }
  return lam;
}

}  // namespace

OptimalSolutionSystem build_system(const Dataset& ds, const EfficientSet& eff,
                                   std::size_t o, const RamResult& ram,
                                   const RangeWeights& w) {
  const std::size_t m = ds.num_inputs();
  const std::size_t s = ds.num_outputs();
  const std::size_t k = eff.size();
  if (o >= ds.n()) throw InputError("DMU index " + std::to_string(o) + " out of range");

  OptimalSolutionSystem sys;
  sys.efficient = eff;
  sys.o = o;
  sys.x_o = ds.record(o).inputs;
  sys.y_o = ds.record(o).outputs;
  sys.rho = ram.rho;
  sys.rhs_inefficiency = std::max(0.0, ram.weighted_slack);
  sys.weights = w;
  sys.weighted_row_dropped = w.all_degenerate();

  const std::size_t rows = m + s + 1 + (sys.weighted_row_dropped ? 0 : 1);
  sys.coeff = DenseMatrix(rows, k + m + s);
  sys.rhs.assign(rows, 0.0);

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < k; ++p) sys.coeff.at(i, p) = eff.x_e.at(i, p);
    sys.coeff.at(i, k + i) = 1.0;
    sys.rhs[i] = sys.x_o[i];
  }
  for (std::size_t r = 0; r < s; ++r) {
    for (std::size_t p = 0; p < k; ++p) sys.coeff.at(m + r, p) = eff.y_e.at(r, p);
    sys.coeff.at(m + r, k + m + r) = -1.0;
    sys.rhs[m + r] = sys.y_o[r];
  }
  for (std::size_t p = 0; p < k; ++p) sys.coeff.at(m + s, p) = 1.0;
  sys.rhs[m + s] = 1.0;
  if (!sys.weighted_row_dropped) {
    for (std::size_t i = 0; i < m; ++i) sys.coeff.at(m + s + 1, k + i) = w.r_minus[i];
    for (std::size_t r = 0; r < s; ++r) sys.coeff.at(m + s + 1, k + m + r) = w.r_plus[r];
    sys.rhs[m + s + 1] = sys.rhs_inefficiency;
  } else {
    sys.diagnostics.push_back(
        "all data ranges are zero; the weighted slack row is vacuous and was dropped");
  }

  // A score-model vertex should never lean on an inefficient unit. If one
  // does, surface it for investigation instead of silently projecting.
  Tolerances tol;  // defaults are fine for a diagnostic threshold
  std::vector<bool> is_efficient(ds.n(), false);
  for (std::size_t idx : eff.indices) is_efficient[idx] = true;
  for (std::size_t j = 0; j < ram.lambda.size(); ++j) {
    if (!is_efficient[j] && ram.lambda[j] > tol.support_eps) {
      sys.diagnostics.push_back("score-model optimum for '" + ds.record(o).id +
                                "' places weight " + std::to_string(ram.lambda[j]) +
                                " on non-efficient unit '" + ds.record(j).id + "'");
    }
  }
  return sys;
}

MembershipReport membership_residual(const OptimalSolutionSystem& sys,
                                     const std::vector<double>& lambda,
                                     const Tolerances& tol) {
  bool negative = false;
  const std::vector<double> lam = clamped_lambda(sys, lambda, tol, &negative);
  MembershipReport report;
  if (negative) {
    report.member = false;
    for (double v : lambda) report.max_residual = std::max(report.max_residual, -v);
    return report;
  }

  const std::size_t k = sys.num_intensities();
  const std::size_t m = sys.num_inputs();
  const std::size_t s = sys.num_outputs();
  const std::size_t rows = sys.coeff.rows;
  const std::size_t nslack = m + s;

  // Move the fixed intensities to the right-hand side.
  std::vector<double> reduced_rhs(rows, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = sys.rhs[r];
    for (std::size_t p = 0; p < k; ++p) acc -= sys.coeff.at(r, p) * lam[p];
    reduced_rhs[r] = acc;
  }

  // min-max feasibility LP over the slacks: minimize t subject to
  // |S s - reduced_rhs|_r <= rowtol_r * t. Membership holds iff t* <= 1,
  // i.e. some slack choice puts every row inside its tolerance band.
  // Variables: s (nslack), t, then per row a pair of surplus columns.
  LinearProgram lp(nslack + 1 + 2 * rows);
  const std::size_t t_idx = nslack;
  lp.objective[t_idx] = -1.0;
  std::vector<double> row(lp.num_vars, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const double band = row_tolerance(sys, r, tol);
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t q = 0; q < nslack; ++q) row[q] = sys.coeff.at(r, k + q);
    row[t_idx] = -band;
    row[nslack + 1 + 2 * r] = 1.0;
    lp.add_row(row, reduced_rhs[r]);
    row[t_idx] = band;
    row[nslack + 1 + 2 * r] = 0.0;
    row[nslack + 1 + 2 * r + 1] = -1.0;
    lp.add_row(row, reduced_rhs[r]);
  }

  const LpSolution sol = solve_lp(lp, tol);
  if (sol.status != LpStatus::Optimal) {
    throw SolverError("internal: membership LP reported non-optimal status");
  }
  const double t_star = sol.x[t_idx];
  report.member = t_star <= 1.0 + 1e-9;

  for (std::size_t r = 0; r < rows; ++r) {
    double acc = -reduced_rhs[r];
    for (std::size_t q = 0; q < nslack; ++q) acc += sys.coeff.at(r, k + q) * sol.x[q];
    report.max_residual = std::max(report.max_residual, std::fabs(acc));
  }
  return report;
}

bool check_membership(const OptimalSolutionSystem& sys,
                            const std::vector<double>& lambda, const Tolerances& tol) {
  return membership_residual(sys, lambda, tol).member;
}

namespace {

// Shared column layout for the support-counting models:
//   lambda (k) | s- (m) | s+ (s) | delta | alpha (k) | gamma | w (k) | z
// where w and z are the slacks of alpha <= lambda and gamma <= delta.
struct ScaledModelLayout {
  std::size_t k, m, s;
  std::size_t delta, alpha, gamma, w, z, total;
};

ScaledModelLayout make_layout(const OptimalSolutionSystem& sys) {
  ScaledModelLayout lay;
  lay.k = sys.num_intensities();
  lay.m = sys.num_inputs();
  lay.s = sys.num_outputs();
  lay.delta = lay.k + lay.m + lay.s;
  lay.alpha = lay.delta + 1;
  lay.gamma = lay.alpha + lay.k;
  lay.w = lay.gamma + 1;
  lay.z = lay.w + lay.k;
  lay.total = lay.z + 1;
  return lay;
}

LinearProgram build_scaled_model(const OptimalSolutionSystem& sys,
                                 const ScaledModelLayout& lay) {
  LinearProgram lp(lay.total);
  for (std::size_t p = 0; p < lay.k; ++p) lp.objective[lay.alpha + p] = 1.0;
  lp.objective[lay.gamma] = 1.0;
  for (std::size_t p = 0; p < lay.k; ++p) lp.set_bounds(lay.alpha + p, 0.0, 1.0);
  lp.set_bounds(lay.gamma, 0.0, 1.0);

  std::vector<double> row(lp.num_vars, 0.0);
  for (std::size_t r = 0; r < sys.coeff.rows; ++r) {
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t c = 0; c < sys.coeff.cols; ++c) row[c] = sys.coeff.at(r, c);
    row[lay.delta] = -sys.rhs[r];
    lp.add_row(row, 0.0);
  }
  for (std::size_t p = 0; p < lay.k; ++p) {
    std::fill(row.begin(), row.end(), 0.0);
    row[lay.alpha + p] = 1.0;
    row[p] = -1.0;
    row[lay.w + p] = 1.0;
    lp.add_row(row, 0.0);
  }
  std::fill(row.begin(), row.end(), 0.0);
  row[lay.gamma] = 1.0;
  row[lay.delta] = -1.0;
  row[lay.z] = 1.0;
  lp.add_row(row, 0.0);
  return lp;
}

ScaledSupportSolution extract_scaled_solution(const ScaledModelLayout& lay,
                                        const LpSolution& sol) {
  ScaledSupportSolution out;
  out.lambda.assign(sol.x.begin(), sol.x.begin() + lay.k);
  out.s_minus.assign(sol.x.begin() + lay.k, sol.x.begin() + lay.k + lay.m);
  out.s_plus.assign(sol.x.begin() + lay.k + lay.m, sol.x.begin() + lay.delta);
  out.delta = sol.x[lay.delta];
  out.alpha.assign(sol.x.begin() + lay.alpha, sol.x.begin() + lay.alpha + lay.k);
  out.gamma = sol.x[lay.gamma];
  out.objective = sol.objective_value;
  return out;
}

void assert_scaled_optimum(const ScaledSupportSolution& sol, const Tolerances& tol,
                           const char* model_name) {
  if (sol.delta <= tol.feasibility_eps) {
    throw TheoremViolation(std::string(model_name) +
                           ": scale factor delta = " + std::to_string(sol.delta) +
                           " vanished at the optimum");
  }
  if (std::fabs(sol.gamma - 1.0) > tol.feasibility_eps) {
    throw TheoremViolation(std::string(model_name) +
                           ": gamma = " + std::to_string(sol.gamma) +
                           " is not 1 at the optimum");
  }
  for (std::size_t p = 0; p < sol.alpha.size(); ++p) {
    const double a = sol.alpha[p];
    if (std::min(a, 1.0 - a) > tol.feasibility_eps) {
      throw TheoremViolation(std::string(model_name) + ": alpha[" + std::to_string(p) +
                             "] = " + std::to_string(a) + " is fractional at the optimum");
    }
  }
}

}  // namespace

ScaledSupportSolution solve_support_relaxed(const OptimalSolutionSystem& sys, const Tolerances& tol) {
  const ScaledModelLayout lay = make_layout(sys);
  const LinearProgram lp = build_scaled_model(sys, lay);
  const LpSolution sol = solve_lp(lp, tol);
  if (sol.status != LpStatus::Optimal) {
    // The zero vector is feasible and the objective is capped at k+1.
    throw SolverError("internal: relaxed support model reported non-optimal status");
  }
  ScaledSupportSolution out = extract_scaled_solution(lay, sol);
  assert_scaled_optimum(out, tol, "relaxed support model");
  return out;
}

ScaledSupportSolution solve_support_binary(const OptimalSolutionSystem& sys, const Tolerances& tol,
                             const MilpOptions& options) {
  const ScaledModelLayout lay = make_layout(sys);
  MilpSpec spec;
  spec.base = build_scaled_model(sys, lay);
  for (std::size_t p = 0; p < lay.k; ++p) spec.binary_indices.push_back(lay.alpha + p);
  spec.binary_indices.push_back(lay.gamma);

  MilpStats stats;
  const LpSolution sol = solve_milp(spec, tol, options, &stats);
  if (sol.status != LpStatus::Optimal) {
    throw SolverError("internal: mixed 0-1 support model reported non-optimal status");
  }
  ScaledSupportSolution out = extract_scaled_solution(lay, sol);
  out.nodes = stats.nodes;
  assert_scaled_optimum(out, tol, "mixed 0-1 support model");
  return out;
}

MaximalElement recover_lambda_max(const OptimalSolutionSystem& sys,
                                  const ScaledSupportSolution& sol, const Tolerances& tol) {
  if (sol.delta <= tol.feasibility_eps) {
    throw TheoremViolation("cannot recover maximal element: delta = " +
                           std::to_string(sol.delta));
  }
  MaximalElement max_el;
  max_el.lambda_max.resize(sol.lambda.size());
  for (std::size_t p = 0; p < sol.lambda.size(); ++p) {
    double v = sol.lambda[p] / sol.delta;
    if (v < 0.0 && v > -tol.feasibility_eps) v = 0.0;
    max_el.lambda_max[p] = v;
    if (v > tol.support_eps) max_el.support.push_back(p);
  }
  max_el.cardinality = max_el.support.size();

  if (!check_membership(sys, max_el.lambda_max, tol)) {
    throw SolverError(
        "numerical fault: recovered maximal element fails membership re-verification");
  }
  return max_el;
}

SplitSupportSolution solve_support_split(const OptimalSolutionSystem& sys, const Tolerances& tol) {
  const std::size_t k = sys.num_intensities();
  const std::size_t m = sys.num_inputs();
  const std::size_t s = sys.num_outputs();

  // Columns: alpha (k, in [0,1]) | beta (k) | s- (m) | s+ (s) | gamma ([0,1]) | nu.
  const std::size_t beta0 = k;
  const std::size_t slack0 = 2 * k;
  const std::size_t gamma_idx = 2 * k + m + s;
  const std::size_t nu_idx = gamma_idx + 1;
  LinearProgram lp(nu_idx + 1);
  for (std::size_t p = 0; p < k; ++p) {
    lp.objective[p] = 1.0;
    lp.set_bounds(p, 0.0, 1.0);
  }
  lp.objective[gamma_idx] = 1.0;
  lp.set_bounds(gamma_idx, 0.0, 1.0);

  std::vector<double> row(lp.num_vars, 0.0);
  for (std::size_t r = 0; r < sys.coeff.rows; ++r) {
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t p = 0; p < k; ++p) {
      row[p] = sys.coeff.at(r, p);
      row[beta0 + p] = sys.coeff.at(r, p);
    }
    for (std::size_t q = 0; q < m + s; ++q) row[slack0 + q] = sys.coeff.at(r, k + q);
    row[gamma_idx] = -sys.rhs[r];
    row[nu_idx] = -sys.rhs[r];
    lp.add_row(row, 0.0);
  }

  const LpSolution sol = solve_lp(lp, tol);
  if (sol.status != LpStatus::Optimal) {
    throw SolverError("internal: one-shot support model reported non-optimal status");
  }

  SplitSupportSolution res;
  res.alpha.assign(sol.x.begin(), sol.x.begin() + k);
  res.beta.assign(sol.x.begin() + beta0, sol.x.begin() + beta0 + k);
  res.s_minus.assign(sol.x.begin() + slack0, sol.x.begin() + slack0 + m);
  res.s_plus.assign(sol.x.begin() + slack0 + m, sol.x.begin() + slack0 + m + s);
  res.gamma = sol.x[gamma_idx];
  res.nu = sol.x[nu_idx];
  res.objective = sol.objective_value;

  if (std::fabs(res.gamma - 1.0) > tol.feasibility_eps) {
    throw TheoremViolation("one-shot support model: gamma = " + std::to_string(res.gamma) +
                           " is not 1 at the optimum");
  }
  for (std::size_t p = 0; p < k; ++p) {
    const double a = res.alpha[p];
    if (std::min(a, 1.0 - a) > tol.feasibility_eps) {
      throw TheoremViolation("one-shot support model: alpha[" + std::to_string(p) +
                             "] = " + std::to_string(a) + " is fractional at the optimum");
    }
  }

  const double denom = 1.0 + res.nu;
  MaximalElement& max_el = res.maximal;
  max_el.lambda_max.resize(k);
  for (std::size_t p = 0; p < k; ++p) {
    double v = (res.alpha[p] + res.beta[p]) / denom;
    if (v < 0.0 && v > -tol.feasibility_eps) v = 0.0;
    max_el.lambda_max[p] = v;
    if (v > tol.support_eps) max_el.support.push_back(p);
  }
  max_el.cardinality = max_el.support.size();
  if (!check_membership(sys, max_el.lambda_max, tol)) {
    throw SolverError(
        "numerical fault: one-shot recovery fails membership re-verification");
  }
  return res;
}

LiftedPoint lift_member(const OptimalSolutionSystem& sys,
                           const std::vector<double>& lambda,
                           const std::vector<double>& s_minus,
                           const std::vector<double>& s_plus, const Tolerances& tol) {
  const std::size_t k = sys.num_intensities();
  const std::size_t m = sys.num_inputs();
  const std::size_t s = sys.num_outputs();
  bool negative = false;
  const std::vector<double> lam = clamped_lambda(sys, lambda, tol, &negative);
  if (negative) throw InputError("lift: intensity vector has negative components");
  if (s_minus.size() != m || s_plus.size() != s) {
    throw InputError("lift: slack vector dimensions do not match the system");
  }

  // The input must already solve the system (with its own slacks).
  for (std::size_t r = 0; r < sys.coeff.rows; ++r) {
    double acc = -sys.rhs[r];
    for (std::size_t p = 0; p < k; ++p) acc += sys.coeff.at(r, p) * lam[p];
    for (std::size_t i = 0; i < m; ++i) acc += sys.coeff.at(r, k + i) * s_minus[i];
    for (std::size_t q = 0; q < s; ++q) acc += sys.coeff.at(r, k + m + q) * s_plus[q];
    if (std::fabs(acc) > row_tolerance(sys, r, tol)) {
      throw InputError("lift: point is not feasible for the optimal-solution system "
                       "(row " + std::to_string(r) + " residual " + std::to_string(acc) + ")");
    }
  }

  LiftedPoint point;
  point.alpha.assign(k, 0.0);
  double scale = 1.0;
  for (std::size_t p = 0; p < k; ++p) {
    if (lam[p] > tol.support_eps) {
      point.alpha[p] = 1.0;
      scale = std::max(scale, 1.0 / lam[p]);
    }
  }
  // The constraint block is homogeneous in (lambda, slacks, delta), so scaling
  // the member up until every supported intensity reaches 1 keeps it feasible
  // while making the binary pattern alpha <= lambda valid.
  point.lambda.resize(k);
  for (std::size_t p = 0; p < k; ++p) point.lambda[p] = scale * lam[p];
  point.s_minus.resize(m);
  for (std::size_t i = 0; i < m; ++i) point.s_minus[i] = scale * s_minus[i];
  point.s_plus.resize(s);
  for (std::size_t q = 0; q < s; ++q) point.s_plus[q] = scale * s_plus[q];
  point.delta = scale;
  point.gamma = 1.0;
  point.objective = 1.0;
  for (double a : point.alpha) point.objective += a;

  for (std::size_t p = 0; p < k; ++p) {
    if (point.alpha[p] > point.lambda[p] + tol.feasibility_eps) {
      throw SolverError("lift: constructed point violates alpha <= lambda");
    }
  }
  return point;
}

GrsResult extract_grs(const Dataset& ds, const EfficientSet& eff,
                      const MaximalElement& maximal, std::size_t o, double rho) {
  GrsResult res;
  res.evaluated_id = ds.record(o).id;
  res.maximal = maximal;
  res.rho = rho;
  for (std::size_t pos : maximal.support) {
    res.reference_ids.push_back(ds.record(eff.indices[pos]).id);
  }
  return res;
}

}  // namespace ramgrs
