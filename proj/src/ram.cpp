#include "ramgrs/ram.hpp"

#include <algorithm>
#include <string>

#include "ramgrs/errors.hpp"
#include "ramgrs/util.hpp"

namespace ramgrs {

RangeWeights compute_range_weights(const Dataset& ds) {
  const std::size_t m = ds.num_inputs();
  const std::size_t s = ds.num_outputs();
  RangeWeights w;
  w.r_minus.resize(m);
  w.r_plus.resize(s);
  for (std::size_t i = 0; i < m; ++i) {
    double lo = ds.input(i, 0), hi = ds.input(i, 0);
    for (std::size_t j = 1; j < ds.n(); ++j) {
      lo = std::min(lo, ds.input(i, j));
      hi = std::max(hi, ds.input(i, j));
    }
    const double range = hi - lo;
    if (range == 0.0) {
      w.r_minus[i] = 0.0;
      w.degenerate_inputs.push_back(i);
    } else {
      w.r_minus[i] = 1.0 / range;
    }
  }
  for (std::size_t r = 0; r < s; ++r) {
    double lo = ds.output(r, 0), hi = ds.output(r, 0);
    for (std::size_t j = 1; j < ds.n(); ++j) {
      lo = std::min(lo, ds.output(r, j));
      hi = std::max(hi, ds.output(r, j));
    }
    const double range = hi - lo;
    if (range == 0.0) {
      w.r_plus[r] = 0.0;
      w.degenerate_outputs.push_back(r);
    } else {
      w.r_plus[r] = 1.0 / range;
    }
  }
  return w;
}

RamResult solve_ram(const Dataset& ds, std::size_t o, const RangeWeights& w,
                    const Tolerances& tol) {
  const std::size_t n = ds.n();
  const std::size_t m = ds.num_inputs();
  const std::size_t s = ds.num_outputs();
  if (o >= n) throw InputError("DMU index " + std::to_string(o) + " out of range");

  // Variables: lambda (n), s- (m), s+ (s), all >= 0.
  // Maximize the weighted slack sum; rho = 1 - optimum/(m+s).
  LinearProgram lp(n + m + s);
  for (std::size_t i = 0; i < m; ++i) lp.objective[n + i] = w.r_minus[i];
  for (std::size_t r = 0; r < s; ++r) lp.objective[n + m + r] = w.r_plus[r];

  std::vector<double> row(lp.num_vars, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) row[j] = ds.input(i, j);
    row[n + i] = 1.0;
    lp.add_row(row, ds.input(i, o));
  }
  for (std::size_t r = 0; r < s; ++r) {
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) row[j] = ds.output(r, j);
    row[n + m + r] = -1.0;
    lp.add_row(row, ds.output(r, o));
  }
  std::fill(row.begin(), row.end(), 0.0);
  for (std::size_t j = 0; j < n; ++j) row[j] = 1.0;
  lp.add_row(row, 1.0);

  const LpSolution sol = solve_lp(lp, tol);
  if (sol.status != LpStatus::Optimal) {
    // lambda = e_o is always feasible and the weighted slack sum is bounded,
    // so any other status is an engine fault.
    throw SolverError("internal: RAM model for DMU '" + ds.record(o).id +
                      "' reported " +
                      (sol.status == LpStatus::Infeasible ? "infeasible" : "unbounded"));
  }

  RamResult res;
  res.lambda.assign(sol.x.begin(), sol.x.begin() + n);
  res.s_minus.assign(sol.x.begin() + n, sol.x.begin() + n + m);
  res.s_plus.assign(sol.x.begin() + n + m, sol.x.end());
  res.weighted_slack = std::max(0.0, sol.objective_value);
  res.rho = std::clamp(1.0 - res.weighted_slack / static_cast<double>(m + s), 0.0, 1.0);
  return res;
}

std::vector<RamResult> solve_ram_all(const Dataset& ds, const RangeWeights& w,
                                     const Tolerances& tol, unsigned jobs) {
  std::vector<RamResult> results(ds.n());
  parallel_for(ds.n(), jobs, [&](std::size_t j) { results[j] = solve_ram(ds, j, w, tol); });
  return results;
}

EfficientSet classify_efficient(const Dataset& ds, const std::vector<RamResult>& results,
                                const Tolerances& tol) {
  EfficientSet eff;
  for (std::size_t j = 0; j < results.size(); ++j) {
    if (results[j].rho >= 1.0 - tol.efficiency_eps) eff.indices.push_back(j);
  }
  if (eff.indices.empty()) {
    // Impossible for correct scores: some unit always attains zero weighted
    // slack. An empty set means the engine broke upstream.
    throw SolverError("internal: no unit classified efficient");
  }
  const std::size_t m = ds.num_inputs();
  const std::size_t s = ds.num_outputs();
  eff.x_e = DenseMatrix(m, eff.indices.size());
  eff.y_e = DenseMatrix(s, eff.indices.size());
  for (std::size_t p = 0; p < eff.indices.size(); ++p) {
    const std::size_t j = eff.indices[p];
    for (std::size_t i = 0; i < m; ++i) eff.x_e.at(i, p) = ds.input(i, j);
    for (std::size_t r = 0; r < s; ++r) eff.y_e.at(r, p) = ds.output(r, j);
  }
  return eff;
}

EfficientSet classify_efficient(const Dataset& ds, const RangeWeights& w,
                                const Tolerances& tol, unsigned jobs) {
  return classify_efficient(ds, solve_ram_all(ds, w, tol, jobs), tol);
}

}  // namespace ramgrs
