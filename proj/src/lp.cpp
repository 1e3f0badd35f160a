#include "ramgrs/lp.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "ramgrs/errors.hpp"

namespace ramgrs {

void LinearProgram::add_row(const std::vector<double>& coeffs, double b) {
  if (coeffs.size() != num_vars) {
    throw InputError("row has " + std::to_string(coeffs.size()) +
                     " coefficients, expected " + std::to_string(num_vars));
  }
  a.insert(a.end(), coeffs.begin(), coeffs.end());
  rhs.push_back(b);
  ++num_rows;
}

void LinearProgram::validate() const {
  if (objective.size() != num_vars || lower.size() != num_vars ||
      upper.size() != num_vars) {
    throw InputError("objective/bounds length does not match variable count");
  }
  if (rhs.size() != num_rows || a.size() != num_rows * num_vars) {
    throw InputError("constraint matrix dimensions are inconsistent");
  }
  for (std::size_t j = 0; j < num_vars; ++j) {
    if (!std::isfinite(lower[j])) {
      throw InputError("variable " + std::to_string(j) + " needs a finite lower bound");
    }
    if (std::isnan(upper[j]) || upper[j] < lower[j]) {
      throw InputError("variable " + std::to_string(j) + " has empty bound interval");
    }
  }
  for (double v : a) {
    if (!std::isfinite(v)) throw InputError("non-finite constraint coefficient");
  }
  for (double v : rhs) {
    if (!std::isfinite(v)) throw InputError("non-finite right-hand side");
  }
  for (double v : objective) {
    if (!std::isfinite(v)) throw InputError("non-finite objective coefficient");
  }
}

namespace {

constexpr double kPivotEps = 1e-10;   // smallest pivot magnitude accepted
constexpr double kDualEps = 1e-9;     // reduced-cost optimality threshold
constexpr double kDegenEps = 1e-12;   // step sizes below this count as degenerate
constexpr double kRatioTieEps = 1e-9;

enum class VarState : std::uint8_t { Basic, AtLower, AtUpper };

// Tableau-based primal simplex for
//     max c'x  s.t.  A x = b,  l <= x <= u,
// with nonbasic variables resting at either bound. Columns are the structural
// variables followed by one artificial per row; phase 1 drives the artificials
// to zero, phase 2 fixes them at [0,0] and optimizes the real objective.
class Simplex {
 public:
  Simplex(const LinearProgram& lp, const Tolerances& tol)
      : lp_(lp),
        tol_(tol),
        rows_(lp.num_rows),
        structural_(lp.num_vars),
        total_(lp.num_vars + lp.num_rows),
        tab_(rows_ * total_, 0.0),
        cost_(total_, 0.0),
        dj_(total_, 0.0),
        lower_(total_, 0.0),
        upper_(total_, kInfinity),
        xb_(rows_, 0.0),
        basis_(rows_, 0),
        state_(total_, VarState::AtLower) {
    for (std::size_t j = 0; j < structural_; ++j) {
      lower_[j] = lp.lower[j];
      upper_[j] = lp.upper[j];
    }
    // Hard safety net; Bland's rule should terminate long before this.
    iteration_cap_ = 100000 + 200 * static_cast<std::uint64_t>(rows_ + total_);
  }

  LpSolution run() {
    setup_phase1();
    if (rows_ > 0) {
      const LoopResult r1 = optimize();
      if (r1 == LoopResult::Unbounded) {
        // The phase-1 objective is bounded above by zero, so an unbounded ray
        // can only come from numerical corruption.
        throw SolverError("simplex breakdown: unbounded phase-1 objective");
      }
      double infeasibility = 0.0;
      for (std::size_t j = structural_; j < total_; ++j) infeasibility += value_of(j);
      if (infeasibility > tol_.feasibility_eps) {
        LpSolution sol;
        sol.status = LpStatus::Infeasible;
        sol.iterations = iterations_;
        return sol;
      }
    }

    setup_phase2();
    const LoopResult r2 = optimize();
    if (r2 == LoopResult::Unbounded) {
      LpSolution sol;
      sol.status = LpStatus::Unbounded;
      sol.iterations = iterations_;
      return sol;
    }
    return extract();
  }

 private:
  enum class LoopResult { Optimal, Unbounded };

  double value_of(std::size_t j) const {
    switch (state_[j]) {
      case VarState::AtLower:
        return lower_[j];
      case VarState::AtUpper:
        return upper_[j];
      case VarState::Basic:
        for (std::size_t i = 0; i < rows_; ++i)
          if (basis_[i] == static_cast<int>(j)) return xb_[i];
        return 0.0;  // unreachable
    }
    return 0.0;
  }

  void setup_phase1() {
    // Structural variables start at their lower bounds; one artificial per
    // row absorbs the residual with a +/-1 coefficient so its value is >= 0.
    std::vector<double> residual(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      double acc = lp_.rhs[i];
      for (std::size_t j = 0; j < structural_; ++j) acc -= lp_.coef(i, j) * lower_[j];
      residual[i] = acc;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      const double sign = residual[i] >= 0.0 ? 1.0 : -1.0;
      // Row i of B^-1 A with B = diag(sign): the original row scaled by sign.
      for (std::size_t j = 0; j < structural_; ++j)
        tab_[i * total_ + j] = sign * lp_.coef(i, j);
      tab_[i * total_ + structural_ + i] = 1.0;
      basis_[i] = static_cast<int>(structural_ + i);
      state_[structural_ + i] = VarState::Basic;
      xb_[i] = sign * residual[i];
    }
    for (std::size_t j = 0; j < structural_; ++j) cost_[j] = 0.0;
    for (std::size_t j = structural_; j < total_; ++j) cost_[j] = -1.0;
    price_full();
    bland_ = false;
    degenerate_run_ = 0;
  }

  void setup_phase2() {
    // Artificials are pinned at zero from here on; redundant rows keep theirs
    // basic at value ~0, which is harmless.
    for (std::size_t j = structural_; j < total_; ++j) {
      lower_[j] = 0.0;
      upper_[j] = 0.0;
      if (state_[j] == VarState::AtUpper) state_[j] = VarState::AtLower;
    }
    for (std::size_t j = 0; j < structural_; ++j) cost_[j] = lp_.objective[j];
    for (std::size_t j = structural_; j < total_; ++j) cost_[j] = 0.0;
    price_full();
    bland_ = false;
    degenerate_run_ = 0;
  }

  void price_full() {
    for (std::size_t j = 0; j < total_; ++j) {
      double d = cost_[j];
      for (std::size_t i = 0; i < rows_; ++i) {
        const double cb = cost_[basis_[i]];
        if (cb != 0.0) d -= cb * tab_[i * total_ + j];
      }
      dj_[j] = d;
    }
  }

  bool eligible(std::size_t j) const {
    if (state_[j] == VarState::Basic) return false;
    if (lower_[j] == upper_[j]) return false;  // fixed variables never enter
    if (state_[j] == VarState::AtLower) return dj_[j] > kDualEps;
    return dj_[j] < -kDualEps;
  }

  // Entering column: Dantzig (largest |reduced cost|) unless Bland mode.
  int choose_entering() const {
    int best = -1;
    double best_mag = 0.0;
    for (std::size_t j = 0; j < total_; ++j) {
      if (!eligible(j)) continue;
      if (bland_) return static_cast<int>(j);
      const double mag = std::fabs(dj_[j]);
      if (mag > best_mag) {
        best_mag = mag;
        best = static_cast<int>(j);
      }
    }
    return best;
  }

  LoopResult optimize() {
    const std::uint64_t bland_trigger = 5 * (rows_ + total_);
    for (;;) {
      const int enter = choose_entering();
      if (enter < 0) return LoopResult::Optimal;
      const std::size_t j = static_cast<std::size_t>(enter);
      const double sigma = state_[j] == VarState::AtLower ? 1.0 : -1.0;

      // Ratio test: the entering variable moves by t >= 0 in direction sigma;
      // basic variable i changes at rate -sigma * tab(i, j).
      double best_t = upper_[j] - lower_[j];  // bound-flip limit, may be +inf
      int leave_row = -1;
      VarState leave_state = VarState::AtLower;
      double leave_pivot_mag = 0.0;
      for (std::size_t i = 0; i < rows_; ++i) {
        const double w = tab_[i * total_ + j];
        const double rate = sigma * w;
        double limit;
        VarState hit;
        if (rate > kPivotEps) {
          limit = (xb_[i] - lower_[basis_[i]]) / rate;
          hit = VarState::AtLower;
        } else if (rate < -kPivotEps && upper_[basis_[i]] < kInfinity) {
          limit = (upper_[basis_[i]] - xb_[i]) / (-rate);
          hit = VarState::AtUpper;
        } else {
          continue;
        }
        if (limit < 0.0) limit = 0.0;  // roundoff guard

        bool take = false;
        if (limit < best_t - kRatioTieEps) {
          take = true;
        } else if (limit <= best_t + kRatioTieEps && leave_row >= 0) {
          // Tie: Bland picks the smallest variable index; otherwise prefer the
          // largest pivot magnitude for stability.
          if (bland_) {
            take = basis_[i] < basis_[leave_row];
          } else {
            take = std::fabs(w) > leave_pivot_mag;
          }
        } else if (limit <= best_t + kRatioTieEps && leave_row < 0 &&
                   limit <= best_t) {
          take = true;
        }
        if (take) {
          best_t = limit < best_t ? limit : best_t;
          leave_row = static_cast<int>(i);
          leave_state = hit;
          leave_pivot_mag = std::fabs(w);
        }
      }

      if (leave_row < 0 && !(best_t < kInfinity)) return LoopResult::Unbounded;

      const double t = best_t;
      if (++iterations_ > iteration_cap_) {
        throw SolverError("simplex iteration limit exceeded");
      }
      if (t <= kDegenEps) {
        if (++degenerate_run_ > bland_trigger) bland_ = true;
      } else {
        degenerate_run_ = 0;
      }

      if (leave_row < 0) {
        // Bound flip: entering jumps to its other bound, basis unchanged.
        for (std::size_t i = 0; i < rows_; ++i)
          xb_[i] -= sigma * t * tab_[i * total_ + j];
        state_[j] = state_[j] == VarState::AtLower ? VarState::AtUpper : VarState::AtLower;
        continue;
      }

      pivot(static_cast<std::size_t>(leave_row), j, sigma, t, leave_state);
    }
  }

  void pivot(std::size_t r, std::size_t j, double sigma, double t,
             VarState leave_state) {
    const double enter_value =
        (state_[j] == VarState::AtLower ? lower_[j] : upper_[j]) + sigma * t;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i != r) xb_[i] -= sigma * t * tab_[i * total_ + j];
    }
    const int leaving = basis_[r];
    state_[leaving] = leave_state;
    basis_[r] = static_cast<int>(j);
    state_[j] = VarState::Basic;
    xb_[r] = enter_value;

    // Gauss-Jordan elimination on column j.
    double* row_r = &tab_[r * total_];
    const double piv = row_r[j];
    const double inv = 1.0 / piv;
    for (std::size_t k = 0; k < total_; ++k) row_r[k] *= inv;
    row_r[j] = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      double* row_i = &tab_[i * total_];
      const double f = row_i[j];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < total_; ++k) row_i[k] -= f * row_r[k];
      row_i[j] = 0.0;
    }
    const double fd = dj_[j];
    if (fd != 0.0) {
      for (std::size_t k = 0; k < total_; ++k) dj_[k] -= fd * row_r[k];
      dj_[j] = 0.0;
    }
  }

  LpSolution extract() const {
    LpSolution sol;
    sol.status = LpStatus::Optimal;
    sol.iterations = iterations_;
    sol.x.assign(structural_, 0.0);
    for (std::size_t j = 0; j < structural_; ++j) {
      double v = value_of(j);
      // Snap to bounds so downstream support extraction is stable.
      if (v - lower_[j] <= tol_.feasibility_eps && v - lower_[j] >= -tol_.feasibility_eps) {
        v = lower_[j];
      } else if (upper_[j] < kInfinity && std::fabs(upper_[j] - v) <= tol_.feasibility_eps) {
        v = upper_[j];
      }
      sol.x[j] = v;
    }

    double obj = 0.0;
    for (std::size_t j = 0; j < structural_; ++j) obj += lp_.objective[j] * sol.x[j];
    sol.objective_value = obj;

    // Residual guard, relative to row scale: a violation here means the
    // pivoting degraded, which must surface as a solver failure rather than a
    // silently wrong "Optimal".
    for (std::size_t i = 0; i < rows_; ++i) {
      double acc = -lp_.rhs[i];
      double scale = std::fabs(lp_.rhs[i]);
      for (std::size_t j = 0; j < structural_; ++j) {
        const double term = lp_.coef(i, j) * sol.x[j];
        acc += term;
        scale += std::fabs(term);
      }
      if (std::fabs(acc) > tol_.feasibility_eps * std::max(1.0, scale)) {
        throw SolverError("simplex breakdown: residual " + std::to_string(std::fabs(acc)) +
                          " in row " + std::to_string(i));
      }
    }
    return sol;
  }

  const LinearProgram& lp_;
  const Tolerances& tol_;
  std::size_t rows_, structural_, total_;
  std::vector<double> tab_;
  std::vector<double> cost_;
  std::vector<double> dj_;
  std::vector<double> lower_, upper_;
  std::vector<double> xb_;
  std::vector<int> basis_;
  std::vector<VarState> state_;
  bool bland_ = false;
  std::uint64_t degenerate_run_ = 0;
  std::uint64_t iterations_ = 0;
  std::uint64_t iteration_cap_ = 0;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const Tolerances& tol) {
  lp.validate();
  tol.validate();
  Simplex solver(lp, tol);
  return solver.run();
}

}  // namespace ramgrs
