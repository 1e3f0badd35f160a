#include <cmath>
#include <optional>
#include <random>

#include "doctest.h"
#include "ramgrs/errors.hpp"
#include "ramgrs/milp.hpp"

using namespace ramgrs;

namespace {

const Tolerances kTol = default_tolerances();

// Exhaustive oracle: fix every binary pattern and LP-solve the continuous
// residual problem.
std::optional<double> enumerate_milp(const MilpSpec& spec, const Tolerances& tol) {
  std::optional<double> best;
  const std::size_t k = spec.binary_indices.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    LinearProgram lp = spec.base;
    for (std::size_t p = 0; p < k; ++p) {
      const double v = (mask >> p) & 1 ? 1.0 : 0.0;
      lp.lower[spec.binary_indices[p]] = v;
      lp.upper[spec.binary_indices[p]] = v;
    }
    const LpSolution sol = solve_lp(lp, tol);
    if (sol.status != LpStatus::Optimal) continue;
    if (!best || sol.objective_value > *best) best = sol.objective_value;
  }
  return best;
}

}  // namespace

TEST_CASE("rounding-down forced") {
  // max a subject to a + u = 0.4, a binary.
  MilpSpec spec;
  spec.base = LinearProgram(2);
  spec.base.objective = {1.0, 0.0};
  spec.base.set_bounds(0, 0.0, 1.0);
  spec.base.add_row({1.0, 1.0}, 0.4);
  spec.binary_indices = {0};
  const LpSolution sol = solve_milp(spec, kTol);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.x[0] == 0.0);
  CHECK(sol.objective_value == doctest::Approx(0.0));
}

TEST_CASE("knapsack with capacity 1.5") {
  MilpSpec spec;
  spec.base = LinearProgram(3);
  spec.base.objective = {1.0, 1.0, 0.0};
  spec.base.set_bounds(0, 0.0, 1.0);
  spec.base.set_bounds(1, 0.0, 1.0);
  spec.base.add_row({1.0, 1.0, 1.0}, 1.5);
  spec.binary_indices = {0, 1};
  const LpSolution sol = solve_milp(spec, kTol);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective_value == doctest::Approx(1.0));
  CHECK(sol.x[0] + sol.x[1] == doctest::Approx(1.0));
  CHECK((sol.x[0] == 0.0 || sol.x[0] == 1.0));
}

TEST_CASE("infeasible binary system") {
  // a1 + a2 = 0.5 has no binary solution.
  MilpSpec spec;
  spec.base = LinearProgram(2);
  spec.base.set_bounds(0, 0.0, 1.0);
  spec.base.set_bounds(1, 0.0, 1.0);
  spec.base.add_row({1.0, 1.0}, 0.5);
  spec.binary_indices = {0, 1};
  CHECK(solve_milp(spec, kTol).status == LpStatus::Infeasible);
}

TEST_CASE("binary indices must have unit bounds") {
  MilpSpec spec;
  spec.base = LinearProgram(1);
  spec.base.set_bounds(0, 0.0, 2.0);
  spec.binary_indices = {0};
  CHECK_THROWS_AS(solve_milp(spec, kTol), InputError);
  spec.binary_indices = {3};
  CHECK_THROWS_AS(solve_milp(spec, kTol), InputError);
}

TEST_CASE("node limit surfaces as a solver error") {
  MilpSpec spec;
  spec.base = LinearProgram(3);
  spec.base.objective = {1.0, 1.0, 0.0};
  spec.base.set_bounds(0, 0.0, 1.0);
  spec.base.set_bounds(1, 0.0, 1.0);
  spec.base.add_row({1.0, 1.0, 1.0}, 1.5);
  spec.binary_indices = {0, 1};
  MilpOptions options;
  options.node_limit = 1;
  CHECK_THROWS_AS(solve_milp(spec, kTol, options), SolverError);
}

TEST_CASE("random binary programs match exhaustive enumeration") {
  std::mt19937_64 rng(99);
  auto coin = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t nb = static_cast<std::size_t>(coin(2, 6));
    const std::size_t nc = static_cast<std::size_t>(coin(0, 2));
    const std::size_t rows = static_cast<std::size_t>(coin(1, 3));
    // Layout: binaries, continuous (bounded), one slack per row.
    MilpSpec spec;
    spec.base = LinearProgram(nb + nc + rows);
    for (std::size_t j = 0; j < nb; ++j) {
      spec.base.set_bounds(j, 0.0, 1.0);
      spec.base.objective[j] = coin(-5, 5);
      spec.binary_indices.push_back(j);
    }
    for (std::size_t j = 0; j < nc; ++j) {
      spec.base.set_bounds(nb + j, 0.0, coin(1, 3));
      spec.base.objective[nb + j] = coin(-4, 4);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      std::vector<double> row(spec.base.num_vars, 0.0);
      for (std::size_t j = 0; j < nb + nc; ++j) row[j] = coin(-4, 4);
      row[nb + nc + i] = 1.0;  // slack makes the row an inequality
      spec.base.add_row(row, coin(0, 8));  // rhs >= 0 keeps x = 0 feasible
    }

    const LpSolution sol = solve_milp(spec, kTol);
    const auto oracle = enumerate_milp(spec, kTol);
    REQUIRE(oracle.has_value());
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective_value == doctest::Approx(*oracle).epsilon(1e-9));
    for (std::size_t j : spec.binary_indices) {
      CHECK((sol.x[j] == 0.0 || sol.x[j] == 1.0));
    }
  }
}
