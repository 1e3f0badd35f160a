#pragma once

#include <cstddef>
#include <vector>

#include "ramgrs/dataset.hpp"
#include "ramgrs/grs.hpp"

namespace ramgrs {

// Brute-force reference implementations. Deliberately share nothing with the
// support-counting models beyond the plain LP engine, so a bug there cannot
// be mirrored here.

/// Positions p in the efficient set whose intensity can be made positive by
/// some optimal solution: one "maximize lambda_p" LP per position. By
/// convexity their union is exactly the maximal support.
std::vector<std::size_t> oracle_support(const OptimalSolutionSystem& sys,
                                        const Tolerances& tol, unsigned jobs = 1);

/// A member of the optimal intensity set together with its slacks, found by
/// maximizing weight'lambda over the system. Any non-negative weighting works;
/// convex combinations of such members are again members.
struct IntensityMember {
  std::vector<double> lambda;
  std::vector<double> s_minus;
  std::vector<double> s_plus;
};

IntensityMember sample_intensity_member(const OptimalSolutionSystem& sys,
                                const std::vector<double>& weight, const Tolerances& tol);

/// Exhaustive solve of the mixed 0-1 support model: every indicator pattern
/// (2^(|E|+1) of them) is tested with a feasibility LP. Hard |E| <= 16 guard;
/// a truncated oracle would be worse than none.
struct BruteForceResult {
  double objective = 0.0;
  std::vector<int> alpha;  // best pattern
  int gamma = 0;
};

BruteForceResult brute_force_support(const OptimalSolutionSystem& sys,
                                    const Tolerances& tol);

}  // namespace ramgrs
