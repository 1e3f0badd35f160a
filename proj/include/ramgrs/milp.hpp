#pragma once

#include <cstdint>
#include <vector>

#include "ramgrs/lp.hpp"

namespace ramgrs {

/// A LinearProgram plus the set of variables restricted to {0,1}. Every
/// binary index must carry bounds [0,1] in the base program.
struct MilpSpec {
  LinearProgram base;
  std::vector<std::size_t> binary_indices;
};

struct MilpOptions {
  std::uint64_t node_limit = 1'000'000;
};

struct MilpStats {
  std::uint64_t nodes = 0;
};

/// Depth-first branch and bound: most-fractional binary first, children
/// explored rounded-value first, pruning against the best known incumbent.
/// Optimal solutions have every binary component exactly 0 or 1.
LpSolution solve_milp(const MilpSpec& spec, const Tolerances& tol,
                      const MilpOptions& options = {}, MilpStats* stats = nullptr);

}  // namespace ramgrs
