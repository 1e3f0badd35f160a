#pragma once

#include <string>
#include <vector>

#include "ramgrs/dataset.hpp"
#include "ramgrs/grs.hpp"
#include "ramgrs/ram.hpp"

namespace ramgrs {

enum class GrsMethod { RelaxedLp, Milp, MehdiloozadLp };

const char* method_name(GrsMethod method);
GrsMethod parse_method(const std::string& name);

/// Everything shared across per-unit evaluations: the validated data, range
/// weights, all scores, and the efficient set. Immutable once built, so units
/// can be evaluated concurrently against it.
struct PipelineContext {
  Dataset ds;
  Tolerances tol;
  RangeWeights weights;
  std::vector<RamResult> scores;
  EfficientSet efficient;
  double classify_ms = 0.0;
};

PipelineContext make_context(Dataset ds, const Tolerances& tol, unsigned jobs = 1);

struct UnitEvaluation {
  GrsResult grs;
  GrsMethod method = GrsMethod::RelaxedLp;
  double objective = 0.0;  // support-model optimum, |support| + 1
  std::vector<std::string> diagnostics;
  double build_ms = 0.0;
  double solve_ms = 0.0;
  double recover_ms = 0.0;
};

/// Score -> system -> support model (chosen method) -> recovery -> GRS for a
/// single unit.
UnitEvaluation evaluate_unit(const PipelineContext& ctx, std::size_t o, GrsMethod method);

}  // namespace ramgrs
