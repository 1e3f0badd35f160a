#include "ramgrs/pipeline.hpp"

#include <chrono>

#include "ramgrs/errors.hpp"

namespace ramgrs {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

const char* method_name(GrsMethod method) {
  switch (method) {
    case GrsMethod::RelaxedLp:
      return "relaxed-lp";
    case GrsMethod::Milp:
      return "milp";
    case GrsMethod::MehdiloozadLp:
      return "mehdiloozad-lp";
  }
  return "?";
}

GrsMethod parse_method(const std::string& name) {
  if (name == "relaxed-lp") return GrsMethod::RelaxedLp;
  if (name == "milp") return GrsMethod::Milp;
  if (name == "mehdiloozad-lp") return GrsMethod::MehdiloozadLp;
  throw InputError("unknown method '" + name +
                   "' (expected relaxed-lp, milp, or mehdiloozad-lp)");
}

PipelineContext make_context(Dataset ds, const Tolerances& tol, unsigned jobs) {
  tol.validate();
  PipelineContext ctx{std::move(ds), tol, {}, {}, {}, 0.0};
  const auto start = Clock::now();
  ctx.weights = compute_range_weights(ctx.ds);
  ctx.scores = solve_ram_all(ctx.ds, ctx.weights, tol, jobs);
  ctx.efficient = classify_efficient(ctx.ds, ctx.scores, tol);
  ctx.classify_ms = ms_since(start);
  return ctx;
}

UnitEvaluation evaluate_unit(const PipelineContext& ctx, std::size_t o, GrsMethod method) {
  UnitEvaluation eval;
  eval.method = method;

  auto start = Clock::now();
  const OptimalSolutionSystem sys =
      build_system(ctx.ds, ctx.efficient, o, ctx.scores[o], ctx.weights);
  eval.build_ms = ms_since(start);
  eval.diagnostics = sys.diagnostics;

  start = Clock::now();
  MaximalElement maximal;
  double objective = 0.0;
  if (method == GrsMethod::MehdiloozadLp) {
    const SplitSupportSolution res = solve_support_split(sys, ctx.tol);
    eval.solve_ms = ms_since(start);
    start = Clock::now();
    maximal = res.maximal;
    objective = res.objective;
  } else {
    const ScaledSupportSolution sol = method == GrsMethod::Milp ? solve_support_binary(sys, ctx.tol)
                                                          : solve_support_relaxed(sys, ctx.tol);
    eval.solve_ms = ms_since(start);
    start = Clock::now();
    maximal = recover_lambda_max(sys, sol, ctx.tol);
    objective = sol.objective;
  }
  eval.recover_ms = ms_since(start);

  eval.grs = extract_grs(ctx.ds, ctx.efficient, maximal, o, ctx.scores[o].rho);
  eval.objective = objective;
  return eval;
}

}  // namespace ramgrs
