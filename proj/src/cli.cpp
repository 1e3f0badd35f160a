#include "ramgrs/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ramgrs/errors.hpp"
#include "ramgrs/oracle.hpp"
#include "ramgrs/pipeline.hpp"
#include "ramgrs/synth.hpp"
#include "ramgrs/util.hpp"

namespace ramgrs {

namespace {

using ordered_json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

ordered_json tolerances_json(const Tolerances& tol) {
  ordered_json j;
  j["feasibility_eps"] = round12(tol.feasibility_eps);
  j["support_eps"] = round12(tol.support_eps);
  j["efficiency_eps"] = round12(tol.efficiency_eps);
  j["objective_eps"] = round12(tol.objective_eps);
  return j;
}

ordered_json unit_report(const PipelineContext& ctx, const UnitEvaluation& eval,
                         bool with_timings) {
  ordered_json rec;
  rec["dmu"] = eval.grs.evaluated_id;
  rec["rho"] = round12(eval.grs.rho);
  rec["method"] = method_name(eval.method);
  ordered_json lambda = ordered_json::object();
  for (std::size_t p = 0; p < ctx.efficient.size(); ++p) {
    const std::string& id = ctx.ds.record(ctx.efficient.indices[p]).id;
    lambda[id] = round12(eval.grs.maximal.lambda_max[p]);
  }
  rec["lambda_max"] = std::move(lambda);
  rec["grs"] = eval.grs.reference_ids;
  if (with_timings) {
    ordered_json t;
    t["classify"] = round12(ctx.classify_ms);
    t["build"] = round12(eval.build_ms);
    t["solve"] = round12(eval.solve_ms);
    t["recover"] = round12(eval.recover_ms);
    rec["timings_ms"] = std::move(t);
  }
  rec["tolerances"] = tolerances_json(ctx.tol);
  return rec;
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw InputError("cannot open output file '" + out_path + "'");
  f << text;
}

struct CommonOptions {
  std::string data_path;
  std::string dmu = "all";
  std::string method = "relaxed-lp";
  std::string out_path;
  double tol_feas = 0.0;     // 0 = keep default
  double tol_support = 0.0;
  double tol_eff = 0.0;
  unsigned jobs = 1;
  bool no_timings = false;
};

Tolerances resolve_tolerances(const CommonOptions& opt) {
  Tolerances tol = default_tolerances();
  if (opt.tol_feas != 0.0) tol.feasibility_eps = opt.tol_feas;
  if (opt.tol_support != 0.0) tol.support_eps = opt.tol_support;
  if (opt.tol_eff != 0.0) tol.efficiency_eps = opt.tol_eff;
  tol.validate();
  return tol;
}

std::vector<std::size_t> resolve_units(const Dataset& ds, const std::string& dmu) {
  std::vector<std::size_t> units;
  if (dmu == "all") {
    for (std::size_t j = 0; j < ds.n(); ++j) units.push_back(j);
  } else {
    const auto idx = ds.index_of(dmu);
    if (!idx) throw InputError("unknown DMU id " + dmu);
    units.push_back(*idx);
  }
  return units;
}

int cmd_evaluate(const CommonOptions& opt, std::ostream& out, std::ostream& err) {
  const Tolerances tol = resolve_tolerances(opt);
  PipelineContext ctx = make_context(load_dataset_file(opt.data_path), tol, opt.jobs);
  const std::vector<std::size_t> units = resolve_units(ctx.ds, opt.dmu);
  const GrsMethod method = parse_method(opt.method);

  std::vector<UnitEvaluation> evals(units.size());
  parallel_for(units.size(), opt.jobs,
               [&](std::size_t i) { evals[i] = evaluate_unit(ctx, units[i], method); });

  ordered_json report = ordered_json::array();
  for (const UnitEvaluation& eval : evals) {
    for (const std::string& d : eval.diagnostics) err << "warning: " << d << "\n";
    report.push_back(unit_report(ctx, eval, !opt.no_timings));
  }
  emit(report.dump(2) + "\n", opt.out_path, out);
  return 0;
}

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

Check make_check(const std::string& name, bool pass, const std::string& detail) {
  return Check{name, pass, detail};
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

int cmd_verify(const CommonOptions& opt, std::ostream& out, std::ostream& err) {
  const Tolerances tol = resolve_tolerances(opt);
  PipelineContext ctx = make_context(load_dataset_file(opt.data_path), tol, opt.jobs);
  const std::vector<std::size_t> units = resolve_units(ctx.ds, opt.dmu);

  if (ctx.efficient.size() > 16) {
    throw InputError("verification needs the brute-force oracle, which is limited to "
                     "16 efficient units (this dataset has " +
                     std::to_string(ctx.efficient.size()) +
                     "); verify a smaller dataset or use 'evaluate'");
  }

  ordered_json report;
  report["dataset"] = opt.data_path;
  report["tolerances"] = tolerances_json(ctx.tol);
  ordered_json unit_reports = ordered_json::array();
  bool all_pass = true;

  for (std::size_t o : units) {
    std::vector<Check> checks;
    double max_residual = 0.0;
    const OptimalSolutionSystem sys =
        build_system(ctx.ds, ctx.efficient, o, ctx.scores[o], ctx.weights);
    for (const std::string& d : sys.diagnostics) err << "warning: " << d << "\n";

    try {
      const ScaledSupportSolution relaxed = solve_support_relaxed(sys, tol);
      const ScaledSupportSolution binary = solve_support_binary(sys, tol);
      const SplitSupportSolution split = solve_support_split(sys, tol);
      const BruteForceResult bf = brute_force_support(sys, tol);

      checks.push_back(make_check(
          "objective relaxed-vs-milp",
          std::fabs(relaxed.objective - binary.objective) <= tol.objective_eps,
          "|" + fmt(relaxed.objective) + " - " + fmt(binary.objective) + "|"));
      checks.push_back(make_check(
          "objective relaxed-vs-oneshot",
          std::fabs(relaxed.objective - split.objective) <= tol.objective_eps,
          "|" + fmt(relaxed.objective) + " - " + fmt(split.objective) + "|"));
      checks.push_back(make_check(
          "objective relaxed-vs-bruteforce",
          std::fabs(relaxed.objective - bf.objective) <= tol.objective_eps,
          "|" + fmt(relaxed.objective) + " - " + fmt(bf.objective) + "|"));

      bool integral = std::fabs(relaxed.gamma - 1.0) <= tol.feasibility_eps;
      for (double a : relaxed.alpha) integral = integral && std::min(a, 1.0 - a) <= tol.feasibility_eps;
      checks.push_back(make_check("relaxed optimum integral", integral,
                                  "gamma=" + fmt(relaxed.gamma)));

      const MaximalElement rec10 = recover_lambda_max(sys, relaxed, tol);
      const MaximalElement rec8 = recover_lambda_max(sys, binary, tol);
      const std::vector<std::size_t> oracle = oracle_support(sys, tol, opt.jobs);
      const bool supports_equal = rec10.support == rec8.support &&
                                  rec10.support == split.maximal.support &&
                                  rec10.support == oracle;
      checks.push_back(make_check("support equality (relaxed/milp/oneshot/oracle)",
                                  supports_equal,
                                  "|support|=" + std::to_string(rec10.support.size())));
      checks.push_back(make_check(
          "oracle support vs brute-force objective",
          static_cast<double>(oracle.size()) + 1.0 == bf.objective,
          fmt(static_cast<double>(oracle.size())) + "+1 vs " + fmt(bf.objective)));

      const MembershipReport mem = membership_residual(sys, rec10.lambda_max, tol);
      max_residual = mem.max_residual;
      checks.push_back(make_check("maximal element membership", mem.member,
                                  "max residual " + fmt(mem.max_residual)));
      double lambda_sum = 0.0;
      for (double v : rec10.lambda_max) lambda_sum += v;
      checks.push_back(make_check("maximal element sums to 1",
                                  std::fabs(lambda_sum - 1.0) <= tol.feasibility_eps,
                                  "sum=" + fmt(lambda_sum)));

      // Lifting: every per-unit maximizer is a member; its lifted indicator
      // objective may not exceed the mixed 0-1 optimum.
      bool lift_ok = true;
      for (std::size_t p = 0; p < sys.num_intensities() && lift_ok; ++p) {
        std::vector<double> w(sys.num_intensities(), 0.0);
        w[p] = 1.0;
        const IntensityMember member = sample_intensity_member(sys, w, tol);
        const LiftedPoint lifted =
            lift_member(sys, member.lambda, member.s_minus, member.s_plus, tol);
        lift_ok = lifted.objective <= binary.objective + tol.objective_eps;
      }
      checks.push_back(make_check("lifted members bounded by optimum", lift_ok, ""));
    } catch (const TheoremViolation& ex) {
      checks.push_back(make_check("theorem consistency", false, ex.what()));
    }

    ordered_json ju;
    ju["dmu"] = ctx.ds.record(o).id;
    ordered_json jchecks = ordered_json::array();
    for (const Check& c : checks) {
      all_pass = all_pass && c.pass;
      ordered_json jc;
      jc["check"] = c.name;
      jc["pass"] = c.pass;
      if (!c.detail.empty()) jc["detail"] = c.detail;
      jchecks.push_back(std::move(jc));
    }
    ju["checks"] = std::move(jchecks);
    ju["max_residual"] = round12(max_residual);
    unit_reports.push_back(std::move(ju));
  }

  report["units"] = std::move(unit_reports);
  report["all_pass"] = all_pass;
  emit(report.dump(2) + "\n", opt.out_path, out);
  return all_pass ? 0 : 3;
}

struct BenchOptions {
  std::size_t n = 30, m = 2, s = 2;
  unsigned reps = 3;
  std::uint64_t seed = 1;
};

int cmd_bench(const CommonOptions& opt, const BenchOptions& bench, std::ostream& out,
              std::ostream& /*err*/) {
  if (bench.reps < 1) throw InputError("reps must be >= 1");
  if (bench.n < 1 || bench.m < 1 || bench.s < 1) {
    throw InputError("bench dimensions must be >= 1");
  }
  const Tolerances tol = resolve_tolerances(opt);

  std::ostringstream csv;
  csv << "rep,n,m,s,n_efficient,relaxed_total_ms,milp_total_ms,"
         "relaxed_median_ms,milp_median_ms,objective_agreement\n";
  for (unsigned rep = 0; rep < bench.reps; ++rep) {
    const Dataset ds = generate_uniform_dataset(bench.n, bench.m, bench.s,
                                                bench.seed + rep);
    const PipelineContext ctx = make_context(ds, tol, opt.jobs);
    std::vector<double> relaxed_ms, milp_ms;
    bool agreement = true;
    for (std::size_t o = 0; o < ctx.ds.n(); ++o) {
      const OptimalSolutionSystem sys =
          build_system(ctx.ds, ctx.efficient, o, ctx.scores[o], ctx.weights);
      auto start = Clock::now();
      const ScaledSupportSolution relaxed = solve_support_relaxed(sys, tol);
      relaxed_ms.push_back(ms_since(start));
      start = Clock::now();
      const ScaledSupportSolution binary = solve_support_binary(sys, tol);
      milp_ms.push_back(ms_since(start));
      agreement = agreement && std::fabs(relaxed.objective - binary.objective) <= tol.objective_eps;
    }
    auto total = [](const std::vector<double>& v) {
      double acc = 0.0;
      for (double x : v) acc += x;
      return acc;
    };
    auto median = [](std::vector<double> v) {
      std::sort(v.begin(), v.end());
      const std::size_t h = v.size() / 2;
      return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
    };
    csv << (rep + 1) << "," << bench.n << "," << bench.m << "," << bench.s << ","
        << ctx.efficient.size() << "," << format_double_exact(round12(total(relaxed_ms)))
        << "," << format_double_exact(round12(total(milp_ms))) << ","
        << format_double_exact(round12(median(relaxed_ms))) << ","
        << format_double_exact(round12(median(milp_ms))) << ","
        << (agreement ? "true" : "false") << "\n";
  }
  emit(csv.str(), opt.out_path, out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"RAM efficiency scores and global reference sets"};
  app.require_subcommand(1);

  CommonOptions opt;
  BenchOptions bench;

  auto add_tolerance_flags = [&](CLI::App* cmd) {
    cmd->add_option("--tol-feas", opt.tol_feas, "feasibility tolerance (default 1e-7)");
    cmd->add_option("--tol-support", opt.tol_support,
                    "positive-intensity threshold (default 1e-7)");
    cmd->add_option("--tol-eff", opt.tol_eff, "efficiency threshold (default 1e-6)");
  };

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "score units and identify their global reference sets");
  evaluate->add_option("--data", opt.data_path, "dataset CSV")->required();
  evaluate->add_option("--dmu", opt.dmu, "unit id or 'all' (default all)");
  evaluate->add_option("--method", opt.method,
                       "relaxed-lp | milp | mehdiloozad-lp (default relaxed-lp)");
  evaluate->add_option("--out", opt.out_path, "write the report here instead of stdout");
  evaluate->add_option("--jobs", opt.jobs, "parallel evaluations (default 1)");
  evaluate->add_flag("--no-timings", opt.no_timings,
                     "omit wall-clock fields for byte-reproducible reports");
  add_tolerance_flags(evaluate);

  CLI::App* verify = app.add_subcommand(
      "verify", "cross-check all three formulations against brute-force oracles");
  verify->add_option("--data", opt.data_path, "dataset CSV")->required();
  verify->add_option("--dmu", opt.dmu, "unit id or 'all' (default all)");
  verify->add_option("--out", opt.out_path, "write the report here instead of stdout");
  verify->add_option("--jobs", opt.jobs, "parallel oracle LPs (default 1)");
  add_tolerance_flags(verify);

  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "time the relaxed LP against branch-and-bound on synthetic data");
  bench_cmd->add_option("--n", bench.n, "units per synthetic dataset (default 30)");
  bench_cmd->add_option("--m", bench.m, "inputs (default 2)");
  bench_cmd->add_option("--s", bench.s, "outputs (default 2)");
  bench_cmd->add_option("--reps", bench.reps, "number of datasets (default 3)");
  bench_cmd->add_option("--seed", bench.seed, "base RNG seed (default 1)");
  bench_cmd->add_option("--out", opt.out_path, "write the CSV here instead of stdout");
  bench_cmd->add_option("--jobs", opt.jobs, "parallel score solves (default 1)");
  add_tolerance_flags(bench_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }

  try {
    if (evaluate->parsed()) return cmd_evaluate(opt, out, err);
    if (verify->parsed()) return cmd_verify(opt, out, err);
    return cmd_bench(opt, bench, out, err);
  } catch (const InputError& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  } catch (const TheoremViolation& ex) {
    err << "theorem violation: " << ex.what() << "\n";
    return 3;
  } catch (const SolverError& ex) {
    err << "solver failure: " << ex.what() << "\n";
    return 2;
  }
}

}  // namespace ramgrs
