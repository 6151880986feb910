// Command-line harness for equitable transit network design: priority
// scoring, single solves, warm-started budget sweeps, leximax traces,
// budget-range endpoints, and randomized certification against the
// enumeration oracle.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "transit/builder.hpp"
#include "transit/errors.hpp"
#include "transit/graph.hpp"
#include "transit/ingest.hpp"
#include "transit/instances.hpp"
#include "transit/oracle.hpp"
#include "transit/scoring.hpp"
#include "transit/sweep.hpp"
#include "transit/welfare.hpp"

namespace {

using namespace transit;

constexpr const char* kBackend = "builtin-bb-bounded-simplex/1.0";

struct CommonArgs {
  std::string tracts_path;
  std::string od_path;
  std::string config_path;
  ProblemConfig config;

  // flag overrides; only applied when the user passed them
  std::optional<double> alpha, gamma, gap, epsilon, p_floor, p_ceil, grid_step, time_limit;
  std::optional<int> k, bins;
  std::optional<std::string> topology, cost_rule, od_pairs;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* cmd, bool needs_od) {
    cmd->add_option("--tracts", tracts_path, "tract table CSV")->required();
    if (needs_od) cmd->add_option("--od", od_path, "origin-destination demand CSV")->required();
    cmd->add_option("--config", config_path, "key = value run configuration");
    cmd->add_option_function<double>("--alpha", [this](double v) { alpha = v; },
                                     "detour tolerance (> 1)");
    cmd->add_option_function<double>("--gamma", [this](double v) { gamma = v; },
                                     "ridership weight in the trade-off objective");
    cmd->add_option_function<double>("--gap", [this](double v) { gap = v; },
                                     "relative optimality gap");
    cmd->add_option_function<double>("--epsilon", [this](double v) { epsilon = v; },
                                     "top-bin margin for attribute scores");
    cmd->add_option_function<double>("--p-floor", [this](double v) { p_floor = v; },
                                     "lowest assignable priority");
    cmd->add_option_function<double>("--p-ceil", [this](double v) { p_ceil = v; },
                                     "highest assignable priority");
    cmd->add_option_function<double>("--grid-step", [this](double v) { grid_step = v; },
                                     "budget grid resolution as a fraction of B_max");
    cmd->add_option_function<double>("--time-limit", [this](double v) { time_limit = v; },
                                     "per-solve time limit in seconds");
    cmd->add_option_function<int>("--k", [this](int v) { k = v; }, "number of priority groups");
    cmd->add_option_function<int>("--bins", [this](int v) { bins = v; },
                                  "bins per scored attribute");
    cmd->add_option_function<std::string>("--topology", [this](const std::string& v) { topology = v; },
                                          "complete | knn:<k>");
    cmd->add_option_function<std::string>("--cost-rule", [this](const std::string& v) { cost_rule = v; },
                                          "identity | scale:<factor>");
    cmd->add_option_function<std::string>("--od-pairs", [this](const std::string& v) { od_pairs = v; },
                                          "all | demand");
    cmd->add_option_function<std::uint64_t>("--seed", [this](std::uint64_t v) { seed = v; },
                                            "deterministic seed recorded in manifests");
  }

  void resolve() {
    config = config_path.empty() ? ProblemConfig{} : ProblemConfig::load(config_path);
    if (alpha) config.alpha = *alpha;
    if (gamma) config.gamma = *gamma;
    if (gap) config.gap = *gap;
    if (epsilon) config.epsilon = *epsilon;
    if (p_floor) config.p_floor = *p_floor;
    if (p_ceil) config.p_ceil = *p_ceil;
    if (grid_step) config.grid_step = *grid_step;
    if (time_limit) config.time_limit_sec = *time_limit;
    if (k) config.k = *k;
    if (bins) config.bins = *bins;
    if (topology) config.topology = TopologySpec::parse(*topology);
    if (cost_rule) config.cost_rule = CostRule::parse(*cost_rule);
    if (od_pairs) {
      if (*od_pairs == "all")
        config.od_pairs = PairPolicy::kAllPairs;
      else if (*od_pairs == "demand")
        config.od_pairs = PairPolicy::kPositiveDemand;
      else
        throw ValidationError("--od-pairs must be 'all' or 'demand'");
    }
    if (seed) config.seed = *seed;
  }

  SolverConfig solver() const {
    SolverConfig s;
    s.gap = config.gap;
    s.time_limit_sec = config.time_limit_sec;
    s.seed = config.seed;
    return s;
  }
};

std::vector<std::pair<std::string, std::string>> manifest_base(const ProblemConfig& cfg) {
  return {
      {"solver_backend", kBackend},
      {"seed", std::to_string(cfg.seed)},
      {"alpha", format_double(cfg.alpha)},
      {"k", std::to_string(cfg.k)},
      {"bins", std::to_string(cfg.bins)},
      {"epsilon", format_double(cfg.epsilon)},
      {"gamma", format_double(cfg.gamma)},
      {"gap", format_double(cfg.gap)},
      {"p_floor", format_double(cfg.p_floor)},
      {"p_ceil", format_double(cfg.p_ceil)},
      {"grid_step", format_double(cfg.grid_step)},
      {"time_limit", format_double(cfg.time_limit_sec)},
      {"topology", cfg.topology.to_string()},
      {"cost_rule", cfg.cost_rule.to_string()},
      {"od_pairs", cfg.od_pairs == PairPolicy::kAllPairs ? "all" : "demand"},
  };
}

WelfareSpec spec_for(const std::string& objective, const ProblemConfig& cfg,
                     const DesignProblem& problem) {
  if (objective == "utilitarian") return WelfareSpec::utilitarian();
  WelfareSpec spec =
      objective == "rawlsian" ? WelfareSpec::rawlsian() : WelfareSpec::tradeoff(cfg.gamma);
  spec.active_pairs = problem.pairs();
  return spec;
}

std::vector<double> default_fractions(double from, double to, int points) {
  std::vector<double> f;
  for (int i = 0; i < points; ++i)
    f.push_back(from + (to - from) * static_cast<double>(i) / (points - 1));
  f.back() = to;
  return f;
}

// ---- score ----------------------------------------------------------------

int run_score(CommonArgs& args, const std::string& out_prefix) {
  args.resolve();
  const std::vector<TractRecord> tracts = load_tracts(args.tracts_path);
  std::vector<TractAttributes> attrs;
  for (const TractRecord& t : tracts) attrs.push_back({t.median_income, t.vehicle_rate});
  const std::vector<double> priorities = tract_priority(attrs, args.config.scoring());
  const PriorityProfile profile = od_priorities(priorities, args.config.k);

  {
    std::ofstream out(out_prefix + "tract_priorities.csv", std::ios::binary);
    if (!out) throw ValidationError("cannot write " + out_prefix + "tract_priorities.csv");
    out << "tract_id,priority\n";
    for (size_t i = 0; i < tracts.size(); ++i)
      out << tracts[i].tract_id << ',' << format_double(priorities[i]) << "\n";
  }
  {
    std::ofstream out(out_prefix + "od_priorities.csv", std::ios::binary);
    if (!out) throw ValidationError("cannot write " + out_prefix + "od_priorities.csv");
    out << "origin,destination,priority,group\n";
    const int n = static_cast<int>(tracts.size());
    for (NodeId o = 0; o < n; ++o)
      for (NodeId d = 0; d < n; ++d) {
        if (o == d) continue;
        out << tracts[static_cast<size_t>(o)].tract_id << ','
            << tracts[static_cast<size_t>(d)].tract_id << ','
            << format_double(profile.priority({o, d})) << ',' << profile.group({o, d}) << "\n";
      }
  }
  std::cout << "scored " << tracts.size() << " tracts into " << args.config.k << " groups\n";
  return 0;
}

// ---- solve ----------------------------------------------------------------

int run_solve(CommonArgs& args, const std::string& objective, std::optional<double> budget,
              std::optional<double> fraction, const std::string& dump_lp,
              const std::string& out_design, const std::string& out_utilities) {
  args.resolve();
  ProblemBundle bundle = load_problem(args.tracts_path, args.od_path, args.config);
  const SolverConfig solver = args.solver();

  double b = 0.0;
  if (budget.has_value()) {
    b = *budget;
  } else if (fraction.has_value()) {
    const double b_max = min_cost_full_service(bundle.problem, solver);
    b = *fraction * b_max;
    std::cout << "b_max = " << format_double(b_max) << "\n";
  } else {
    throw ValidationError("pass --budget or --budget-fraction");
  }

  const DesignProblem problem = bundle.problem.with_budget(b);
  const WelfareSpec spec = spec_for(objective, args.config, problem);
  const DesignModel model = build_model(problem, spec);
  if (!dump_lp.empty()) {
    std::ofstream out(dump_lp, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + dump_lp);
    model.milp.write_lp(out);
  }
  const NetworkDesign design = solve_design(model, solver);

  double cost = 0.0;
  for (ArcId a : design.installed) cost += problem.network().arc(a).cost;
  std::cout << "budget = " << format_double(b) << "\n"
            << "objective = " << format_double(design.objective) << "\n"
            << "gap = " << format_double(design.gap) << "\n"
            << "installed_arcs = " << design.installed.size() << "\n"
            << "installed_cost = " << format_double(cost) << "\n"
            << "served_pairs = " << design.served.size() << " of " << problem.pairs().size()
            << "\n";
  if (design.floor_value)
    std::cout << "coverage_floor = " << format_double(*design.floor_value) << "\n";

  const auto& labels = problem.network().nodes();
  if (!out_design.empty()) {
    std::ofstream out(out_design, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + out_design);
    out << "tail,head,length_km,cost\n";
    for (ArcId a : design.installed) {
      const Arc& arc = problem.network().arc(a);
      out << labels[static_cast<size_t>(arc.tail)].label << ','
          << labels[static_cast<size_t>(arc.head)].label << ',' << format_double(arc.length_km)
          << ',' << format_double(arc.cost) << "\n";
    }
  }
  if (!out_utilities.empty()) {
    std::ofstream out(out_utilities, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + out_utilities);
    out << "origin,destination,utility,path_length_km,served\n";
    for (size_t i = 0; i < design.utilities.pairs.size(); ++i) {
      const OdPair& od = design.utilities.pairs[i];
      const auto it = design.path_lengths.find(od);
      out << labels[static_cast<size_t>(od.origin)].label << ','
          << labels[static_cast<size_t>(od.dest)].label << ','
          << format_double(design.utilities.values[i]) << ','
          << (it == design.path_lengths.end() ? "inf" : format_double(it->second)) << ','
          << (it == design.path_lengths.end() ? 0 : 1) << "\n";
    }
  }
  return 0;
}

// ---- sweep ----------------------------------------------------------------

int run_sweep_cmd(CommonArgs& args, const std::string& objective, std::vector<double> fractions,
                  bool compare_equal, const std::string& out_prefix) {
  args.resolve();
  ProblemBundle bundle = load_problem(args.tracts_path, args.od_path, args.config);
  const SolverConfig solver = args.solver();
  const DesignProblem& problem = bundle.problem;

  const double b_max = min_cost_full_service(problem, solver);
  std::optional<double> b_min;
  if (fractions.empty()) fractions = args.config.budget_fractions;
  if (fractions.empty()) {
    if (objective == "utilitarian") {
      fractions = default_fractions(0.05, 1.0, 20);
    } else {
      // coverage objectives are plotted from the least all-serving budget up
      b_min = min_budget_positive_floor(problem, args.config.grid_step, solver);
      const double from = std::max(0.05, *b_min / b_max);
      fractions = from >= 1.0 ? std::vector<double>{1.0} : default_fractions(from, 1.0, 20);
    }
  }

  const WelfareSpec spec = spec_for(objective, args.config, problem);
  auto run_one = [&](const DesignProblem& p) { return run_sweep(p, spec, fractions, solver, b_max); };

  SweepResult aware;
  std::optional<SweepResult> baseline;
  if (compare_equal) {
    // the equal-priority counterpart keeps the group structure for reporting
    DesignProblem equal = problem.with_priority(problem.priority().with_constant_priority(0.5));
    auto fut = std::async(std::launch::async, run_one, std::cref(equal));
    aware = run_one(problem);
    baseline = fut.get();
  } else {
    aware = run_one(problem);
  }

  emit_sweep_csv(aware, out_prefix + objective + "_sweep.csv");
  std::cout << "wrote " << out_prefix + objective + "_sweep.csv (" << aware.rows.size()
            << " rows)\n";
  if (baseline) {
    emit_sweep_csv(*baseline, out_prefix + objective + "_sweep_equal.csv");
    emit_diff_csv(aware, *baseline, out_prefix + objective + "_gain.csv");
    std::cout << "wrote " << out_prefix + objective + "_sweep_equal.csv and "
              << out_prefix + objective + "_gain.csv\n";
  }

  auto manifest = manifest_base(args.config);
  manifest.push_back({"command", "sweep"});
  manifest.push_back({"objective", objective});
  manifest.push_back({"b_max", format_double(b_max)});
  if (b_min) manifest.push_back({"b_min", format_double(*b_min)});
  for (const SweepRow& row : aware.rows) {
    manifest.push_back({"gap_" + format_double(row.budget_fraction), format_double(row.gap)});
    manifest.push_back(
        {"time_" + format_double(row.budget_fraction), format_double(row.wall_seconds)});
  }
  if (aware.aborted) manifest.push_back({"aborted", aware.abort_reason});
  write_manifest(out_prefix + "manifest.txt", manifest);

  if (aware.aborted || (baseline && baseline->aborted)) {
    std::cerr << "sweep aborted: " << (aware.aborted ? aware.abort_reason : baseline->abort_reason)
              << "\n";
    return 2;
  }
  return 0;
}

// ---- leximax ---------------------------------------------------------------

int run_leximax_cmd(CommonArgs& args, std::optional<double> budget, std::optional<double> fraction,
                    int iterations, const std::string& out_path) {
  args.resolve();
  ProblemBundle bundle = load_problem(args.tracts_path, args.od_path, args.config);
  const SolverConfig solver = args.solver();

  double b = 0.0;
  double b_max = 0.0;
  if (budget.has_value()) {
    b = *budget;
  } else {
    b_max = min_cost_full_service(bundle.problem, solver);
    b = (fraction ? *fraction : 0.8) * b_max;
  }
  const DesignProblem problem = bundle.problem.with_budget(b);
  const int total = static_cast<int>(problem.pairs().size());
  const int iters = iterations > 0 ? iterations : total;

  const LeximaxTrace trace = solve_leximax(problem, args.config.gamma, iters, solver);
  std::vector<std::string> labels;
  for (const Node& nd : problem.network().nodes()) labels.push_back(nd.label);
  emit_leximax_csv(trace, labels, out_path);
  std::cout << "wrote " << out_path << " (" << trace.iterations.size() << " iterations)\n";

  auto manifest = manifest_base(args.config);
  manifest.push_back({"command", "leximax"});
  manifest.push_back({"budget", format_double(b)});
  if (b_max > 0.0) manifest.push_back({"b_max", format_double(b_max)});
  manifest.push_back({"iterations", std::to_string(trace.iterations.size())});
  for (const LeximaxIteration& it : trace.iterations)
    manifest.push_back({"gap_iter_" + std::to_string(it.iteration), format_double(it.design.gap)});
  if (trace.aborted) manifest.push_back({"aborted", trace.abort_reason});
  write_manifest(out_path + ".manifest.txt", manifest);

  if (trace.aborted) {
    std::cerr << "leximax aborted: " << trace.abort_reason << "\n";
    return 2;
  }
  return 0;
}

// ---- budget-range ----------------------------------------------------------

int run_budget_range(CommonArgs& args) {
  args.resolve();
  ProblemBundle bundle = load_problem(args.tracts_path, args.od_path, args.config);
  const SolverConfig solver = args.solver();
  const double b_max = min_cost_full_service(bundle.problem, solver);
  const double b_min = min_budget_positive_floor(bundle.problem, args.config.grid_step, solver);
  std::cout << "b_min = " << format_double(b_min) << "\n"
            << "b_max = " << format_double(b_max) << "\n";
  return 0;
}

// ---- oracle-check ----------------------------------------------------------

struct OracleCheckOutcome {
  std::string line;
  bool ok = true;
};

OracleCheckOutcome check_instance(std::uint64_t seed, const std::string& objective,
                                  const SolverConfig& solver) {
  const DesignProblem problem = random_instance(seed);
  WelfareSpec spec = spec_for(objective, ProblemConfig{}, problem);
  const NetworkDesign design = solve_design(build_model(problem, spec), solver);

  auto welfare = [&](const UtilityProfile& u) {
    return spec.has_floor_term()
               ? welfare_tradeoff(u, problem.demand(), problem.priority(), spec.gamma)
               : welfare_utilitarian(u, problem.demand(), problem.priority());
  };
  const OracleOptimum oracle = brute_force_optimum(problem, welfare);
  const double tol = 1e-6 + solver.gap * std::fabs(oracle.value);
  const bool ok = std::fabs(design.objective - oracle.value) <= tol;

  char buf[160];
  std::snprintf(buf, sizeof(buf), "%s seed=%llu %s milp=%.9g oracle=%.9g",
                ok ? "[PASS]" : "[FAIL]", static_cast<unsigned long long>(seed),
                objective.c_str(), design.objective, oracle.value);
  return {buf, ok};
}

int run_oracle_check(CommonArgs& args, int instances, const std::string& objective) {
  args.resolve();
  const SolverConfig solver = args.solver();
  std::vector<std::future<OracleCheckOutcome>> jobs;
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t seed = args.config.seed + static_cast<std::uint64_t>(i);
    if (objective == "both" || objective == "utilitarian")
      jobs.push_back(
          std::async(std::launch::async, check_instance, seed, std::string("utilitarian"), solver));
    if (objective == "both" || objective == "rawlsian")
      jobs.push_back(
          std::async(std::launch::async, check_instance, seed, std::string("rawlsian"), solver));
  }
  bool all_ok = true;
  for (auto& fut : jobs) {
    const OracleCheckOutcome outcome = fut.get();
    std::cout << outcome.line << "\n";
    all_ok = all_ok && outcome.ok;
  }
  if (!all_ok) {
    std::cerr << "oracle disagreement detected\n";
    return 3;
  }
  std::cout << "all " << jobs.size() << " checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equitable transit network design toolkit"};
  app.require_subcommand(1);

  CommonArgs score_args, solve_args, sweep_args, leximax_args, range_args, oracle_args;

  auto* score = app.add_subcommand("score", "derive tract and OD priorities from attributes");
  score_args.attach(score, false);
  std::string score_prefix = "./";
  score->add_option("--out-prefix", score_prefix, "output file prefix");

  auto* solve = app.add_subcommand("solve", "solve one budget under one objective");
  solve_args.attach(solve, true);
  std::string solve_objective = "utilitarian";
  std::optional<double> solve_budget, solve_fraction;
  std::string dump_lp, out_design, out_utilities;
  solve->add_option("--objective", solve_objective, "utilitarian | rawlsian | tradeoff")
      ->check(CLI::IsMember({"utilitarian", "rawlsian", "tradeoff"}));
  solve->add_option_function<double>(
      "--budget", [&solve_budget](double v) { solve_budget = v; }, "absolute budget");
  solve->add_option_function<double>(
      "--budget-fraction", [&solve_fraction](double v) { solve_fraction = v; },
      "fraction of B_max");
  solve->add_option("--dump-lp", dump_lp, "write the model in LP text format");
  solve->add_option("--out-design", out_design, "installed arc CSV");
  solve->add_option("--out-utilities", out_utilities, "per-pair utility CSV");

  auto* sweep = app.add_subcommand("sweep", "warm-started budget sweep with group metrics");
  sweep_args.attach(sweep, true);
  std::string sweep_objective = "utilitarian";
  std::vector<double> sweep_fractions;
  bool compare_equal = false;
  std::string sweep_prefix = "./";
  sweep->add_option("--objective", sweep_objective, "utilitarian | rawlsian | tradeoff")
      ->check(CLI::IsMember({"utilitarian", "rawlsian", "tradeoff"}));
  sweep->add_option("--fractions", sweep_fractions, "budget fractions in (0,1]")->delimiter(',');
  sweep->add_flag("--compare-equal-priorities", compare_equal,
                  "also run the 0.5-priority baseline and emit the gain series");
  sweep->add_option("--out-prefix", sweep_prefix, "output file prefix");

  auto* leximax = app.add_subcommand("leximax", "iterative floor-raising trace at one budget");
  leximax_args.attach(leximax, true);
  std::optional<double> lex_budget, lex_fraction;
  int lex_iterations = 0;
  std::string lex_out = "leximax.csv";
  leximax->add_option_function<double>(
      "--budget", [&lex_budget](double v) { lex_budget = v; }, "absolute budget");
  leximax->add_option_function<double>(
      "--budget-fraction", [&lex_fraction](double v) { lex_fraction = v; },
      "fraction of B_max (default 0.8)");
  leximax->add_option("--iterations", lex_iterations, "rounds to run (default: all pairs)");
  leximax->add_option("--out", lex_out, "trace CSV path");

  auto* range = app.add_subcommand("budget-range", "print B_min and B_max");
  range_args.attach(range, true);

  auto* oracle =
      app.add_subcommand("oracle-check", "certify solver optima against brute-force enumeration");
  oracle_args.attach(oracle, false);
  oracle->get_option("--tracts")->required(false);
  int oracle_instances = 10;
  std::string oracle_objective = "both";
  oracle->add_option("--instances", oracle_instances, "random instances to certify");
  oracle->add_option("--objective", oracle_objective, "utilitarian | rawlsian | both")
      ->check(CLI::IsMember({"utilitarian", "rawlsian", "both"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (score->parsed()) return run_score(score_args, score_prefix);
    if (solve->parsed())
      return run_solve(solve_args, solve_objective, solve_budget, solve_fraction, dump_lp,
                       out_design, out_utilities);
    if (sweep->parsed())
      return run_sweep_cmd(sweep_args, sweep_objective, sweep_fractions, compare_equal,
                           sweep_prefix);
    if (leximax->parsed())
      return run_leximax_cmd(leximax_args, lex_budget, lex_fraction, lex_iterations, lex_out);
    if (range->parsed()) return run_budget_range(range_args);
    if (oracle->parsed()) return run_oracle_check(oracle_args, oracle_instances, oracle_objective);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  } catch (const OracleError& e) {
    std::cerr << "oracle error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
