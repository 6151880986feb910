#include "transit/builder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "transit/errors.hpp"
#include "transit/graph.hpp"

namespace transit {

namespace {

std::string pair_tag(const OdPair& od) {
  return std::to_string(od.origin) + "_" + std::to_string(od.dest);
}

// Shortest-path service over a fixed installed set: the integral completion
// used by the primal heuristic and by solution extraction (every served pair
// rides a shortest path of the installed subgraph; pairs at or beyond the
// detour limit are unserved).
struct Completion {
  std::vector<char> served;
  std::vector<double> dist;
  std::vector<std::vector<ArcId>> path;
  std::vector<double> util;
};

Completion complete_installed(const DesignProblem& problem, const std::vector<ArcId>& installed) {
  const RoadNetwork& net = problem.network();
  const auto& pairs = problem.pairs();
  std::vector<char> enabled(static_cast<size_t>(net.arc_count()), 0);
  for (ArcId a : installed) enabled[static_cast<size_t>(a)] = 1;

  Completion comp;
  comp.served.assign(pairs.size(), 0);
  comp.dist.assign(pairs.size(), kUnreachable);
  comp.path.assign(pairs.size(), {});
  comp.util.assign(pairs.size(), 0.0);

  std::vector<double> dist;
  std::vector<ArcId> parent;
  NodeId last_origin = -1;
  for (size_t i = 0; i < pairs.size(); ++i) {
    const OdPair& od = pairs[i];
    if (od.origin != last_origin) {
      shortest_from(net, od.origin, enabled, dist, parent);
      last_origin = od.origin;
    }
    const double d = dist[static_cast<size_t>(od.dest)];
    comp.dist[i] = d;
    if (d < problem.alpha() * problem.shortest(od)) {
      comp.served[i] = 1;
      comp.util[i] = trip_utility(d, problem.shortest(od), problem.alpha());
      std::vector<ArcId>& path = comp.path[i];
      for (NodeId v = od.dest; v != od.origin;) {
        const ArcId a = parent[static_cast<size_t>(v)];
        path.push_back(a);
        v = net.arc(a).tail;
      }
      std::reverse(path.begin(), path.end());
    }
  }
  return comp;
}

double completion_objective(const DesignModel& model, const Completion& comp) {
  const DesignProblem& problem = *model.problem;
  double util_sum = 0.0;
  for (size_t i = 0; i < problem.pairs().size(); ++i) {
    const OdPair& od = problem.pairs()[i];
    util_sum += static_cast<double>(problem.demand().count(od)) *
                problem.priority().priority(od) * comp.util[i];
  }
  if (!model.spec.has_floor_term()) return util_sum;

  double floor_v = kUnreachable;
  for (const OdPair& od : model.spec.active_pairs) {
    const size_t i = static_cast<size_t>(
        std::find(problem.pairs().begin(), problem.pairs().end(), od) - problem.pairs().begin());
    floor_v = std::min(floor_v, (1.0 - problem.priority().priority(od)) * comp.util[i]);
  }
  return model.spec.gamma * util_sum + (1.0 - model.spec.gamma) * floor_v;
}

std::optional<std::vector<double>> assignment_from_completion(const DesignModel& model,
                                                              const std::vector<ArcId>& installed,
                                                              const Completion& comp) {
  const DesignProblem& problem = *model.problem;
  const auto& pairs = problem.pairs();
  std::vector<double> v(static_cast<size_t>(model.milp.num_variables()), 0.0);
  for (ArcId a : installed) v[static_cast<size_t>(model.x[static_cast<size_t>(a)])] = 1.0;
  double floor_v = kUnreachable;
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (!comp.served[i]) continue;
    v[static_cast<size_t>(model.y[i])] = 1.0;
    for (ArcId a : comp.path[i]) v[static_cast<size_t>(model.f[i][static_cast<size_t>(a)])] = 1.0;
    v[static_cast<size_t>(model.len[i])] = comp.dist[i];
    v[static_cast<size_t>(model.util[i])] = comp.util[i];
  }
  for (const auto& [od, t] : model.floors) {
    const size_t i = static_cast<size_t>(std::find(pairs.begin(), pairs.end(), od) - pairs.begin());
    if (comp.util[i] < t - 1e-6) return std::nullopt;  // this installation cannot honor the floor
  }
  if (model.z >= 0) {
    for (const OdPair& od : model.spec.active_pairs) {
      const size_t i = static_cast<size_t>(std::find(pairs.begin(), pairs.end(), od) - pairs.begin());
      floor_v = std::min(floor_v, (1.0 - problem.priority().priority(od)) * comp.util[i]);
    }
    v[static_cast<size_t>(model.z)] = floor_v;
  }
  return v;
}

MilpOptions to_options(const SolverConfig& config) {
  MilpOptions opt;
  opt.rel_gap = config.gap;
  opt.time_limit_sec = config.time_limit_sec;
  opt.seed = config.seed;
  opt.verbosity = config.verbosity;
  return opt;
}

// Heuristic shared by all design solves: once every installation variable is
// integral in the relaxation, the shortest-path completion is the best
// integral solution of the subtree.
MilpHeuristic completion_heuristic(const DesignModel& model) {
  return [&model](const std::vector<double>& lp) -> std::optional<std::vector<double>> {
    std::vector<ArcId> installed;
    for (size_t a = 0; a < model.x.size(); ++a) {
      const double v = lp[static_cast<size_t>(model.x[a])];
      if (std::fabs(v - std::round(v)) > 1e-6) return std::nullopt;
      if (v > 0.5) installed.push_back(static_cast<ArcId>(a));
    }
    const Completion comp = complete_installed(*model.problem, installed);
    return assignment_from_completion(model, installed, comp);
  };
}

}  // namespace

DesignModel build_model(const DesignProblem& problem, const WelfareSpec& spec,
                        const std::map<OdPair, double>& floors) {
  DesignModel model;
  model.problem = &problem;
  model.spec = spec;
  model.floors = floors;
  if (spec.has_floor_term() && model.spec.active_pairs.empty())
    throw ValidationError("min-term objective with an empty active pair set");
  for (const OdPair& od : model.spec.active_pairs)
    if (std::find(problem.pairs().begin(), problem.pairs().end(), od) == problem.pairs().end())
      throw ValidationError("active pair outside the problem's OD set");
  for (const auto& [od, t] : floors) {
    if (t > 1.0) throw ValidationError("floor above 1 for pair " + pair_tag(od));
    if (std::find(problem.pairs().begin(), problem.pairs().end(), od) == problem.pairs().end())
      throw ValidationError("floor pair outside the problem's OD set");
  }

  const RoadNetwork& net = problem.network();
  const auto& pairs = problem.pairs();
  const int n_arcs = net.arc_count();
  const double alpha = problem.alpha();
  MilpModel& m = model.milp;

  for (int a = 0; a < n_arcs; ++a)
    model.x.push_back(m.add_variable("x_" + std::to_string(a), 0.0, 1.0, VarKind::kInteger, 100));
  for (const OdPair& od : pairs)
    model.y.push_back(m.add_variable("y_" + pair_tag(od), 0.0, 1.0, VarKind::kInteger, 10));
  for (size_t i = 0; i < pairs.size(); ++i) {
    model.f.emplace_back();
    for (int a = 0; a < n_arcs; ++a)
      model.f.back().push_back(m.add_variable(
          "f_" + std::to_string(a) + "_" + pair_tag(pairs[i]), 0.0, 1.0, VarKind::kInteger, 0));
  }
  for (const OdPair& od : pairs)
    model.len.push_back(m.add_variable("l_" + pair_tag(od), 0.0,
                                       std::numeric_limits<double>::infinity(),
                                       VarKind::kContinuous));
  for (const OdPair& od : pairs)
    model.util.push_back(m.add_variable("u_" + pair_tag(od), 0.0, 1.0, VarKind::kContinuous));
  if (spec.has_floor_term()) model.z = m.add_variable("z", 0.0, 1.0, VarKind::kContinuous);

  // Budget.
  {
    std::vector<std::pair<int, double>> terms;
    for (int a = 0; a < n_arcs; ++a)
      terms.emplace_back(model.x[static_cast<size_t>(a)], net.arc(a).cost);
    m.add_constraint("budget", std::move(terms), 'L', problem.budget());
  }
  // Mass conservation of the installed arcs at every node.
  for (NodeId i = 0; i < net.node_count(); ++i) {
    std::vector<std::pair<int, double>> terms;
    for (ArcId a : net.out_arcs(i)) terms.emplace_back(model.x[static_cast<size_t>(a)], 1.0);
    for (ArcId a : net.in_arcs(i)) terms.emplace_back(model.x[static_cast<size_t>(a)], -1.0);
    m.add_constraint("balance_" + std::to_string(i), std::move(terms), 'E', 0.0);
  }
  // Per-pair flow conservation with the connectivity indicator on the right
  // hand side, emitted for every node including the endpoints.
  for (size_t p = 0; p < pairs.size(); ++p) {
    const OdPair& od = pairs[p];
    for (NodeId i = 0; i < net.node_count(); ++i) {
      std::vector<std::pair<int, double>> terms;
      for (ArcId a : net.out_arcs(i)) terms.emplace_back(model.f[p][static_cast<size_t>(a)], 1.0);
      for (ArcId a : net.in_arcs(i)) terms.emplace_back(model.f[p][static_cast<size_t>(a)], -1.0);
      const double indicator = (i == od.origin ? 1.0 : 0.0) - (i == od.dest ? 1.0 : 0.0);
      if (indicator != 0.0) terms.emplace_back(model.y[p], -indicator);
      m.add_constraint("flow_" + pair_tag(od) + "_" + std::to_string(i), std::move(terms), 'E',
                       0.0);
    }
  }
  // Flows may only use installed arcs.
  for (size_t p = 0; p < pairs.size(); ++p) {
    for (int a = 0; a < n_arcs; ++a) {
      m.add_constraint("link_" + std::to_string(a) + "_" + pair_tag(pairs[p]),
                       {{model.f[p][static_cast<size_t>(a)], 1.0},
                        {model.x[static_cast<size_t>(a)], -1.0}},
                       'L', 0.0);
    }
  }
  // Path length recovery.
  for (size_t p = 0; p < pairs.size(); ++p) {
    std::vector<std::pair<int, double>> terms{{model.len[p], 1.0}};
    for (int a = 0; a < n_arcs; ++a)
      terms.emplace_back(model.f[p][static_cast<size_t>(a)], -net.arc(a).length_km);
    m.add_constraint("length_" + pair_tag(pairs[p]), std::move(terms), 'E', 0.0);
  }
  // Detour tolerance.
  for (size_t p = 0; p < pairs.size(); ++p) {
    m.add_constraint("detour_" + pair_tag(pairs[p]),
                     {{model.len[p], 1.0}, {model.y[p], -alpha * problem.shortest(pairs[p])}}, 'L',
                     0.0);
  }
  // The piece-wise linear utility, linearized through the connectivity flag.
  for (size_t p = 0; p < pairs.size(); ++p) {
    const double ls = problem.shortest(pairs[p]);
    m.add_constraint("utility_" + pair_tag(pairs[p]),
                     {{model.util[p], 1.0},
                      {model.len[p], 1.0 / (ls * (alpha - 1.0))},
                      {model.y[p], -alpha / (alpha - 1.0)}},
                     'E', 0.0);
  }
  // Epigraph of the coverage floor for min-term objectives.
  if (spec.has_floor_term()) {
    for (const OdPair& od : model.spec.active_pairs) {
      const size_t p = static_cast<size_t>(std::find(pairs.begin(), pairs.end(), od) - pairs.begin());
      m.add_constraint("epi_" + pair_tag(od),
                       {{model.z, 1.0},
                        {model.util[p], -(1.0 - problem.priority().priority(od))}},
                       'L', 0.0);
    }
  }
  // Frozen floors from earlier lexicographic iterations.
  for (const auto& [od, t] : floors) {
    const size_t p = static_cast<size_t>(std::find(pairs.begin(), pairs.end(), od) - pairs.begin());
    m.add_constraint("floor_" + pair_tag(od), {{model.util[p], 1.0}}, 'G', t);
  }

  std::vector<std::pair<int, double>> obj;
  const double gamma = spec.has_floor_term() ? spec.gamma : 1.0;
  for (size_t p = 0; p < pairs.size(); ++p) {
    const OdPair& od = pairs[p];
    const double w = gamma * static_cast<double>(problem.demand().count(od)) *
                     problem.priority().priority(od);
    if (w != 0.0) obj.emplace_back(model.util[p], w);
  }
  if (spec.has_floor_term()) obj.emplace_back(model.z, 1.0 - spec.gamma);
  m.set_objective(std::move(obj), /*maximize=*/true);
  return model;
}

std::vector<double> design_to_assignment(const DesignModel& model, const NetworkDesign& design) {
  const DesignProblem& problem = *model.problem;
  const auto& pairs = problem.pairs();
  std::vector<double> v(static_cast<size_t>(model.milp.num_variables()), 0.0);
  for (ArcId a : design.installed) v[static_cast<size_t>(model.x[static_cast<size_t>(a)])] = 1.0;
  for (size_t i = 0; i < pairs.size(); ++i) {
    const auto it = design.paths.find(pairs[i]);
    if (it == design.paths.end()) continue;
    v[static_cast<size_t>(model.y[i])] = 1.0;
    for (ArcId a : it->second) v[static_cast<size_t>(model.f[i][static_cast<size_t>(a)])] = 1.0;
    v[static_cast<size_t>(model.len[i])] = design.path_lengths.at(pairs[i]);
    v[static_cast<size_t>(model.util[i])] = design.utilities.value(pairs[i]);
  }
  if (model.z >= 0) {
    double floor_v = kUnreachable;
    for (const OdPair& od : model.spec.active_pairs)
      floor_v = std::min(floor_v,
                         (1.0 - problem.priority().priority(od)) * design.utilities.value(od));
    v[static_cast<size_t>(model.z)] = floor_v;
  }
  return v;
}

namespace {

// Post-solve certification of the normalized design against the constraint
// system; failures are internal errors, never user errors.
void certify_design(const DesignModel& model, const NetworkDesign& design) {
  const DesignProblem& problem = *model.problem;
  const RoadNetwork& net = problem.network();
  if (!is_circulation(net, design.installed))
    throw SolverError("extracted installation is not a circulation");
  double cost = 0.0;
  for (ArcId a : design.installed) cost += net.arc(a).cost;
  if (cost > problem.budget() + 1e-6) throw SolverError("extracted installation exceeds the budget");

  std::vector<char> installed(static_cast<size_t>(net.arc_count()), 0);
  for (ArcId a : design.installed) installed[static_cast<size_t>(a)] = 1;
  for (const OdPair& od : design.served) {
    const auto& path = design.paths.at(od);
    NodeId at = od.origin;
    double len = 0.0;
    std::vector<char> seen(static_cast<size_t>(net.node_count()), 0);
    seen[static_cast<size_t>(at)] = 1;
    for (ArcId a : path) {
      if (!installed[static_cast<size_t>(a)]) throw SolverError("flow path uses an uninstalled arc");
      const Arc& arc = net.arc(a);
      if (arc.tail != at) throw SolverError("flow path is not contiguous");
      at = arc.head;
      if (seen[static_cast<size_t>(at)]) throw SolverError("flow path revisits a node");
      seen[static_cast<size_t>(at)] = 1;
      len += arc.length_km;
    }
    if (at != od.dest) throw SolverError("flow path does not reach the destination");
    if (std::fabs(len - design.path_lengths.at(od)) > 1e-6)
      throw SolverError("flow path length mismatch");
    if (len > problem.alpha() * problem.shortest(od) + 1e-6)
      throw SolverError("flow path exceeds the detour tolerance");
    if (std::fabs(design.utilities.value(od) -
                  trip_utility(len, problem.shortest(od), problem.alpha())) > 1e-6)
      throw SolverError("reported utility deviates from the utility function");
  }
  for (const auto& [od, t] : model.floors)
    if (design.utilities.value(od) < t - 1e-6)
      throw SolverError("frozen floor violated for pair " + pair_tag(od));
}

}  // namespace

NetworkDesign solve_design(const DesignModel& model, const SolverConfig& config,
                           const std::optional<NetworkDesign>& warm_start) {
  std::optional<std::vector<double>> start;
  if (warm_start.has_value()) start = design_to_assignment(model, *warm_start);

  const MilpResult res =
      solve_milp(model.milp, to_options(config), start, completion_heuristic(model));

  const DesignProblem& problem = *model.problem;
  std::vector<ArcId> installed;
  for (size_t a = 0; a < model.x.size(); ++a)
    if (res.values[static_cast<size_t>(model.x[a])] > 0.5) installed.push_back(static_cast<ArcId>(a));

  const Completion comp = complete_installed(problem, installed);
  NetworkDesign design;
  design.installed = std::move(installed);
  design.utilities.pairs = problem.pairs();
  design.utilities.values = comp.util;
  for (size_t i = 0; i < problem.pairs().size(); ++i) {
    if (!comp.served[i]) continue;
    const OdPair& od = problem.pairs()[i];
    design.served.push_back(od);
    design.paths[od] = comp.path[i];
    design.path_lengths[od] = comp.dist[i];
  }
  design.objective = completion_objective(model, comp);
  design.best_bound = std::max(res.best_bound, design.objective);
  const double abs_gap = std::max(0.0, design.best_bound - design.objective);
  design.gap = abs_gap <= 1e-9 ? 0.0 : abs_gap / std::max(1e-9, std::fabs(design.objective));
  design.wall_seconds = res.wall_seconds;
  design.nodes = res.nodes;
  if (model.spec.has_floor_term()) {
    double floor_v = kUnreachable;
    for (const OdPair& od : model.spec.active_pairs)
      floor_v = std::min(floor_v,
                         (1.0 - problem.priority().priority(od)) * design.utilities.value(od));
    design.floor_value = floor_v;
  }

  if (design.gap > config.gap + 1e-12)
    throw SolverError("solve stopped above the requested optimality gap (achieved " +
                      std::to_string(design.gap) + ")");
  certify_design(model, design);
  return design;
}

double min_cost_full_service(const DesignProblem& problem, const SolverConfig& config) {
  const RoadNetwork& net = problem.network();
  const auto& pairs = problem.pairs();
  const int n_arcs = net.arc_count();

  MilpModel m;
  std::vector<int> x;
  std::vector<std::vector<int>> f;
  std::vector<int> len;
  for (int a = 0; a < n_arcs; ++a)
    x.push_back(m.add_variable("x_" + std::to_string(a), 0.0, 1.0, VarKind::kInteger, 100));
  for (size_t p = 0; p < pairs.size(); ++p) {
    f.emplace_back();
    for (int a = 0; a < n_arcs; ++a)
      f.back().push_back(m.add_variable("f_" + std::to_string(a) + "_" + pair_tag(pairs[p]), 0.0,
                                        1.0, VarKind::kInteger, 0));
  }
  for (const OdPair& od : pairs)
    len.push_back(m.add_variable("l_" + pair_tag(od), 0.0,
                                 std::numeric_limits<double>::infinity(), VarKind::kContinuous));

  for (NodeId i = 0; i < net.node_count(); ++i) {
    std::vector<std::pair<int, double>> terms;
    for (ArcId a : net.out_arcs(i)) terms.emplace_back(x[static_cast<size_t>(a)], 1.0);
    for (ArcId a : net.in_arcs(i)) terms.emplace_back(x[static_cast<size_t>(a)], -1.0);
    m.add_constraint("balance_" + std::to_string(i), std::move(terms), 'E', 0.0);
  }
  // Every pair is connected (the connectivity indicator pinned to one).
  for (size_t p = 0; p < pairs.size(); ++p) {
    const OdPair& od = pairs[p];
    for (NodeId i = 0; i < net.node_count(); ++i) {
      std::vector<std::pair<int, double>> terms;
      for (ArcId a : net.out_arcs(i)) terms.emplace_back(f[p][static_cast<size_t>(a)], 1.0);
      for (ArcId a : net.in_arcs(i)) terms.emplace_back(f[p][static_cast<size_t>(a)], -1.0);
      const double rhs = (i == od.origin ? 1.0 : 0.0) - (i == od.dest ? 1.0 : 0.0);
      m.add_constraint("flow_" + pair_tag(od) + "_" + std::to_string(i), std::move(terms), 'E',
                       rhs);
    }
    for (int a = 0; a < n_arcs; ++a)
      m.add_constraint("link_" + std::to_string(a) + "_" + pair_tag(od),
                       {{f[p][static_cast<size_t>(a)], 1.0}, {x[static_cast<size_t>(a)], -1.0}},
                       'L', 0.0);
    std::vector<std::pair<int, double>> lt{{len[p], 1.0}};
    for (int a = 0; a < n_arcs; ++a)
      lt.emplace_back(f[p][static_cast<size_t>(a)], -net.arc(a).length_km);
    m.add_constraint("length_" + pair_tag(od), std::move(lt), 'E', 0.0);
    m.add_constraint("shortest_" + pair_tag(od), {{len[p], 1.0}}, 'L', problem.shortest(od));
  }

  std::vector<std::pair<int, double>> obj;
  for (int a = 0; a < n_arcs; ++a) obj.emplace_back(x[static_cast<size_t>(a)], net.arc(a).cost);
  m.set_objective(std::move(obj), /*maximize=*/false);

  // Installing everything serves every pair at its shortest path.
  std::vector<double> start(static_cast<size_t>(m.num_variables()), 0.0);
  {
    std::vector<char> all(static_cast<size_t>(n_arcs), 1);
    std::vector<double> dist;
    std::vector<ArcId> parent;
    NodeId last = -1;
    for (int a = 0; a < n_arcs; ++a) start[static_cast<size_t>(x[static_cast<size_t>(a)])] = 1.0;
    for (size_t p = 0; p < pairs.size(); ++p) {
      if (pairs[p].origin != last) {
        shortest_from(net, pairs[p].origin, all, dist, parent);
        last = pairs[p].origin;
      }
      start[static_cast<size_t>(len[p])] = dist[static_cast<size_t>(pairs[p].dest)];
      for (NodeId v = pairs[p].dest; v != pairs[p].origin;) {
        const ArcId a = parent[static_cast<size_t>(v)];
        start[static_cast<size_t>(f[p][static_cast<size_t>(a)])] = 1.0;
        v = net.arc(a).tail;
      }
    }
  }

  // Completion: an integral installation is feasible iff it serves every pair
  // at exactly the shortest distance of the full network.
  MilpHeuristic heuristic = [&](const std::vector<double>& lp) -> std::optional<std::vector<double>> {
    std::vector<ArcId> installed;
    for (size_t a = 0; a < x.size(); ++a) {
      const double v = lp[static_cast<size_t>(x[a])];
      if (std::fabs(v - std::round(v)) > 1e-6) return std::nullopt;
      if (v > 0.5) installed.push_back(static_cast<ArcId>(a));
    }
    std::vector<char> enabled(static_cast<size_t>(n_arcs), 0);
    for (ArcId a : installed) enabled[static_cast<size_t>(a)] = 1;
    std::vector<double> out(static_cast<size_t>(m.num_variables()), 0.0);
    for (ArcId a : installed) out[static_cast<size_t>(x[static_cast<size_t>(a)])] = 1.0;
    std::vector<double> dist;
    std::vector<ArcId> parent;
    NodeId last = -1;
    for (size_t p = 0; p < pairs.size(); ++p) {
      if (pairs[p].origin != last) {
        shortest_from(net, pairs[p].origin, enabled, dist, parent);
        last = pairs[p].origin;
      }
      const double d = dist[static_cast<size_t>(pairs[p].dest)];
      if (!(d <= problem.shortest(pairs[p]) + 1e-9)) return std::nullopt;
      out[static_cast<size_t>(len[p])] = d;
      for (NodeId v = pairs[p].dest; v != pairs[p].origin;) {
        const ArcId a = parent[static_cast<size_t>(v)];
        out[static_cast<size_t>(f[p][static_cast<size_t>(a)])] = 1.0;
        v = net.arc(a).tail;
      }
    }
    return out;
  };

  MilpOptions opt = to_options(config);
  opt.rel_gap = 0.0;  // the endpoint is asserted exactly downstream
  const MilpResult res = solve_milp(m, opt, start, heuristic);
  if (res.rel_gap > 1e-9)
    throw SolverError("full-service budget not solved to optimality (gap " +
                      std::to_string(res.rel_gap) + ")");
  double cost = 0.0;
  for (size_t a = 0; a < x.size(); ++a)
    if (res.values[static_cast<size_t>(x[a])] > 0.5) cost += net.arc(static_cast<int>(a)).cost;
  return cost;
}

double min_budget_positive_floor(const DesignProblem& problem, double grid_step,
                                 const SolverConfig& config) {
  if (!(grid_step > 0.0 && grid_step <= 1.0))
    throw ValidationError("grid step must lie in (0,1]");
  const double b_max = min_cost_full_service(problem, config);
  const int steps = static_cast<int>(std::ceil(1.0 / grid_step - 1e-12));
  auto budget_at = [&](int i) { return std::min(1.0, i * grid_step) * b_max; };

  auto positive_floor = [&](int i) {
    WelfareSpec spec = WelfareSpec::rawlsian();
    spec.active_pairs = problem.pairs();
    const DesignProblem probe = problem.with_budget(budget_at(i));
    const DesignModel model = build_model(probe, spec);
    const NetworkDesign design = solve_design(model, config);
    return design.floor_value.value() > 1e-6;
  };

  if (!positive_floor(steps))
    throw SolverError("no grid budget achieves a positive coverage floor");
  int lo = 0;
  int hi = steps;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (positive_floor(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return budget_at(lo);
}

}  // namespace transit
