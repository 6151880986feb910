#include "transit/welfare.hpp"

#include <algorithm>
#include <map>

#include "transit/errors.hpp"

namespace transit {

NetworkDesign solve_utilitarian(const DesignProblem& problem, const SolverConfig& config) {
  const DesignModel model = build_model(problem, WelfareSpec::utilitarian());
  return solve_design(model, config);
}

NetworkDesign solve_tradeoff(const DesignProblem& problem, double gamma,
                             const SolverConfig& config) {
  WelfareSpec spec = WelfareSpec::tradeoff(gamma);
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ValidationError("gamma must lie in (0,1]");
  spec.active_pairs = problem.pairs();
  const DesignModel model = build_model(problem, spec);
  return solve_design(model, config);
}

OdPair select_floor_pair(const UtilityProfile& u, const PriorityProfile& p,
                         std::span<const OdPair> remaining, double tol) {
  if (remaining.empty()) throw ValidationError("floor selection over an empty pair set");
  double min_value = kUnreachable;
  for (const OdPair& od : remaining)
    min_value = std::min(min_value, (1.0 - p.priority(od)) * u.value(od));

  OdPair best = remaining.front();
  bool first = true;
  for (const OdPair& od : remaining) {
    if ((1.0 - p.priority(od)) * u.value(od) > min_value + tol) continue;
    if (first || p.priority(od) > p.priority(best) ||
        (p.priority(od) == p.priority(best) && od < best)) {
      best = od;
      first = false;
    }
  }
  return best;
}

LeximaxTrace solve_leximax(const DesignProblem& problem, double gamma, int max_iterations,
                           const SolverConfig& config) {
  const int total = static_cast<int>(problem.pairs().size());
  if (max_iterations < 1 || max_iterations > total)
    throw ValidationError("iteration count must lie in [1, |D|]");

  LeximaxTrace trace;
  std::vector<OdPair> active = problem.pairs();
  std::map<OdPair, double> floors;
  std::optional<NetworkDesign> warm;

  for (int k = 1; k <= max_iterations; ++k) {
    WelfareSpec spec{WelfareKind::kLeximax, gamma, active, 1e-6};
    NetworkDesign design;
    try {
      const DesignModel model = build_model(problem, spec, floors);
      design = solve_design(model, config, warm);
    } catch (const SolverError& e) {
      trace.aborted = true;
      trace.abort_reason = e.what();
      return trace;
    }

    const OdPair removed =
        select_floor_pair(design.utilities, problem.priority(), active, spec.tie_tolerance);
    LeximaxIteration it;
    it.iteration = k;
    it.removed = removed;
    it.frozen_floor = design.utilities.value(removed);
    it.floor_value = design.floor_value.value();
    it.objective = design.objective;
    double sum_active = 0.0;
    for (const OdPair& od : active) sum_active += design.utilities.value(od);
    it.avg_utility_remaining = sum_active / static_cast<double>(active.size());
    double sum_all = 0.0;
    for (double v : design.utilities.values) sum_all += v;
    it.avg_utility_all = sum_all / static_cast<double>(design.utilities.values.size());

    floors[removed] = it.frozen_floor;
    active.erase(std::find(active.begin(), active.end(), removed));
    warm = design;
    it.design = std::move(design);
    trace.iterations.push_back(std::move(it));
  }
  return trace;
}

}  // namespace transit
