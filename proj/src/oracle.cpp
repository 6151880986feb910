#include "transit/oracle.hpp"

#include <string>

#include "transit/errors.hpp"
#include "transit/graph.hpp"

namespace transit {

namespace {

void check_caps(const RoadNetwork& network, const EnumerationBudget& caps) {
  if (caps.max_arcs <= 0 || caps.max_nodes <= 0 || caps.max_subsets == 0)
    throw OracleError("enumeration caps must be positive");
  if (network.arc_count() > caps.max_arcs)
    throw OracleError("instance has " + std::to_string(network.arc_count()) +
                      " arcs, beyond the enumeration cap of " + std::to_string(caps.max_arcs));
  if (network.node_count() > caps.max_nodes)
    throw OracleError("instance has " + std::to_string(network.node_count()) +
                      " nodes, beyond the enumeration cap of " + std::to_string(caps.max_nodes));
  if (network.arc_count() >= 63 ||
      (std::uint64_t{1} << network.arc_count()) > caps.max_subsets)
    throw OracleError("subset count exceeds the enumeration cap");
}

// Shared bitmask scan; calls visit(subset) for every feasible circulation.
template <typename Visit>
void scan(const RoadNetwork& network, double budget, Visit&& visit) {
  const int m = network.arc_count();
  const std::uint64_t end = std::uint64_t{1} << m;
  std::vector<ArcId> subset;
  std::vector<int> balance(static_cast<size_t>(network.node_count()));
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    double cost = 0.0;
    bool within = true;
    for (int a = 0; a < m; ++a) {
      if (!(mask >> a & 1)) continue;
      cost += network.arc(a).cost;
      if (cost > budget + 1e-9) {
        within = false;
        break;
      }
    }
    if (!within) continue;
    std::fill(balance.begin(), balance.end(), 0);
    for (int a = 0; a < m; ++a) {
      if (!(mask >> a & 1)) continue;
      ++balance[static_cast<size_t>(network.arc(a).tail)];
      --balance[static_cast<size_t>(network.arc(a).head)];
    }
    bool balanced = true;
    for (int b : balance) {
      if (b != 0) {
        balanced = false;
        break;
      }
    }
    if (!balanced) continue;
    subset.clear();
    for (int a = 0; a < m; ++a)
      if (mask >> a & 1) subset.push_back(a);
    visit(subset);
  }
}

}  // namespace

std::vector<std::vector<ArcId>> enumerate_feasible(const RoadNetwork& network, double budget,
                                                   const EnumerationBudget& caps) {
  check_caps(network, caps);
  std::vector<std::vector<ArcId>> out;
  scan(network, budget, [&](const std::vector<ArcId>& s) { out.push_back(s); });
  return out;
}

OracleOptimum brute_force_optimum(const DesignProblem& problem,
                                  const std::function<double(const UtilityProfile&)>& welfare,
                                  const EnumerationBudget& caps) {
  check_caps(problem.network(), caps);
  OracleOptimum best;
  bool first = true;
  scan(problem.network(), problem.budget(), [&](const std::vector<ArcId>& s) {
    const double v = welfare(evaluate_utility_profile(problem, s));
    ++best.evaluated;
    if (first || v > best.value) {
      best.value = v;
      best.best = s;
      first = false;
    }
  });
  if (first) throw OracleError("no feasible circulation found (not even the empty set?)");
  return best;
}

}  // namespace transit
