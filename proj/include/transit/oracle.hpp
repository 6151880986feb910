#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "transit/network.hpp"

namespace transit {

// Caps for the exhaustive harness; instances beyond them are refused rather
// than degraded.
struct EnumerationBudget {
  int max_arcs = 12;
  int max_nodes = 6;
  std::uint64_t max_subsets = std::uint64_t{1} << 20;
};

// All budget-feasible circulations, in increasing bitmask order.
std::vector<std::vector<ArcId>> enumerate_feasible(const RoadNetwork& network, double budget,
                                                   const EnumerationBudget& caps = {});

struct OracleOptimum {
  double value = 0.0;
  std::vector<ArcId> best;   // first argmax in enumeration order
  std::uint64_t evaluated = 0;  // feasible circulations scored
};

// Exhaustively maximizes welfare(evaluate_utility_profile(S)) over the
// budget-feasible circulations of the problem's network. Utilities come from
// shortest paths on the installed subgraph, never from solver variables.
OracleOptimum brute_force_optimum(const DesignProblem& problem,
                                  const std::function<double(const UtilityProfile&)>& welfare,
                                  const EnumerationBudget& caps = {});

}  // namespace transit
