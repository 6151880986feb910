#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "transit/milp.hpp"
#include "transit/network.hpp"
#include "transit/objectives.hpp"

namespace transit {

struct SolverConfig {
  double gap = 1e-4;             // relative optimality gap
  double time_limit_sec = 600.0;
  std::uint64_t seed = 0;
  int verbosity = 0;
};

// A solved design extracted from the optimizer and normalized so that every
// served pair travels a shortest path of the installed subgraph.
struct NetworkDesign {
  std::vector<ArcId> installed;
  std::vector<OdPair> served;
  std::map<OdPair, std::vector<ArcId>> paths;  // served pairs only, in travel order
  std::map<OdPair, double> path_lengths;       // served pairs only, km
  UtilityProfile utilities;                    // every problem pair; 0 when unserved
  double objective = 0.0;
  double gap = 0.0;
  double best_bound = 0.0;
  double wall_seconds = 0.0;
  long nodes = 0;
  std::optional<double> floor_value;  // min (1-p)u over the objective's active pairs
};

// The constraint system for one solve plus the variable registry needed to
// inject warm starts and read solutions back.
struct DesignModel {
  MilpModel milp;
  const DesignProblem* problem = nullptr;
  WelfareSpec spec;
  std::map<OdPair, double> floors;

  std::vector<int> x;               // per arc
  std::vector<int> y;               // per pair index
  std::vector<std::vector<int>> f;  // [pair index][arc]
  std::vector<int> len;             // per pair index
  std::vector<int> util;            // per pair index
  int z = -1;                       // floor epigraph variable, -1 when absent
};

// Emits exactly the budget, balance, flow, linking, length, detour and
// utility constraints, plus the floor epigraph for min-term objectives and
// one constraint per frozen floor.
DesignModel build_model(const DesignProblem& problem, const WelfareSpec& spec,
                        const std::map<OdPair, double>& floors = {});

// Runs branch and bound and extracts a certified NetworkDesign. The warm
// start, when given, is feasibility-checked before injection.
NetworkDesign solve_design(const DesignModel& model, const SolverConfig& config,
                           const std::optional<NetworkDesign>& warm_start = std::nullopt);

// Converts a design into a full variable assignment for `model` (used for
// warm starts; exposed for tests).
std::vector<double> design_to_assignment(const DesignModel& model, const NetworkDesign& design);

// Least budget serving every pair at its shortest path (the sweep's upper
// budget endpoint), solved exactly.
double min_cost_full_service(const DesignProblem& problem, const SolverConfig& config = {});

// Smallest grid budget (resolution grid_step * B_max) at which the 0.01
// trade-off solve reaches a strictly positive coverage floor; binary search
// over the grid.
double min_budget_positive_floor(const DesignProblem& problem, double grid_step,
                                 const SolverConfig& config = {});

}  // namespace transit
