#pragma once

#include <span>
#include <string>
#include <vector>

#include "transit/builder.hpp"
#include "transit/objectives.hpp"

namespace transit {

struct LeximaxIteration {
  int iteration = 0;  // 1-based
  OdPair removed;
  double frozen_floor = 0.0;  // utility conserved for the removed pair
  double floor_value = 0.0;   // min (1-p)u over the pairs still in the objective
  double objective = 0.0;
  double avg_utility_remaining = 0.0;  // over the active set of this iteration
  double avg_utility_all = 0.0;
  NetworkDesign design;
};

struct LeximaxTrace {
  std::vector<LeximaxIteration> iterations;
  bool aborted = false;  // solver failure mid-run leaves a partial trace
  std::string abort_reason;
};

NetworkDesign solve_utilitarian(const DesignProblem& problem, const SolverConfig& config = {});

// Maximizes gamma * ridership + (1 - gamma) * coverage floor; the returned
// design carries the achieved floor value.
NetworkDesign solve_tradeoff(const DesignProblem& problem, double gamma,
                             const SolverConfig& config = {});

// The pair setting the floor: argmin (1-p)u over `remaining`; ties within
// `tol` go to the higher priority score, then to the lexicographically
// smallest pair.
OdPair select_floor_pair(const UtilityProfile& u, const PriorityProfile& p,
                         std::span<const OdPair> remaining, double tol);

// Iterative floor raising: each round optimizes the trade-off objective over
// the surviving pairs, freezes the worst pair's utility as a constraint on
// all later rounds, and drops it from the objective. Warm-started throughout.
LeximaxTrace solve_leximax(const DesignProblem& problem, double gamma, int max_iterations,
                           const SolverConfig& config = {});

}  // namespace transit
