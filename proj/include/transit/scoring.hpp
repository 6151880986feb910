#pragma once

#include <span>
#include <vector>

#include "transit/network.hpp"

namespace transit {

struct TractAttributes {
  double median_income = 0.0;  // currency units, > 0
  double vehicle_rate = 0.0;   // fraction of households, in [0,1]
};

struct ScoringConfig {
  int bins = 10;
  double epsilon = 0.01;  // keeps the top bin strictly below 1
  double p_floor = 0.05;  // priority clamp interval
  double p_ceil = 0.95;
  int groups = 5;

  void validate() const;
};

// Equal-width bins over [min, max]; bin j of `bins` scores j/bins except the
// top bin, which scores 1 - epsilon. All-equal input lands in bin 1.
std::vector<double> bin_scores(std::span<const double> values, int bins, double epsilon);

// Sum of the income and vehicle-ownership bin scores, normalized by the
// maximum and inverted so the lowest-resourced tract gets the highest
// priority, rescaled into [p_floor, p_ceil]. A single tract degenerates to
// the interval midpoint.
std::vector<double> tract_priority(std::span<const TractAttributes> tracts,
                                   const ScoringConfig& config);

// Uniform-width grouping over the observed priority range; the interval with
// the largest priorities is group 1 and boundary values go to the
// higher-priority side.
std::vector<int> assign_groups(std::span<const double> priorities, int k);

// Labels every ordered pair with its origin tract's priority and groups the
// pairs over the resulting range.
PriorityProfile od_priorities(std::span<const double> tract_priorities, int k_groups);

}  // namespace transit
