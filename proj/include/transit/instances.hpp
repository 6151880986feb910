#pragma once

#include <cstdint>

#include "transit/network.hpp"

namespace transit {

struct RandomInstanceParams {
  int min_nodes = 4;
  int max_nodes = 5;
  int min_arcs = 6;
  int max_arcs = 10;
  double alpha = 2.0;
};

// Strongly connected random instance (a node cycle plus extra arcs) with
// integer demands in [1,20], priorities in [0.05,0.95], and a budget drawn
// uniformly from [0, total arc cost]. Deterministic per seed.
DesignProblem random_instance(std::uint64_t seed, const RandomInstanceParams& params = {});

}  // namespace transit
