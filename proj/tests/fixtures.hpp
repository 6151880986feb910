#pragma once

#include <vector>

#include "transit/network.hpp"

namespace transit::testing {

// Three nodes, six arcs; forward cycle t1->t2->t3->t1 with lengths 1,1,2 and
// the reverse arcs with the same lengths; costs equal lengths.
// Arc ids: 0: 0->1(1), 1: 1->2(1), 2: 2->0(2), 3: 1->0(1), 4: 2->1(1), 5: 0->2(2).
inline RoadNetwork three_node_cycle_network() {
  std::vector<Node> nodes{{"t1", 0, 0}, {"t2", 0, 0}, {"t3", 0, 0}};
  std::vector<Arc> arcs{{0, 1, 1, 1}, {1, 2, 1, 1}, {2, 0, 2, 2},
                        {1, 0, 1, 1}, {2, 1, 1, 1}, {0, 2, 2, 2}};
  return RoadNetwork::create(nodes, arcs);
}

inline DesignProblem three_node_cycle(double budget,
                                      std::vector<std::pair<OdPair, std::int64_t>> demand = {},
                                      double priority = 0.5, double alpha = 2.0) {
  RoadNetwork net = three_node_cycle_network();
  DemandProfile b = demand.empty() ? DemandProfile::uniform(3, 1) : DemandProfile::create(3, demand);
  return DesignProblem::create(std::move(net), std::move(b), PriorityProfile::uniform(3, priority),
                               alpha, budget);
}

// Two nodes joined both ways; costs 3 and 4.
inline RoadNetwork two_node_network() {
  std::vector<Node> nodes{{"a", 0, 0}, {"b", 0, 0}};
  std::vector<Arc> arcs{{0, 1, 3, 3}, {1, 0, 4, 4}};
  return RoadNetwork::create(nodes, arcs);
}

// Four nodes on a doubled ring with side lengths 1.0, 1.2, 1.0, 1.4 (costs
// equal lengths); twelve OD pairs.
inline RoadNetwork four_node_ring_network() {
  std::vector<Node> nodes{{"r0", 0, 0}, {"r1", 0, 0}, {"r2", 0, 0}, {"r3", 0, 0}};
  const double side[4] = {1.0, 1.2, 1.0, 1.4};
  std::vector<Arc> arcs;
  for (int i = 0; i < 4; ++i) {
    const int j = (i + 1) % 4;
    arcs.push_back({i, j, side[i], side[i]});
    arcs.push_back({j, i, side[i], side[i]});
  }
  return RoadNetwork::create(nodes, arcs);
}

// Distinct per-origin priorities so floor selection and tie-breaks are
// exercised; demands vary per pair.
inline DesignProblem four_node_ring(double budget, double alpha = 2.0) {
  RoadNetwork net = four_node_ring_network();
  const double origin_priority[4] = {0.9, 0.7, 0.5, 0.3};
  std::vector<std::pair<OdPair, std::int64_t>> demand;
  std::vector<std::pair<OdPair, double>> priorities;
  std::vector<std::pair<OdPair, int>> groups;
  int c = 0;
  for (NodeId o = 0; o < 4; ++o) {
    for (NodeId d = 0; d < 4; ++d) {
      if (o == d) continue;
      demand.push_back({OdPair{o, d}, 1 + (c++ % 5)});
      priorities.push_back({OdPair{o, d}, origin_priority[o]});
      groups.push_back({OdPair{o, d}, static_cast<int>(o) + 1});
    }
  }
  return DesignProblem::create(std::move(net), DemandProfile::create(4, demand),
                               PriorityProfile::create(4, priorities, groups, 4), alpha, budget);
}

// Six nodes on a doubled ring (twelve arcs), thirty pairs, mixed demands.
inline DesignProblem six_node_ring(double budget, double alpha = 2.0) {
  std::vector<Node> nodes;
  for (int i = 0; i < 6; ++i) nodes.push_back({"s" + std::to_string(i), 0, 0});
  const double side[6] = {1.0, 1.1, 0.9, 1.3, 1.0, 1.2};
  std::vector<Arc> arcs;
  for (int i = 0; i < 6; ++i) {
    const int j = (i + 1) % 6;
    arcs.push_back({i, j, side[i], side[i]});
    arcs.push_back({j, i, side[i], side[i]});
  }
  RoadNetwork net = RoadNetwork::create(nodes, arcs);

  const double origin_priority[6] = {0.9, 0.8, 0.6, 0.5, 0.3, 0.2};
  std::vector<std::pair<OdPair, std::int64_t>> demand;
  std::vector<std::pair<OdPair, double>> priorities;
  std::vector<std::pair<OdPair, int>> groups;
  int c = 0;
  for (NodeId o = 0; o < 6; ++o) {
    for (NodeId d = 0; d < 6; ++d) {
      if (o == d) continue;
      demand.push_back({OdPair{o, d}, 1 + (c * 7 + 3) % 9});
      priorities.push_back({OdPair{o, d}, origin_priority[o]});
      groups.push_back({OdPair{o, d}, static_cast<int>(o / 2) + 1});
      ++c;
    }
  }
  return DesignProblem::create(std::move(net), DemandProfile::create(6, demand),
                               PriorityProfile::create(6, priorities, groups, 3), alpha, budget);
}

}  // namespace transit::testing
