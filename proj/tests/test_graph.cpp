#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "transit/graph.hpp"

using namespace transit;

TEST_CASE("all pairs shortest on two nodes") {
  RoadNetwork net = testing::two_node_network();
  DistanceMatrix d = all_pairs_shortest(net);
  CHECK(d.at(0, 1) == 3.0);
  CHECK(d.at(1, 0) == 4.0);
  CHECK(d.at(0, 0) == 0.0);

  const std::vector<ArcId> nothing;
  DistanceMatrix e = all_pairs_shortest(net, std::span<const ArcId>(nothing));
  CHECK(e.at(0, 1) == kUnreachable);
  CHECK(e.at(1, 0) == kUnreachable);
  CHECK(e.at(0, 0) == 0.0);
}

TEST_CASE("restriction on the three-node cycle") {
  RoadNetwork net = testing::three_node_cycle_network();
  DistanceMatrix full = all_pairs_shortest(net);
  CHECK(full.at(1, 0) == 1.0);
  CHECK(full.at(0, 2) == 2.0);

  const std::vector<ArcId> forward{0, 1, 2};
  DistanceMatrix restricted = all_pairs_shortest(net, std::span<const ArcId>(forward));
  CHECK(restricted.at(1, 0) == 3.0);

  // restricting never shortens a distance
  for (NodeId o = 0; o < 3; ++o)
    for (NodeId d = 0; d < 3; ++d) CHECK(full.at(o, d) <= restricted.at(o, d));
}

TEST_CASE("strong connectivity") {
  CHECK(is_strongly_connected(RoadNetwork::create({{"x", 0, 0}}, {})));
  CHECK(is_strongly_connected(testing::three_node_cycle_network()));
  // construction rejects a one-way pair, so probe via a hand-made graph that
  // is weakly but not strongly connected
  std::vector<Node> nodes{{"a", 0, 0}, {"b", 0, 0}, {"c", 0, 0}};
  std::vector<Arc> arcs{{0, 1, 1, 1}, {1, 0, 1, 1}, {1, 2, 1, 1}, {2, 0, 1, 1}};
  CHECK(is_strongly_connected(RoadNetwork::create(nodes, arcs)));
}

TEST_CASE("circulation check") {
  RoadNetwork net = testing::three_node_cycle_network();
  CHECK(is_circulation(net, std::vector<ArcId>{}));
  CHECK(is_circulation(net, std::vector<ArcId>{0, 1, 2}));
  CHECK(is_circulation(net, std::vector<ArcId>{0, 3}));
  CHECK_FALSE(is_circulation(net, std::vector<ArcId>{0}));
  CHECK_FALSE(is_circulation(net, std::vector<ArcId>{0, 1}));
}

TEST_CASE("circulation matches direct degree counting on random subsets") {
  DesignProblem p = testing::six_node_ring(1.0);
  const RoadNetwork& net = p.network();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ArcId> subset;
    for (ArcId a = 0; a < net.arc_count(); ++a)
      if (rng() & 1) subset.push_back(a);
    std::vector<int> out_deg(6, 0), in_deg(6, 0);
    for (ArcId a : subset) {
      ++out_deg[static_cast<size_t>(net.arc(a).tail)];
      ++in_deg[static_cast<size_t>(net.arc(a).head)];
    }
    bool balanced = true;
    for (int v = 0; v < 6; ++v) balanced = balanced && out_deg[v] == in_deg[v];
    CHECK(is_circulation(net, subset) == balanced);
  }
}

TEST_CASE("triangle inequality of derived distances") {
  DesignProblem p = testing::six_node_ring(1.0);
  DistanceMatrix d = all_pairs_shortest(p.network());
  for (NodeId a = 0; a < 6; ++a)
    for (NodeId b = 0; b < 6; ++b)
      for (NodeId c = 0; c < 6; ++c) CHECK(d.at(a, b) <= d.at(a, c) + d.at(c, b) + 1e-12);
}
