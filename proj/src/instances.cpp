#include "transit/instances.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "transit/errors.hpp"

namespace transit {

namespace {

// Raw-engine helpers keep the draws identical across standard libraries.
int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

double rounded(double v, double step) { return std::round(v / step) * step; }

}  // namespace

DesignProblem random_instance(std::uint64_t seed, const RandomInstanceParams& params) {
  if (params.min_nodes < 2 || params.max_nodes < params.min_nodes)
    throw ValidationError("bad node range for random instances");
  std::mt19937_64 rng(seed);
  const int n = uniform_int(rng, params.min_nodes, params.max_nodes);

  std::vector<NodeId> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(order[static_cast<size_t>(i)], order[static_cast<size_t>(uniform_int(rng, 0, i))]);

  // A full node cycle guarantees strong connectivity; extra arcs add routing
  // choice.
  std::vector<std::pair<NodeId, NodeId>> chosen;
  std::vector<char> used(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    const NodeId a = order[static_cast<size_t>(i)];
    const NodeId b = order[static_cast<size_t>((i + 1) % n)];
    chosen.push_back({a, b});
    used[static_cast<size_t>(a) * static_cast<size_t>(n) + static_cast<size_t>(b)] = 1;
  }
  std::vector<std::pair<NodeId, NodeId>> rest;
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = 0; b < n; ++b)
      if (a != b && !used[static_cast<size_t>(a) * static_cast<size_t>(n) + static_cast<size_t>(b)])
        rest.push_back({a, b});
  for (int i = static_cast<int>(rest.size()) - 1; i > 0; --i)
    std::swap(rest[static_cast<size_t>(i)], rest[static_cast<size_t>(uniform_int(rng, 0, i))]);

  const int target = uniform_int(rng, std::max(params.min_arcs, n), params.max_arcs);
  for (size_t i = 0; chosen.size() < static_cast<size_t>(target) && i < rest.size(); ++i)
    chosen.push_back(rest[i]);

  std::vector<Node> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back(Node{"n" + std::to_string(i), 0.0, 0.0});
  std::vector<Arc> arcs;
  for (const auto& [a, b] : chosen)
    arcs.push_back(Arc{a, b, rounded(uniform_real(rng, 1.0, 10.0), 0.01),
                       rounded(uniform_real(rng, 1.0, 5.0), 0.01)});
  RoadNetwork network = RoadNetwork::create(std::move(nodes), std::move(arcs));

  std::vector<std::pair<OdPair, std::int64_t>> demand;
  std::vector<std::pair<OdPair, double>> priorities;
  std::vector<std::pair<OdPair, int>> groups;
  for (NodeId o = 0; o < n; ++o) {
    for (NodeId d = 0; d < n; ++d) {
      if (o == d) continue;
      demand.push_back({OdPair{o, d}, uniform_int(rng, 1, 20)});
      priorities.push_back({OdPair{o, d}, rounded(uniform_real(rng, 0.05, 0.95), 0.001)});
      groups.push_back({OdPair{o, d}, 1});
    }
  }
  const double budget = uniform_real(rng, 0.0, network.total_cost());

  return DesignProblem::create(std::move(network),
                               DemandProfile::create(n, demand),
                               PriorityProfile::create(n, priorities, groups, 1), params.alpha,
                               budget);
}

}  // namespace transit
