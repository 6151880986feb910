#include "transit/graph.hpp"

#include <algorithm>
#include <queue>

namespace transit {

DistanceMatrix::DistanceMatrix(int n, double fill)
    : n_(n), d_(static_cast<size_t>(n) * static_cast<size_t>(n), fill) {}

void shortest_from(const RoadNetwork& network, NodeId source, const std::vector<char>& arc_enabled,
                   std::vector<double>& dist, std::vector<ArcId>& parent_arc) {
  const int n = network.node_count();
  dist.assign(static_cast<size_t>(n), kUnreachable);
  parent_arc.assign(static_cast<size_t>(n), -1);
  dist[static_cast<size_t>(source)] = 0.0;

  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[static_cast<size_t>(v)]) continue;  // stale entry
    for (ArcId a : network.out_arcs(v)) {
      if (!arc_enabled[static_cast<size_t>(a)]) continue;
      const Arc& arc = network.arc(a);
      const double nd = d + arc.length_km;
      if (nd < dist[static_cast<size_t>(arc.head)]) {
        dist[static_cast<size_t>(arc.head)] = nd;
        parent_arc[static_cast<size_t>(arc.head)] = a;
        heap.emplace(nd, arc.head);
      }
    }
  }
}

DistanceMatrix all_pairs_shortest(const RoadNetwork& network,
                                  std::optional<std::span<const ArcId>> restrict) {
  const int n = network.node_count();
  std::vector<char> enabled(static_cast<size_t>(network.arc_count()), 1);
  if (restrict.has_value()) {
    std::fill(enabled.begin(), enabled.end(), 0);
    for (ArcId a : *restrict) enabled[static_cast<size_t>(a)] = 1;
  }

  DistanceMatrix out(n, kUnreachable);
  std::vector<double> dist;
  std::vector<ArcId> parent;
  for (NodeId s = 0; s < n; ++s) {
    shortest_from(network, s, enabled, dist, parent);
    for (NodeId v = 0; v < n; ++v) out.set(s, v, dist[static_cast<size_t>(v)]);
  }
  return out;
}

namespace {

int reachable_count(const RoadNetwork& network, bool forward) {
  const int n = network.node_count();
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    const auto& arcs = forward ? network.out_arcs(v) : network.in_arcs(v);
    for (ArcId a : arcs) {
      NodeId w = forward ? network.arc(a).head : network.arc(a).tail;
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count;
}

}  // namespace

bool is_strongly_connected(const RoadNetwork& network) {
  const int n = network.node_count();
  if (n <= 1) return true;
  return reachable_count(network, true) == n && reachable_count(network, false) == n;
}

bool is_circulation(const RoadNetwork& network, std::span<const ArcId> arc_subset) {
  std::vector<int> balance(static_cast<size_t>(network.node_count()), 0);
  for (ArcId a : arc_subset) {
    const Arc& arc = network.arc(a);
    ++balance[static_cast<size_t>(arc.tail)];
    --balance[static_cast<size_t>(arc.head)];
  }
  return std::all_of(balance.begin(), balance.end(), [](int b) { return b == 0; });
}

}  // namespace transit
