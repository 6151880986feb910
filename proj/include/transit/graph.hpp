#pragma once

#include <optional>
#include <span>
#include <vector>

#include "transit/network.hpp"

namespace transit {

// Dense all-pairs distance matrix in kilometers; kUnreachable where no path.
class DistanceMatrix {
 public:
  DistanceMatrix(int n, double fill);

  int size() const { return n_; }
  double at(NodeId o, NodeId d) const {
    return d_[static_cast<size_t>(o) * static_cast<size_t>(n_) + static_cast<size_t>(d)];
  }
  void set(NodeId o, NodeId d, double v) {
    d_[static_cast<size_t>(o) * static_cast<size_t>(n_) + static_cast<size_t>(d)] = v;
  }

 private:
  int n_ = 0;
  std::vector<double> d_;
};

// Exact shortest-path distances from every node, optionally restricted to an
// arc subset. Label-setting (Dijkstra) per source; arc lengths are nonnegative
// by RoadNetwork construction.
DistanceMatrix all_pairs_shortest(const RoadNetwork& network,
                                  std::optional<std::span<const ArcId>> restrict = std::nullopt);

// Single-source variant with parent tracking so flow paths can be recovered.
// parent_arc[v] is the arc entering v on a shortest path from source (-1 at
// the source and for unreachable nodes).
void shortest_from(const RoadNetwork& network, NodeId source, const std::vector<char>& arc_enabled,
                   std::vector<double>& dist, std::vector<ArcId>& parent_arc);

bool is_strongly_connected(const RoadNetwork& network);

// True iff every node has equal selected in- and out-degree (the
// self-rebalancing requirement on installed transit arcs).
bool is_circulation(const RoadNetwork& network, std::span<const ArcId> arc_subset);

}  // namespace transit
