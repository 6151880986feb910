#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace transit {

using NodeId = int;
using ArcId = int;

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

struct Node {
  std::string label;  // opaque tract label
  double lat = 0.0;   // decimal degrees
  double lon = 0.0;
};

struct Arc {
  NodeId tail = -1;
  NodeId head = -1;
  double length_km = 0.0;
  double cost = 0.0;  // budget units
};

// Ordered origin-destination pair, o != d.
struct OdPair {
  NodeId origin = -1;
  NodeId dest = -1;

  friend bool operator==(const OdPair&, const OdPair&) = default;
  friend auto operator<=>(const OdPair&, const OdPair&) = default;
};

// Directed road graph of tract centroids with per-arc length and installation
// cost. Immutable after construction; construction validates no self-loops,
// at most one arc per ordered pair, finite nonnegative weights, and strong
// connectivity.
class RoadNetwork {
 public:
  static RoadNetwork create(std::vector<Node> nodes, std::vector<Arc> arcs);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(ArcId a) const { return arcs_[static_cast<size_t>(a)]; }
  const std::vector<ArcId>& out_arcs(NodeId v) const { return out_[static_cast<size_t>(v)]; }
  const std::vector<ArcId>& in_arcs(NodeId v) const { return in_[static_cast<size_t>(v)]; }
  double total_cost() const;
  std::optional<ArcId> find_arc(NodeId tail, NodeId head) const;

 private:
  RoadNetwork() = default;

  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcId>> out_;
  std::vector<std::vector<ArcId>> in_;
  std::map<std::pair<NodeId, NodeId>, ArcId> by_endpoints_;
};

// Riders per time window for every ordered pair; absent entries mean zero.
class DemandProfile {
 public:
  static DemandProfile create(int node_count,
                              const std::vector<std::pair<OdPair, std::int64_t>>& entries);
  static DemandProfile uniform(int node_count, std::int64_t count);

  int node_count() const { return n_; }
  std::int64_t count(const OdPair& od) const {
    return counts_[static_cast<size_t>(od.origin) * static_cast<size_t>(n_) +
                   static_cast<size_t>(od.dest)];
  }

 private:
  int n_ = 0;
  std::vector<std::int64_t> counts_;
};

// Per-pair priority score in (0,1) plus the pair's priority group (1 = highest).
class PriorityProfile {
 public:
  static PriorityProfile create(int node_count, const std::vector<std::pair<OdPair, double>>& priorities,
                                const std::vector<std::pair<OdPair, int>>& groups, int group_count);
  // All pairs share one priority and live in group 1 (the equal-priority baseline).
  static PriorityProfile uniform(int node_count, double priority);

  int node_count() const { return n_; }
  int group_count() const { return k_; }
  double priority(const OdPair& od) const { return p_[index(od)]; }
  int group(const OdPair& od) const { return group_[index(od)]; }

  // Same groups, constant priority; used for the equal-priority counterpart runs.
  PriorityProfile with_constant_priority(double priority) const;

 private:
  size_t index(const OdPair& od) const {
    return static_cast<size_t>(od.origin) * static_cast<size_t>(n_) + static_cast<size_t>(od.dest);
  }

  int n_ = 0;
  int k_ = 1;
  std::vector<double> p_;
  std::vector<int> group_;
};

// Utility values in [0,1] over an explicit pair set.
struct UtilityProfile {
  std::vector<OdPair> pairs;
  std::vector<double> values;

  double value(const OdPair& od) const;
};

enum class PairPolicy {
  kAllPairs,        // D = every ordered pair o != d
  kPositiveDemand,  // D restricted to pairs with demand > 0
};

// The full model input: network + demand + priorities + detour tolerance +
// budget, with the all-arcs shortest-path matrix precomputed.
class DesignProblem {
 public:
  static DesignProblem create(RoadNetwork network, DemandProfile demand, PriorityProfile priority,
                              double alpha, double budget,
                              PairPolicy policy = PairPolicy::kAllPairs);

  const RoadNetwork& network() const { return network_; }
  const DemandProfile& demand() const { return demand_; }
  const PriorityProfile& priority() const { return priority_; }
  double alpha() const { return alpha_; }
  double budget() const { return budget_; }
  const std::vector<OdPair>& pairs() const { return pairs_; }
  double shortest(const OdPair& od) const {
    return shortest_[static_cast<size_t>(od.origin) * static_cast<size_t>(network_.node_count()) +
                     static_cast<size_t>(od.dest)];
  }

  DesignProblem with_budget(double budget) const;
  DesignProblem with_priority(PriorityProfile priority) const;

 private:
  DesignProblem(RoadNetwork network, DemandProfile demand, PriorityProfile priority)
      : network_(std::move(network)), demand_(std::move(demand)), priority_(std::move(priority)) {}

  RoadNetwork network_;
  DemandProfile demand_;
  PriorityProfile priority_;
  double alpha_ = 2.0;
  double budget_ = 0.0;
  PairPolicy policy_ = PairPolicy::kAllPairs;
  std::vector<OdPair> pairs_;
  std::vector<double> shortest_;  // dense node_count x node_count
};

// Piece-wise linear passenger utility: 1 at the shortest length, linearly
// falling to 0 at alpha times the shortest length, 0 beyond (or unreachable).
double trip_utility(double path_km, double shortest_km, double alpha);

// Utility of every pair under an installed arc subset, evaluated by shortest
// paths on the installed subgraph only (no solver involvement). The subset
// need not be a circulation.
UtilityProfile evaluate_utility_profile(const DesignProblem& problem,
                                        const std::vector<ArcId>& installed);

// Sum of b * p * u over the profile's pairs.
double welfare_utilitarian(const UtilityProfile& u, const DemandProfile& b,
                           const PriorityProfile& p);

// Min of (1 - p) * u over the restricted pair set (all pairs when absent).
double welfare_maxmin(const UtilityProfile& u, const PriorityProfile& p,
                      std::optional<std::span<const OdPair>> restrict = std::nullopt);

// gamma * utilitarian + (1 - gamma) * maxmin, gamma in (0, 1].
double welfare_tradeoff(const UtilityProfile& u, const DemandProfile& b, const PriorityProfile& p,
                        double gamma,
                        std::optional<std::span<const OdPair>> restrict = std::nullopt);

}  // namespace transit
