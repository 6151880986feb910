#include "transit/network.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "transit/errors.hpp"
#include "transit/graph.hpp"

namespace transit {

RoadNetwork RoadNetwork::create(std::vector<Node> nodes, std::vector<Arc> arcs) {
  if (nodes.empty()) throw ValidationError("network must have at least one node");
  const int n = static_cast<int>(nodes.size());

  RoadNetwork net;
  net.nodes_ = std::move(nodes);
  net.out_.resize(static_cast<size_t>(n));
  net.in_.resize(static_cast<size_t>(n));
  for (size_t i = 0; i < arcs.size(); ++i) {
    const Arc& a = arcs[i];
    if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n)
      throw ValidationError("arc endpoint out of range");
    if (a.tail == a.head)
      throw ValidationError("self-loop arc at node " + net.nodes_[static_cast<size_t>(a.tail)].label);
    if (!std::isfinite(a.length_km) || a.length_km < 0.0)
      throw ValidationError("arc length must be finite and >= 0");
    if (!std::isfinite(a.cost) || a.cost < 0.0)
      throw ValidationError("arc cost must be finite and >= 0");
    auto [it, inserted] = net.by_endpoints_.emplace(std::make_pair(a.tail, a.head), static_cast<ArcId>(i));
    if (!inserted) throw ValidationError("duplicate arc between an ordered node pair");
    net.out_[static_cast<size_t>(a.tail)].push_back(static_cast<ArcId>(i));
    net.in_[static_cast<size_t>(a.head)].push_back(static_cast<ArcId>(i));
  }
  net.arcs_ = std::move(arcs);

  if (!is_strongly_connected(net)) throw ValidationError("network is not strongly connected");
  return net;
}

double RoadNetwork::total_cost() const {
  double sum = 0.0;
  for (const Arc& a : arcs_) sum += a.cost;
  return sum;
}

std::optional<ArcId> RoadNetwork::find_arc(NodeId tail, NodeId head) const {
  auto it = by_endpoints_.find(std::make_pair(tail, head));
  if (it == by_endpoints_.end()) return std::nullopt;
  return it->second;
}

DemandProfile DemandProfile::create(int node_count,
                                    const std::vector<std::pair<OdPair, std::int64_t>>& entries) {
  DemandProfile d;
  d.n_ = node_count;
  d.counts_.assign(static_cast<size_t>(node_count) * static_cast<size_t>(node_count), 0);
  for (const auto& [od, count] : entries) {
    if (od.origin == od.dest) throw ValidationError("demand entry with origin == destination");
    if (od.origin < 0 || od.origin >= node_count || od.dest < 0 || od.dest >= node_count)
      throw ValidationError("demand entry references unknown node");
    if (count < 0) throw ValidationError("negative demand count");
    d.counts_[static_cast<size_t>(od.origin) * static_cast<size_t>(node_count) +
              static_cast<size_t>(od.dest)] += count;
  }
  return d;
}

DemandProfile DemandProfile::uniform(int node_count, std::int64_t count) {
  DemandProfile d;
  d.n_ = node_count;
  d.counts_.assign(static_cast<size_t>(node_count) * static_cast<size_t>(node_count), count);
  return d;
}

PriorityProfile PriorityProfile::create(int node_count,
                                        const std::vector<std::pair<OdPair, double>>& priorities,
                                        const std::vector<std::pair<OdPair, int>>& groups,
                                        int group_count) {
  if (group_count < 1) throw ValidationError("group count must be >= 1");
  PriorityProfile p;
  p.n_ = node_count;
  p.k_ = group_count;
  p.p_.assign(static_cast<size_t>(node_count) * static_cast<size_t>(node_count), 0.5);
  p.group_.assign(p.p_.size(), 1);
  for (const auto& [od, pr] : priorities) {
    if (!(pr > 0.0 && pr < 1.0)) throw ValidationError("priority must lie strictly inside (0,1)");
    p.p_[p.index(od)] = pr;
  }
  for (const auto& [od, g] : groups) {
    if (g < 1 || g > group_count) throw ValidationError("group index out of range");
    p.group_[p.index(od)] = g;
  }
  return p;
}

PriorityProfile PriorityProfile::uniform(int node_count, double priority) {
  if (!(priority > 0.0 && priority < 1.0))
    throw ValidationError("priority must lie strictly inside (0,1)");
  PriorityProfile p;
  p.n_ = node_count;
  p.k_ = 1;
  p.p_.assign(static_cast<size_t>(node_count) * static_cast<size_t>(node_count), priority);
  p.group_.assign(p.p_.size(), 1);
  return p;
}

PriorityProfile PriorityProfile::with_constant_priority(double priority) const {
  if (!(priority > 0.0 && priority < 1.0))
    throw ValidationError("priority must lie strictly inside (0,1)");
  PriorityProfile p = *this;
  std::fill(p.p_.begin(), p.p_.end(), priority);
  return p;
}

double UtilityProfile::value(const OdPair& od) const {
  for (size_t i = 0; i < pairs.size(); ++i)
    if (pairs[i] == od) return values[i];
  throw ValidationError("pair not present in utility profile");
}

DesignProblem DesignProblem::create(RoadNetwork network, DemandProfile demand,
                                    PriorityProfile priority, double alpha, double budget,
                                    PairPolicy policy) {
  if (!(alpha > 1.0)) throw ValidationError("detour tolerance alpha must be > 1");
  if (!(budget >= 0.0) || !std::isfinite(budget)) throw ValidationError("budget must be >= 0");
  if (demand.node_count() != network.node_count() || priority.node_count() != network.node_count())
    throw ValidationError("demand/priority node count does not match the network");

  const int n = network.node_count();
  DistanceMatrix dist = all_pairs_shortest(network);
  std::vector<double> shortest(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0);
  std::vector<OdPair> pairs;
  for (NodeId o = 0; o < n; ++o) {
    for (NodeId d = 0; d < n; ++d) {
      if (o == d) continue;
      const double l = dist.at(o, d);
      if (!std::isfinite(l)) throw ValidationError("shortest-path matrix has an unreachable pair");
      if (l <= 0.0)
        throw ValidationError("coincident centroids: zero shortest distance between " +
                              network.nodes()[static_cast<size_t>(o)].label + " and " +
                              network.nodes()[static_cast<size_t>(d)].label +
                              "; merge them upstream");
      shortest[static_cast<size_t>(o) * static_cast<size_t>(n) + static_cast<size_t>(d)] = l;
      OdPair od{o, d};
      if (policy == PairPolicy::kAllPairs || demand.count(od) > 0) pairs.push_back(od);
    }
  }
  if (pairs.empty()) throw ValidationError("problem has no origin-destination pairs");

  DesignProblem p(std::move(network), std::move(demand), std::move(priority));
  p.alpha_ = alpha;
  p.budget_ = budget;
  p.policy_ = policy;
  p.pairs_ = std::move(pairs);
  p.shortest_ = std::move(shortest);
  return p;
}

DesignProblem DesignProblem::with_budget(double budget) const {
  if (!(budget >= 0.0) || !std::isfinite(budget)) throw ValidationError("budget must be >= 0");
  DesignProblem p = *this;
  p.budget_ = budget;
  return p;
}

DesignProblem DesignProblem::with_priority(PriorityProfile priority) const {
  if (priority.node_count() != network_.node_count())
    throw ValidationError("priority node count does not match the network");
  DesignProblem p = *this;
  p.priority_ = std::move(priority);
  return p;
}

double trip_utility(double path_km, double shortest_km, double alpha) {
  if (!(shortest_km > 0.0) || !std::isfinite(shortest_km))
    throw ValidationError("shortest length must be finite and > 0");
  if (!(alpha > 1.0)) throw ValidationError("detour tolerance alpha must be > 1");
  if (path_km < shortest_km) throw ValidationError("path length below the shortest length");
  if (path_km == shortest_km) return 1.0;
  if (path_km >= alpha * shortest_km) return 0.0;  // covers the unreachable sentinel
  return -path_km / (shortest_km * (alpha - 1.0)) + alpha / (alpha - 1.0);
}

UtilityProfile evaluate_utility_profile(const DesignProblem& problem,
                                        const std::vector<ArcId>& installed) {
  const RoadNetwork& net = problem.network();
  for (ArcId a : installed)
    if (a < 0 || a >= net.arc_count()) throw ValidationError("installed arc id out of range");

  DistanceMatrix dist = all_pairs_shortest(net, std::span<const ArcId>(installed));
  UtilityProfile u;
  u.pairs = problem.pairs();
  u.values.reserve(u.pairs.size());
  for (const OdPair& od : u.pairs)
    u.values.push_back(trip_utility(dist.at(od.origin, od.dest), problem.shortest(od), problem.alpha()));
  return u;
}

double welfare_utilitarian(const UtilityProfile& u, const DemandProfile& b,
                           const PriorityProfile& p) {
  if (b.node_count() != p.node_count())
    throw ValidationError("demand and priority profiles cover different node sets");
  double sum = 0.0;
  for (size_t i = 0; i < u.pairs.size(); ++i) {
    const OdPair& od = u.pairs[i];
    if (od.origin >= b.node_count() || od.dest >= b.node_count())
      throw ValidationError("utility profile pair outside the demand profile's OD set");
    sum += static_cast<double>(b.count(od)) * p.priority(od) * u.values[i];
  }
  return sum;
}

double welfare_maxmin(const UtilityProfile& u, const PriorityProfile& p,
                      std::optional<std::span<const OdPair>> restrict) {
  double best = kUnreachable;
  if (restrict.has_value()) {
    if (restrict->empty()) throw ValidationError("max-min restriction set is empty");
    for (const OdPair& od : *restrict)
      best = std::min(best, (1.0 - p.priority(od)) * u.value(od));
  } else {
    if (u.pairs.empty()) throw ValidationError("max-min over an empty utility profile");
    for (size_t i = 0; i < u.pairs.size(); ++i)
      best = std::min(best, (1.0 - p.priority(u.pairs[i])) * u.values[i]);
  }
  return best;
}

double welfare_tradeoff(const UtilityProfile& u, const DemandProfile& b, const PriorityProfile& p,
                        double gamma, std::optional<std::span<const OdPair>> restrict) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ValidationError("gamma must lie in (0,1]");
  return gamma * welfare_utilitarian(u, b, p) + (1.0 - gamma) * welfare_maxmin(u, p, restrict);
}

}  // namespace transit
