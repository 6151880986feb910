#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "transit/network.hpp"
#include "transit/scoring.hpp"

namespace transit {

struct TractRecord {
  std::string tract_id;
  double lat = 0.0;
  double lon = 0.0;
  double median_income = 0.0;
  double vehicle_rate = 0.0;
};

struct OdRecord {
  std::string origin;
  std::string destination;
  std::int64_t count = 0;
};

// Spherical great-circle distance in kilometers (haversine, mean radius).
double great_circle_km(double lat1, double lon1, double lat2, double lon2);

using Metric = std::function<double(const TractRecord&, const TractRecord&)>;

struct TopologySpec {
  enum class Kind { kComplete, kKnn } kind = Kind::kComplete;
  int k = 0;  // neighbors per node for kKnn

  static TopologySpec parse(const std::string& text);
  std::string to_string() const;
};

struct CostRule {
  enum class Kind { kIdentity, kScale } kind = Kind::kIdentity;
  double factor = 1.0;

  double operator()(double length_km) const {
    return kind == Kind::kIdentity ? length_km : factor * length_km;
  }
  static CostRule parse(const std::string& text);
  std::string to_string() const;
};

// Schema: tract_id,lat,lon,median_income,vehicle_rate. Duplicate ids and
// coincident centroids (< 1 m apart) are rejected.
std::vector<TractRecord> load_tracts(const std::string& path);

// Schema: origin,destination,count. Duplicate pairs are summed; unknown
// tracts and self-loops are errors. Node indices follow tract file order.
DemandProfile load_od(const std::string& path, const std::vector<TractRecord>& tracts);

// Centroid graph per the topology; arc length from the metric (great-circle
// by default), cost from the cost rule. The k-nearest-neighbor sparsifier
// adds reverse arcs for symmetry and errors out if the result is still not
// strongly connected.
RoadNetwork build_network(const std::vector<TractRecord>& tracts, const Metric& metric,
                          const CostRule& cost_rule, const TopologySpec& topology);

// Key = value run configuration (hash comments allowed).
struct ProblemConfig {
  double alpha = 2.0;
  int k = 5;
  int bins = 10;
  double epsilon = 0.01;
  double gamma = 0.01;
  double gap = 1e-4;
  std::vector<double> budget_fractions;  // empty means the driver's default grid
  CostRule cost_rule;
  TopologySpec topology;
  PairPolicy od_pairs = PairPolicy::kAllPairs;
  double p_floor = 0.05;
  double p_ceil = 0.95;
  double grid_step = 0.05;
  double time_limit_sec = 600.0;
  std::uint64_t seed = 0;

  ScoringConfig scoring() const;

  static ProblemConfig load(const std::string& path);
  static ProblemConfig parse(const std::string& text);
};

// Everything the CLI drivers need from one (tracts, od, config) triple.
struct ProblemBundle {
  std::vector<TractRecord> tracts;
  std::vector<double> tract_priorities;
  DesignProblem problem;  // budget 0; callers rebudget per run
};

ProblemBundle load_problem(const std::string& tracts_path, const std::string& od_path,
                           const ProblemConfig& config);

}  // namespace transit
