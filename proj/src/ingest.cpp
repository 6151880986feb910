#include "transit/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "transit/errors.hpp"
#include "transit/graph.hpp"

namespace transit {

namespace {

constexpr double kEarthRadiusKm = 6371.0088;
constexpr double kCoincidentKm = 0.001;  // below one meter, centroids must be merged

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double parse_double(const std::string& s, const std::string& what, int line_no) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("line " + std::to_string(line_no) + ": cannot parse " + what + " from '" +
                          s + "'");
  }
}

std::int64_t parse_count(const std::string& s, int line_no) {
  try {
    size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("line " + std::to_string(line_no) + ": cannot parse count from '" + s +
                          "'");
  }
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

double great_circle_km(double lat1, double lon1, double lat2, double lon2) {
  constexpr double deg = std::numbers::pi / 180.0;
  const double phi1 = lat1 * deg;
  const double phi2 = lat2 * deg;
  const double dphi = (lat2 - lat1) * deg;
  const double dlmb = (lon2 - lon1) * deg;
  const double a = std::sin(dphi / 2) * std::sin(dphi / 2) +
                   std::cos(phi1) * std::cos(phi2) * std::sin(dlmb / 2) * std::sin(dlmb / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(a)));
}

TopologySpec TopologySpec::parse(const std::string& text) {
  if (text == "complete") return {Kind::kComplete, 0};
  if (text.rfind("knn:", 0) == 0) {
    const int k = static_cast<int>(parse_count(text.substr(4), 0));
    if (k < 1) throw ValidationError("knn topology needs k >= 1");
    return {Kind::kKnn, k};
  }
  throw ValidationError("unknown topology '" + text + "' (expected complete or knn:<k>)");
}

std::string TopologySpec::to_string() const {
  return kind == Kind::kComplete ? "complete" : "knn:" + std::to_string(k);
}

CostRule CostRule::parse(const std::string& text) {
  if (text == "identity") return {Kind::kIdentity, 1.0};
  if (text.rfind("scale:", 0) == 0) {
    const double f = std::stod(text.substr(6));
    if (!(f > 0.0)) throw ValidationError("cost scale factor must be > 0");
    return {Kind::kScale, f};
  }
  throw ValidationError("unknown cost rule '" + text + "' (expected identity or scale:<factor>)");
}

std::string CostRule::to_string() const {
  if (kind == Kind::kIdentity) return "identity";
  std::ostringstream os;
  os << "scale:" << factor;
  return os.str();
}

std::vector<TractRecord> load_tracts(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty()) throw ValidationError(path + ": empty file");
  if (split_csv(lines[0]) !=
      std::vector<std::string>{"tract_id", "lat", "lon", "median_income", "vehicle_rate"})
    throw ValidationError(path + ": expected header tract_id,lat,lon,median_income,vehicle_rate");

  std::vector<TractRecord> tracts;
  std::map<std::string, int> seen;
  for (size_t i = 1; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    if (trim(lines[i]).empty()) continue;
    const auto f = split_csv(lines[i]);
    if (f.size() != 5)
      throw ValidationError("line " + std::to_string(line_no) + ": expected 5 fields, got " +
                            std::to_string(f.size()));
    TractRecord t;
    t.tract_id = f[0];
    t.lat = parse_double(f[1], "lat", line_no);
    t.lon = parse_double(f[2], "lon", line_no);
    t.median_income = parse_double(f[3], "median_income", line_no);
    t.vehicle_rate = parse_double(f[4], "vehicle_rate", line_no);
    if (t.tract_id.empty())
      throw ValidationError("line " + std::to_string(line_no) + ": empty tract_id");
    if (t.lat < -90.0 || t.lat > 90.0)
      throw ValidationError("tract " + t.tract_id + ": latitude outside [-90,90]");
    if (t.lon < -180.0 || t.lon > 180.0)
      throw ValidationError("tract " + t.tract_id + ": longitude outside [-180,180]");
    if (!(t.median_income > 0.0))
      throw ValidationError("tract " + t.tract_id + ": median income must be > 0");
    if (t.vehicle_rate < 0.0 || t.vehicle_rate > 1.0)
      throw ValidationError("tract " + t.tract_id + ": vehicle rate outside [0,1]");
    if (!seen.emplace(t.tract_id, line_no).second)
      throw ValidationError("line " + std::to_string(line_no) + ": duplicate tract_id " +
                            t.tract_id);
    tracts.push_back(std::move(t));
  }
  if (tracts.empty()) throw ValidationError(path + ": no tracts");

  for (size_t i = 0; i < tracts.size(); ++i) {
    for (size_t j = i + 1; j < tracts.size(); ++j) {
      if (great_circle_km(tracts[i].lat, tracts[i].lon, tracts[j].lat, tracts[j].lon) <
          kCoincidentKm)
        throw ValidationError("tracts " + tracts[i].tract_id + " and " + tracts[j].tract_id +
                              " have coincident centroids; merge them before loading");
    }
  }
  return tracts;
}

DemandProfile load_od(const std::string& path, const std::vector<TractRecord>& tracts) {
  std::map<std::string, NodeId> index;
  for (size_t i = 0; i < tracts.size(); ++i) index[tracts[i].tract_id] = static_cast<NodeId>(i);

  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty()) throw ValidationError(path + ": empty file");
  if (split_csv(lines[0]) != std::vector<std::string>{"origin", "destination", "count"})
    throw ValidationError(path + ": expected header origin,destination,count");

  std::vector<OdRecord> records;
  for (size_t i = 1; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    if (trim(lines[i]).empty()) continue;
    const auto f = split_csv(lines[i]);
    if (f.size() != 3)
      throw ValidationError("line " + std::to_string(line_no) + ": expected 3 fields, got " +
                            std::to_string(f.size()));
    OdRecord rec{f[0], f[1], parse_count(f[2], line_no)};
    if (index.find(rec.origin) == index.end())
      throw ValidationError("line " + std::to_string(line_no) + ": unknown origin tract " +
                            rec.origin);
    if (index.find(rec.destination) == index.end())
      throw ValidationError("line " + std::to_string(line_no) + ": unknown destination tract " +
                            rec.destination);
    if (rec.origin == rec.destination)
      throw ValidationError("line " + std::to_string(line_no) + ": origin equals destination (" +
                            rec.origin + ")");
    if (rec.count < 0)
      throw ValidationError("line " + std::to_string(line_no) + ": negative count");
    records.push_back(std::move(rec));
  }
  std::vector<std::pair<OdPair, std::int64_t>> entries;
  for (const OdRecord& rec : records)
    entries.push_back({OdPair{index.at(rec.origin), index.at(rec.destination)}, rec.count});
  return DemandProfile::create(static_cast<int>(tracts.size()), entries);
}

RoadNetwork build_network(const std::vector<TractRecord>& tracts, const Metric& metric,
                          const CostRule& cost_rule, const TopologySpec& topology) {
  if (tracts.size() < 2) throw ValidationError("a network needs at least two tracts");
  const int n = static_cast<int>(tracts.size());

  std::vector<Node> nodes;
  for (const TractRecord& t : tracts) nodes.push_back(Node{t.tract_id, t.lat, t.lon});

  std::vector<std::pair<NodeId, NodeId>> wanted;
  if (topology.kind == TopologySpec::Kind::kComplete) {
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = 0; j < n; ++j)
        if (i != j) wanted.push_back({i, j});
  } else {
    // k nearest neighbors per node, then reverse arcs for symmetry.
    std::vector<std::vector<char>> pick(static_cast<size_t>(n), std::vector<char>(static_cast<size_t>(n), 0));
    for (NodeId i = 0; i < n; ++i) {
      std::vector<std::pair<double, NodeId>> by_dist;
      for (NodeId j = 0; j < n; ++j) {
        if (i == j) continue;
        by_dist.push_back({metric(tracts[static_cast<size_t>(i)], tracts[static_cast<size_t>(j)]), j});
      }
      std::sort(by_dist.begin(), by_dist.end());
      const int take = std::min<int>(topology.k, static_cast<int>(by_dist.size()));
      for (int t = 0; t < take; ++t) pick[static_cast<size_t>(i)][static_cast<size_t>(by_dist[static_cast<size_t>(t)].second)] = 1;
    }
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = 0; j < n; ++j)
        if (pick[static_cast<size_t>(i)][static_cast<size_t>(j)] || pick[static_cast<size_t>(j)][static_cast<size_t>(i)])
          if (i != j) wanted.push_back({i, j});
  }

  std::vector<Arc> arcs;
  for (const auto& [i, j] : wanted) {
    const double len = metric(tracts[static_cast<size_t>(i)], tracts[static_cast<size_t>(j)]);
    arcs.push_back(Arc{i, j, len, cost_rule(len)});
  }

  try {
    return RoadNetwork::create(std::move(nodes), std::move(arcs));
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("topology ") + topology.to_string() +
                          " produced an invalid network: " + e.what());
  }
}

ScoringConfig ProblemConfig::scoring() const {
  ScoringConfig s;
  s.bins = bins;
  s.epsilon = epsilon;
  s.p_floor = p_floor;
  s.p_ceil = p_ceil;
  s.groups = k;
  return s;
}

ProblemConfig ProblemConfig::parse(const std::string& text) {
  ProblemConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "alpha") {
      cfg.alpha = parse_double(value, "alpha", line_no);
    } else if (key == "k") {
      cfg.k = static_cast<int>(parse_count(value, line_no));
    } else if (key == "bins") {
      cfg.bins = static_cast<int>(parse_count(value, line_no));
    } else if (key == "epsilon") {
      cfg.epsilon = parse_double(value, "epsilon", line_no);
    } else if (key == "gamma") {
      cfg.gamma = parse_double(value, "gamma", line_no);
    } else if (key == "gap") {
      cfg.gap = parse_double(value, "gap", line_no);
    } else if (key == "budget_fractions") {
      cfg.budget_fractions.clear();
      for (const std::string& part : split_csv(value))
        if (!part.empty()) cfg.budget_fractions.push_back(parse_double(part, "fraction", line_no));
    } else if (key == "cost_rule") {
      cfg.cost_rule = CostRule::parse(value);
    } else if (key == "topology") {
      cfg.topology = TopologySpec::parse(value);
    } else if (key == "od_pairs") {
      if (value == "all")
        cfg.od_pairs = PairPolicy::kAllPairs;
      else if (value == "demand")
        cfg.od_pairs = PairPolicy::kPositiveDemand;
      else
        throw ValidationError("od_pairs must be 'all' or 'demand'");
    } else if (key == "p_floor") {
      cfg.p_floor = parse_double(value, "p_floor", line_no);
    } else if (key == "p_ceil") {
      cfg.p_ceil = parse_double(value, "p_ceil", line_no);
    } else if (key == "grid_step") {
      cfg.grid_step = parse_double(value, "grid_step", line_no);
    } else if (key == "time_limit") {
      cfg.time_limit_sec = parse_double(value, "time_limit", line_no);
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_count(value, line_no));
    } else {
      throw ValidationError("config line " + std::to_string(line_no) + ": unknown key '" + key +
                            "'");
    }
  }
  return cfg;
}

ProblemConfig ProblemConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

ProblemBundle load_problem(const std::string& tracts_path, const std::string& od_path,
                           const ProblemConfig& config) {
  std::vector<TractRecord> tracts = load_tracts(tracts_path);
  RoadNetwork network = build_network(
      tracts,
      [](const TractRecord& a, const TractRecord& b) {
        return great_circle_km(a.lat, a.lon, b.lat, b.lon);
      },
      config.cost_rule, config.topology);
  DemandProfile demand = load_od(od_path, tracts);

  std::vector<TractAttributes> attrs;
  for (const TractRecord& t : tracts) attrs.push_back({t.median_income, t.vehicle_rate});
  std::vector<double> priorities = tract_priority(attrs, config.scoring());
  PriorityProfile profile = od_priorities(priorities, config.k);

  DesignProblem problem = DesignProblem::create(std::move(network), std::move(demand),
                                                std::move(profile), config.alpha, 0.0,
                                                config.od_pairs);
  return ProblemBundle{std::move(tracts), std::move(priorities), std::move(problem)};
}

}  // namespace transit
