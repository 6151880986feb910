#include "transit/scoring.hpp"

#include <algorithm>
#include <cmath>

#include "transit/errors.hpp"

namespace transit {

void ScoringConfig::validate() const {
  if (bins < 2) throw ValidationError("at least two score bins are required");
  if (!(epsilon > 0.0 && epsilon < 1.0 / bins))
    throw ValidationError("epsilon must lie in (0, 1/bins)");
  if (!(p_floor > 0.0 && p_floor < p_ceil && p_ceil < 1.0))
    throw ValidationError("priority clamp must satisfy 0 < p_floor < p_ceil < 1");
  if (groups < 1) throw ValidationError("group count must be >= 1");
}

std::vector<double> bin_scores(std::span<const double> values, int bins, double epsilon) {
  if (values.empty()) throw ValidationError("cannot bin an empty value list");
  if (bins < 2) throw ValidationError("at least two score bins are required");
  if (!(epsilon > 0.0 && epsilon < 1.0 / bins))
    throw ValidationError("epsilon must lie in (0, 1/bins)");
  for (double v : values)
    if (!std::isfinite(v)) throw ValidationError("attribute values must be finite");

  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double width = (*hi_it - lo) / bins;

  std::vector<double> scores;
  scores.reserve(values.size());
  for (double v : values) {
    int bin = 1;
    if (width > 0.0) bin = std::min(bins, static_cast<int>(std::floor((v - lo) / width)) + 1);
    scores.push_back(bin == bins ? 1.0 - epsilon : static_cast<double>(bin) / bins);
  }
  return scores;
}

std::vector<double> tract_priority(std::span<const TractAttributes> tracts,
                                   const ScoringConfig& config) {
  config.validate();
  if (tracts.empty()) throw ValidationError("at least one tract is required");
  for (const TractAttributes& t : tracts) {
    if (!(t.median_income > 0.0)) throw ValidationError("median income must be > 0");
    if (!(t.vehicle_rate >= 0.0 && t.vehicle_rate <= 1.0))
      throw ValidationError("vehicle ownership rate must lie in [0,1]");
  }
  if (tracts.size() == 1) return {0.5 * (config.p_floor + config.p_ceil)};

  std::vector<double> incomes, rates;
  incomes.reserve(tracts.size());
  rates.reserve(tracts.size());
  for (const TractAttributes& t : tracts) {
    incomes.push_back(t.median_income);
    rates.push_back(t.vehicle_rate);
  }
  const std::vector<double> income_score = bin_scores(incomes, config.bins, config.epsilon);
  const std::vector<double> car_score = bin_scores(rates, config.bins, config.epsilon);

  std::vector<double> raw(tracts.size());
  for (size_t i = 0; i < tracts.size(); ++i) raw[i] = income_score[i] + car_score[i];
  const double max_raw = *std::max_element(raw.begin(), raw.end());

  // High raw score means resourced; priority inverts it onto the clamp range.
  std::vector<double> priority(tracts.size());
  for (size_t i = 0; i < tracts.size(); ++i)
    priority[i] = config.p_floor + (config.p_ceil - config.p_floor) * (1.0 - raw[i] / max_raw);
  return priority;
}

std::vector<int> assign_groups(std::span<const double> priorities, int k) {
  if (k < 1) throw ValidationError("group count must be >= 1");
  std::vector<int> groups(priorities.size(), 1);
  if (k == 1 || priorities.empty()) return groups;

  const auto [lo_it, hi_it] = std::minmax_element(priorities.begin(), priorities.end());
  const double lo = *lo_it;
  const double width = (*hi_it - lo) / k;
  if (width <= 0.0) return groups;

  for (size_t i = 0; i < priorities.size(); ++i) {
    double t = (priorities[i] - lo) / width;
    const double snapped = std::round(t);
    if (std::fabs(t - snapped) <= 1e-9) t = snapped;  // boundary goes to the upper interval
    const int interval = std::min(k, static_cast<int>(std::floor(t)) + 1);
    groups[i] = k - interval + 1;
  }
  return groups;
}

PriorityProfile od_priorities(std::span<const double> tract_priorities, int k_groups) {
  const int n = static_cast<int>(tract_priorities.size());
  if (n < 2) throw ValidationError("at least two tracts are required for OD priorities");

  std::vector<std::pair<OdPair, double>> p;
  std::vector<double> flat;
  for (NodeId o = 0; o < n; ++o) {
    for (NodeId d = 0; d < n; ++d) {
      if (o == d) continue;
      p.push_back({OdPair{o, d}, tract_priorities[static_cast<size_t>(o)]});
      flat.push_back(tract_priorities[static_cast<size_t>(o)]);
    }
  }
  const std::vector<int> flat_groups = assign_groups(flat, k_groups);
  std::vector<std::pair<OdPair, int>> g;
  for (size_t i = 0; i < p.size(); ++i) g.push_back({p[i].first, flat_groups[i]});
  return PriorityProfile::create(n, p, g, k_groups);
}

}  // namespace transit
