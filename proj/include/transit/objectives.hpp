#pragma once

#include <vector>

#include "transit/network.hpp"

namespace transit {

enum class WelfareKind { kUtilitarian, kTradeoff, kLeximax };

// Which social objective a solve optimizes. `active_pairs` scopes the min
// term only (the utilitarian sum always runs over the whole pair set); leave
// it empty for "all pairs". gamma weighs ridership against the coverage
// floor; runs labeled Rawlsian use the 0.01 convention.
struct WelfareSpec {
  WelfareKind kind = WelfareKind::kUtilitarian;
  double gamma = 0.01;
  std::vector<OdPair> active_pairs;
  double tie_tolerance = 1e-6;

  static WelfareSpec utilitarian() { return {WelfareKind::kUtilitarian, 1.0, {}, 1e-6}; }
  static WelfareSpec tradeoff(double gamma) { return {WelfareKind::kTradeoff, gamma, {}, 1e-6}; }
  static WelfareSpec rawlsian() { return tradeoff(0.01); }

  bool has_floor_term() const { return kind != WelfareKind::kUtilitarian; }
};

}  // namespace transit
