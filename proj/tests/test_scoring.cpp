#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "transit/errors.hpp"
#include "transit/scoring.hpp"

using namespace transit;

TEST_CASE("bin scores over an equal-width grid") {
  std::vector<double> values{0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0};
  std::vector<double> s = bin_scores(values, 10, 0.01);
  CHECK(s.front() == doctest::Approx(0.1));   // lowest bin
  CHECK(s.back() == doctest::Approx(0.99));   // top bin gets 1 - epsilon
  CHECK(s[5] == doctest::Approx(0.6));        // 5.0 sits on a boundary, goes up
  CHECK(s[9] == doctest::Approx(0.99));       // 9.0 -> bin 10
  CHECK(s[8] == doctest::Approx(0.9));

  std::vector<double> flat{3.0, 3.0, 3.0};
  for (double v : bin_scores(flat, 10, 0.01)) CHECK(v == doctest::Approx(0.1));

  CHECK_THROWS_AS(bin_scores(std::vector<double>{}, 10, 0.01), ValidationError);
  CHECK_THROWS_AS(bin_scores(values, 1, 0.01), ValidationError);
  CHECK_THROWS_AS(bin_scores(values, 10, 0.2), ValidationError);
}

TEST_CASE("bin assignment is invariant under affine rescaling") {
  std::vector<double> values{12.0, 45.0, 7.0, 33.0, 91.0, 60.0};
  std::vector<double> scaled;
  for (double v : values) scaled.push_back(3.5 * v - 120.0);
  CHECK(bin_scores(values, 10, 0.01) == bin_scores(scaled, 10, 0.01));
}

TEST_CASE("worked tract example: car bin 2 plus income bin 1") {
  // incomes spread over ten bins; the first tract lands in income bin 1 and
  // car bin 2, so its raw score is 0.2 + 0.1 = 0.3
  std::vector<TractAttributes> tracts;
  tracts.push_back({20000.0, 0.2});  // income range [20k,110k] puts 20k in bin 1;
                                     // rate range [0.1,0.9] puts 0.2 in bin 2
  for (int i = 1; i < 10; ++i)
    tracts.push_back({20000.0 + 10000.0 * i, 0.1 * i});
  ScoringConfig cfg;
  const std::vector<double> income_scores = [&] {
    std::vector<double> v;
    for (const auto& t : tracts) v.push_back(t.median_income);
    return bin_scores(v, cfg.bins, cfg.epsilon);
  }();
  const std::vector<double> car_scores = [&] {
    std::vector<double> v;
    for (const auto& t : tracts) v.push_back(t.vehicle_rate);
    return bin_scores(v, cfg.bins, cfg.epsilon);
  }();
  CHECK(income_scores[0] == doctest::Approx(0.1));
  CHECK(car_scores[0] == doctest::Approx(0.2));
  CHECK(income_scores[0] + car_scores[0] == doctest::Approx(0.3));
}

TEST_CASE("tract priorities invert and rescale the raw scores") {
  // raw scores 0.3 and 2.0 (the second tract tops both attributes)
  std::vector<double> p = [] {
    std::vector<TractAttributes> t{{20000.0, 0.24}, {120000.0, 0.95}};
    // with two tracts, bins 1 and 10 for income; rates 0.24 vs 0.95: bin
    // width 0.071 puts 0.24 in bin 1... use hand values instead below
    ScoringConfig cfg;
    return tract_priority(t, cfg);
  }();
  // second tract maxes out: priority p_floor
  CHECK(p[1] == doctest::Approx(0.05));
  CHECK(p[0] > p[1]);

  // single tract degenerates to the clamp midpoint
  std::vector<TractAttributes> one{{50000.0, 0.5}};
  CHECK(tract_priority(one, ScoringConfig{})[0] == doctest::Approx(0.5));

  // monotonicity: lower raw score means higher priority
  std::vector<TractAttributes> many;
  for (int i = 0; i < 8; ++i) many.push_back({30000.0 + 11000.0 * i, 0.1 + 0.1 * i});
  std::vector<double> pr = tract_priority(many, ScoringConfig{});
  for (size_t i = 1; i < pr.size(); ++i) CHECK(pr[i - 1] >= pr[i]);
  for (double v : pr) {
    CHECK(v >= 0.05);
    CHECK(v <= 0.95);
  }
}

TEST_CASE("normalization arithmetic on the stated two-tract example") {
  // raw 0.3 -> 0.05 + 0.9 * (1 - 0.15) = 0.815; raw 2.0 -> 0.05
  // (reproduced through the same affine form the implementation uses)
  const double p_floor = 0.05, p_ceil = 0.95;
  auto prio = [&](double raw, double max_raw) {
    return p_floor + (p_ceil - p_floor) * (1.0 - raw / max_raw);
  };
  CHECK(prio(0.3, 2.0) == doctest::Approx(0.815).epsilon(1e-12));
  CHECK(prio(2.0, 2.0) == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("group assignment splits the priority range uniformly") {
  std::vector<double> all_same{0.4, 0.4};
  CHECK(assign_groups(all_same, 5) == std::vector<int>{1, 1});

  std::vector<double> p{0.9, 0.5, 0.1};
  CHECK(assign_groups(p, 2) == std::vector<int>{1, 1, 2});  // 0.5 on the boundary goes up
  CHECK(assign_groups(p, 1) == std::vector<int>{1, 1, 1});

  std::vector<double> spread;
  for (int i = 0; i <= 9; ++i) spread.push_back(0.05 + 0.1 * i);
  std::vector<int> g = assign_groups(spread, 5);
  CHECK(g.front() == 5);
  CHECK(g.back() == 1);
  for (size_t i = 1; i < g.size(); ++i) CHECK(g[i - 1] >= g[i]);
  // equal-width intervals of 0.18: two values apiece
  for (int grp = 1; grp <= 5; ++grp)
    CHECK(std::count(g.begin(), g.end(), grp) == 2);
}

TEST_CASE("od priorities take the origin's score") {
  std::vector<double> tract_p{0.815, 0.05, 0.5};
  PriorityProfile p = od_priorities(tract_p, 2);
  CHECK(p.priority({0, 1}) == doctest::Approx(0.815));
  CHECK(p.priority({0, 2}) == doctest::Approx(0.815));
  CHECK(p.priority({1, 0}) == doctest::Approx(0.05));
  CHECK(p.priority({1, 2}) == doctest::Approx(0.05));
  CHECK(p.priority({2, 0}) == doctest::Approx(0.5));
  CHECK(p.priority({0, 1}) == p.priority({0, 2}));

  // groups over the pair priorities: range [0.05, 0.815], split at 0.4325
  CHECK(p.group({0, 1}) == 1);
  CHECK(p.group({2, 0}) == 1);
  CHECK(p.group({1, 2}) == 2);
}
