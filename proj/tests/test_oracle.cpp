#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "transit/errors.hpp"
#include "transit/graph.hpp"
#include "transit/oracle.hpp"

using namespace transit;

TEST_CASE("enumeration on the two-node network") {
  RoadNetwork net = testing::two_node_network();
  auto subsets = enumerate_feasible(net, 7.0);
  REQUIRE(subsets.size() == 2);
  CHECK(subsets[0].empty());
  CHECK(subsets[1] == std::vector<ArcId>{0, 1});

  auto zero = enumerate_feasible(net, 0.0);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].empty());
}

TEST_CASE("enumeration on the three-node cycle at budget 4") {
  RoadNetwork net = testing::three_node_cycle_network();
  auto subsets = enumerate_feasible(net, 4.0);

  auto contains = [&](std::vector<ArcId> s) {
    std::sort(s.begin(), s.end());
    return std::find(subsets.begin(), subsets.end(), s) != subsets.end();
  };
  CHECK(contains({}));
  CHECK(contains({0, 3}));        // t1<->t2, cost 2
  CHECK(contains({1, 4}));        // t2<->t3, cost 2
  CHECK(contains({0, 1, 2}));     // forward cycle, cost 4
  CHECK(contains({0, 1, 3, 4}));  // both local shuttles, cost 4
  CHECK_FALSE(contains({0}));
  CHECK_FALSE(contains({0, 1, 2, 3, 4, 5}));  // cost 8 over budget

  for (const auto& s : subsets) {
    CHECK(is_circulation(net, s));
    double cost = 0.0;
    for (ArcId a : s) cost += net.arc(a).cost;
    CHECK(cost <= 4.0 + 1e-9);
  }

  // every subset not yielded fails the budget or the balance check
  std::uint64_t feasible = 0;
  for (std::uint64_t mask = 0; mask < (1u << 6); ++mask) {
    std::vector<ArcId> s;
    double cost = 0.0;
    for (int a = 0; a < 6; ++a)
      if (mask >> a & 1) {
        s.push_back(a);
        cost += net.arc(a).cost;
      }
    if (is_circulation(net, s) && cost <= 4.0 + 1e-9) ++feasible;
  }
  CHECK(feasible == subsets.size());
}

TEST_CASE("caps are enforced") {
  DesignProblem p = testing::six_node_ring(4.0);
  EnumerationBudget tight;
  tight.max_arcs = 10;  // the ring has 12
  CHECK_THROWS_AS(enumerate_feasible(p.network(), 4.0, tight), OracleError);
  EnumerationBudget small_nodes;
  small_nodes.max_nodes = 4;
  small_nodes.max_arcs = 12;
  CHECK_THROWS_AS(enumerate_feasible(p.network(), 4.0, small_nodes), OracleError);
  EnumerationBudget subsets;
  subsets.max_arcs = 12;
  subsets.max_subsets = 1u << 10;
  CHECK_THROWS_AS(enumerate_feasible(p.network(), 4.0, subsets), OracleError);
}

TEST_CASE("brute force optimum on the three-node cycle") {
  DesignProblem p = testing::three_node_cycle(4.0, {{{0, 2}, 10}}, 0.5);

  auto welfare_zero = [](const UtilityProfile&) { return 0.0; };
  OracleOptimum zero = brute_force_optimum(p, welfare_zero);
  CHECK(zero.value == 0.0);
  CHECK(zero.best.empty());  // first argmax in enumeration order

  auto utilitarian = [&](const UtilityProfile& u) {
    return welfare_utilitarian(u, p.demand(), p.priority());
  };
  OracleOptimum best = brute_force_optimum(p, utilitarian);
  CHECK(best.value == doctest::Approx(5.0).epsilon(1e-12));

  // with the whole network affordable, a monotone welfare reaches the
  // all-ones profile; ties go to the earliest subset in enumeration order
  DesignProblem rich = p.with_budget(8.0);
  auto total = [&](const UtilityProfile& u) {
    double s = 0.0;
    for (double v : u.values) s += v;
    return s;
  };
  OracleOptimum full = brute_force_optimum(rich, total);
  CHECK(full.value == doctest::Approx(6.0));
  for (double v : evaluate_utility_profile(rich, full.best).values) CHECK(v == 1.0);
  CHECK(full.best == std::vector<ArcId>{0, 1, 3, 4});
}
