#include <doctest.h>

#include <map>

#include "helpers.hpp"
#include "pii/error.hpp"
#include "pii/init.hpp"
#include "pii/oracle.hpp"

using namespace pii;

TEST_CASE("init method names") {
  CHECK(parse_init_method("random") == InitMethod::kRandom);
  CHECK(parse_init_method("quick") == InitMethod::kQuick);
  CHECK(parse_init_method("gs") == InitMethod::kGaleShapley);
  CHECK_FALSE(parse_init_method("GS").has_value());
  for (auto m : {InitMethod::kRandom, InitMethod::kQuick, InitMethod::kGaleShapley}) {
    CHECK(parse_init_method(to_string(m)) == m);
  }
}

TEST_CASE("random_matching") {
  Rng rng(1);
  CHECK(random_matching(1, rng) == Matching::identity(1));
  Rng a(5), b(5);
  CHECK(random_matching(5, a) == random_matching(5, b));
  CHECK_THROWS_AS(random_matching(0, rng), ValidationError);

  SUBCASE("uniform over S_3") {
    Rng r(4242);
    std::map<std::vector<int>, int> counts;
    const int samples = 30000;
    for (int s = 0; s < samples; ++s) counts[random_matching(3, r).row_to_col()]++;
    CHECK(counts.size() == 6);
    for (const auto& [perm, c] : counts) CHECK(std::abs(static_cast<double>(c) / samples - 1.0 / 6) <= 0.01);
  }
}

TEST_CASE("quick_init") {
  CHECK(quick_init(testing::from_lists({{0, 1}, {0, 1}}, {{0, 1}, {0, 1}})) == Matching({0, 1}));
  CHECK(quick_init(testing::aligned(5)) == Matching::identity(5));
  auto p = testing::from_lists({{2, 0, 1}, {2, 1, 0}, {0, 1, 2}}, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
  CHECK(quick_init(p) == Matching({2, 1, 0}));

  SUBCASE("exactly n proposals and n constant-op charges") {
    Rng rng(17);
    for (int n : {1, 2, 9, 40}) {
      auto q = random_preferences(n, rng);
      InitStats stats;
      CostLedger ledger(n);
      quick_init(q, &ledger, &stats);
      CHECK(stats.proposals == n);
      CHECK(ledger.init_cost() == n);
      CHECK(ledger.run_cost() == 0);
    }
  }
}

TEST_CASE("gale_shapley_init") {
  CHECK(gale_shapley_init(testing::two_by_two()) == Matching({1, 0}));
  CHECK(gale_shapley_init(testing::aligned(6)) == Matching::identity(6));

  SUBCASE("stable, man-optimal and deterministic against the oracle for n <= 6") {
    Rng rng(606);
    for (int t = 0; t < 300; ++t) {
      const int n = 1 + t % 6;
      auto q = random_preferences(n, rng);
      auto mu = gale_shapley_init(q);
      CHECK(is_stable(q, mu));
      auto set = oracle::enumerate_stable(q);
      CHECK(set.contains(mu));
      CHECK(mu == set.man_optimal);
      CHECK(gale_shapley_init(q) == mu);
    }
  }
  SUBCASE("one col-find-min per proposal round") {
    Rng rng(3);
    auto q = random_preferences(16, rng);
    InitStats stats;
    CostLedger ledger(16);
    gale_shapley_init(q, &ledger, &stats);
    CHECK(stats.rounds >= 1);
    CHECK(stats.proposals >= 16);
    CHECK(ledger.init_cost() == 4LL * stats.rounds);
  }
}

TEST_CASE("initialize dispatches and always returns perfect matchings") {
  Rng rng(10);
  for (int t = 0; t < 60; ++t) {
    const int n = 1 + t % 15;
    auto q = random_preferences(n, rng);
    for (auto m : {InitMethod::kRandom, InitMethod::kQuick, InitMethod::kGaleShapley}) {
      auto mu = initialize(m, q, rng);
      CHECK(mu.size() == n);
      if (m == InitMethod::kGaleShapley) CHECK(is_stable(q, mu));
    }
  }
}
