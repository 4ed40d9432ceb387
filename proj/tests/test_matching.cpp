#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "helpers.hpp"
#include "pii/error.hpp"
#include "pii/matching.hpp"
#include "pii/oracle.hpp"

using namespace pii;

TEST_CASE("Matching validates permutations") {
  CHECK_NOTHROW(Matching({1, 0, 2}));
  CHECK_THROWS_AS(Matching({0, 0}), ValidationError);
  CHECK_THROWS_AS(Matching({0, 2}), ValidationError);
  CHECK_THROWS_AS(Matching({-1, 0}), ValidationError);
  CHECK_THROWS_AS(Matching(std::vector<int>{}), ValidationError);
  Matching mu({2, 0, 1});
  CHECK(mu.row_of(2) == 0);
  CHECK(mu.row_of(0) == 1);
  CHECK(mu.contains({1, 0}));
  CHECK_FALSE(mu.contains({1, 1}));
}

TEST_CASE("is_blocking") {
  auto p = testing::two_by_two();
  Matching id = Matching::identity(2);
  CHECK(is_blocking(p, id, {1, 0}));
  CHECK_FALSE(is_blocking(p, id, {0, 1}));
  CHECK_FALSE(is_blocking(p, id, {0, 0}));
  CHECK_FALSE(is_blocking(p, id, {1, 1}));
  CHECK_THROWS_AS(is_blocking(p, id, {2, 0}), ValidationError);

  SUBCASE("aligned preferences, identity: nothing blocks") {
    for (int n : {1, 3, 6}) {
      auto a = testing::aligned(n);
      auto mu = Matching::identity(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) CHECK_FALSE(is_blocking(a, mu, {i, j}));
    }
  }
  SUBCASE("matched pairs never block") {
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
      auto q = random_preferences(6, rng);
      Matching mu(rng.permutation(6));
      for (int i = 0; i < 6; ++i) CHECK_FALSE(is_blocking(q, mu, {i, mu.col_of(i)}));
    }
  }
}

TEST_CASE("find_blocking_pairs") {
  auto p = testing::two_by_two();
  CHECK(find_blocking_pairs(p, Matching::identity(2)) == std::vector<Pair>{{1, 0}});
  CHECK(find_blocking_pairs(p, Matching({1, 0})).empty());
  auto one = testing::aligned(1);
  CHECK(find_blocking_pairs(one, Matching::identity(1)).empty());

  SUBCASE("row-major order and agreement with is_blocking") {
    Rng rng(12);
    for (int t = 0; t < 100; ++t) {
      const int n = 2 + t % 9;
      auto q = random_preferences(n, rng);
      Matching mu(rng.permutation(n));
      auto pairs = find_blocking_pairs(q, mu);
      CHECK(std::is_sorted(pairs.begin(), pairs.end()));
      std::vector<Pair> expected;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (is_blocking(q, mu, {i, j})) expected.push_back({i, j});
      CHECK(pairs == expected);
      CHECK(find_blocking_pairs(q, mu) == pairs);
      CHECK(is_stable(q, mu) == pairs.empty());
      if (pairs.empty()) {
        CHECK_FALSE(first_blocking_pair(q, mu).has_value());
      } else {
        CHECK(*first_blocking_pair(q, mu) == pairs.front());
      }
    }
  }
}

TEST_CASE("is_stable") {
  auto p = testing::two_by_two();
  CHECK(is_stable(p, Matching({1, 0})));
  CHECK_FALSE(is_stable(p, Matching::identity(2)));
  CHECK(is_stable(testing::aligned(1), Matching::identity(1)));
  CHECK(is_stable(testing::aligned(7), Matching::identity(7)));
  CHECK_THROWS_AS(is_stable(p, Matching::identity(3)), ValidationError);
}

TEST_CASE("is_stable agrees with the oracle's independent test for n <= 7") {
  Rng rng(31337);
  for (int n = 1; n <= 7; ++n) {
    for (int t = 0; t < 40; ++t) {
      auto q = random_preferences(n, rng);
      if (n <= 4) {
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        do {
          CHECK(is_stable(q, Matching(perm)) == oracle::independent_is_stable(q, perm));
        } while (std::next_permutation(perm.begin(), perm.end()));
      } else {
        for (int s = 0; s < 30; ++s) {
          auto perm = rng.permutation(n);
          CHECK(is_stable(q, Matching(perm)) == oracle::independent_is_stable(q, perm));
        }
      }
    }
  }
}

TEST_CASE("count_unstable_pairs") {
  auto p = testing::two_by_two();
  CHECK(count_unstable_pairs(p, Matching({1, 0})) == 0);
  CHECK(count_unstable_pairs(p, Matching::identity(2)) == 2);
  CHECK(count_unstable_pairs(testing::aligned(1), Matching::identity(1)) == 0);

  Rng rng(8);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 10;
    auto q = random_preferences(n, rng);
    Matching mu(rng.permutation(n));
    const int c = count_unstable_pairs(q, mu);
    CHECK(c >= 0);
    CHECK(c <= n);
    CHECK((c == 0) == is_stable(q, mu));
  }
}

TEST_CASE("matching text format") {
  std::stringstream ss;
  write_matching(ss, Matching({2, 0, 1}));
  CHECK(ss.str() == "2 0 1\n");
  CHECK(read_matching(ss) == Matching({2, 0, 1}));

  std::stringstream dup("0 0\n");
  CHECK_THROWS_AS(read_matching(dup), ValidationError);
  std::stringstream junk("0 a\n");
  CHECK_THROWS_AS(read_matching(junk), ParseError);
  std::stringstream two_lines("0 1\n1 0\n");
  CHECK_THROWS_AS(read_matching(two_lines), ParseError);
  std::stringstream empty("\n");
  CHECK_THROWS_AS(read_matching(empty), ParseError);
  CHECK_THROWS_AS(read_matching_file("/nonexistent/m.txt"), IoError);
}
