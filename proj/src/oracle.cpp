#include "pii/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace pii::oracle {

bool StableSet::contains(const Matching& mu) const {
  return std::find(matchings.begin(), matchings.end(), mu) != matchings.end();
}

bool independent_is_stable(const PreferenceStructure& prefs, const std::vector<int>& row_to_col) {
  const int n = prefs.size();
  std::vector<int> col_to_row(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) col_to_row[static_cast<std::size_t>(row_to_col[static_cast<std::size_t>(i)])] = i;
  auto lm = prefs.left_matrix();
  auto rm = prefs.right_matrix();
  auto at = [n](std::span<const int> m, int r, int c) {
    return m[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) + static_cast<std::size_t>(c)];
  };
  for (int i = 0; i < n; ++i) {
    const int l = row_to_col[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      if (j == l) continue;
      const int m = col_to_row[static_cast<std::size_t>(j)];
      // (i,j) blocks when man i prefers j to l and woman j prefers i to m.
      if (at(lm, i, j) < at(lm, i, l) && at(rm, i, j) < at(rm, m, j)) return false;
    }
  }
  return true;
}

StableSet enumerate_stable(const PreferenceStructure& prefs) {
  const int n = prefs.size();
  if (n > kMaxOracleN) {
    throw OracleRefusal("oracle enumeration refused for n = " + std::to_string(n) + " (limit " +
                        std::to_string(kMaxOracleN) + ")");
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Matching> stable;
  do {
    if (independent_is_stable(prefs, perm)) stable.emplace_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (stable.empty()) throw InternalError("no stable matching found; preference structure is corrupt");

  // Each man's best partner over the set; these together form a stable matching.
  std::vector<int> best(static_cast<std::size_t>(n), -1);
  for (const Matching& mu : stable) {
    for (int i = 0; i < n; ++i) {
      int& b = best[static_cast<std::size_t>(i)];
      if (b == -1 || prefs.left(i, mu.col_of(i)) < prefs.left(i, b)) b = mu.col_of(i);
    }
  }
  Matching man_optimal(best);
  if (std::find(stable.begin(), stable.end(), man_optimal) == stable.end()) {
    throw InternalError("man-optimal assignment is not among the stable matchings");
  }
  return StableSet{std::move(stable), std::move(man_optimal)};
}

}  // namespace pii::oracle
