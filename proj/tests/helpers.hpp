#pragma once

#include <vector>

#include "pii/matching.hpp"
#include "pii/prefs.hpp"
#include "pii/rng.hpp"

namespace testing {

// left_rank = [[1,2],[1,2]], right_rank = [[2,1],[1,2]]; only [1,0] is stable.
inline pii::PreferenceStructure two_by_two() {
  return pii::ranks_from_lists({{{0, 1}, {0, 1}}, {{1, 0}, {0, 1}}});
}

// left_rank[i][j] = j+1, right_rank[i][j] = i+1.
inline pii::PreferenceStructure aligned(int n) {
  std::vector<int> left, right;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      left.push_back(j + 1);
      right.push_back(i + 1);
    }
  }
  return pii::PreferenceStructure(n, left, right);
}

inline pii::PreferenceStructure from_lists(std::vector<std::vector<int>> men, std::vector<std::vector<int>> women) {
  return pii::ranks_from_lists({std::move(men), std::move(women)});
}

inline std::vector<int> row_to_col(const pii::Matching& mu) { return mu.row_to_col(); }

}  // namespace testing
