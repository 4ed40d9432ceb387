#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pii/rng.hpp"

namespace pii {

// Ordered preference lists, 0-based indices, position 0 = top choice.
struct PreferenceLists {
  std::vector<std::vector<int>> men_lists;
  std::vector<std::vector<int>> women_lists;
};

// n x n rank matrices. left(i, j) is man i's rank of woman j, right(i, j) is
// woman j's rank of man i; ranks are 1-based and lower is better.
// Immutable once built.
class PreferenceStructure {
 public:
  // Row-major n*n rank matrices. Throws ValidationError if a row of
  // left_rank or a column of right_rank is not a permutation of 1..n.
  PreferenceStructure(int n, std::vector<int> left_rank, std::vector<int> right_rank);

  int size() const { return n_; }
  int left(int row, int col) const { return left_[idx(row, col)]; }
  int right(int row, int col) const { return right_[idx(row, col)]; }

  // Man i's list, best first.
  std::span<const int> man_list(int row) const {
    return {men_order_.data() + static_cast<std::size_t>(row) * n_, static_cast<std::size_t>(n_)};
  }
  // Woman j's list, best first.
  std::span<const int> woman_list(int col) const {
    return {women_order_.data() + static_cast<std::size_t>(col) * n_, static_cast<std::size_t>(n_)};
  }

  std::span<const int> left_matrix() const { return left_; }
  std::span<const int> right_matrix() const { return right_; }

  bool operator==(const PreferenceStructure& other) const {
    return n_ == other.n_ && left_ == other.left_ && right_ == other.right_;
  }

 private:
  std::size_t idx(int row, int col) const {
    return static_cast<std::size_t>(row) * n_ + static_cast<std::size_t>(col);
  }

  int n_;
  std::vector<int> left_;
  std::vector<int> right_;
  std::vector<int> men_order_;    // row i: women by increasing left rank
  std::vector<int> women_order_;  // col j: men by increasing right rank
};

PreferenceStructure ranks_from_lists(const PreferenceLists& lists);
PreferenceLists lists_from_ranks(const PreferenceStructure& prefs);

// Every man and woman list is an independent uniform permutation.
PreferenceStructure random_preferences(int n, Rng& rng);

// Text format: "n", then n lines of men's lists, then n lines of women's lists.
PreferenceStructure read_instance(std::istream& in);
PreferenceStructure read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const PreferenceStructure& prefs);

}  // namespace pii
