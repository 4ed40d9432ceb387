#pragma once

#include <compare>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pii/prefs.hpp"

namespace pii {

struct Pair {
  int row = 0;
  int col = 0;
  auto operator<=>(const Pair&) const = default;
};

// Perfect matching: row_to_col is a permutation of 0..n-1.
class Matching {
 public:
  // Throws ValidationError unless row_to_col is a permutation.
  explicit Matching(std::vector<int> row_to_col);
  static Matching identity(int n);

  int size() const { return static_cast<int>(row_to_col_.size()); }
  int col_of(int row) const { return row_to_col_[static_cast<std::size_t>(row)]; }
  int row_of(int col) const { return col_to_row_[static_cast<std::size_t>(col)]; }
  bool contains(Pair p) const { return col_of(p.row) == p.col; }
  const std::vector<int>& row_to_col() const { return row_to_col_; }

  bool operator==(const Matching& other) const { return row_to_col_ == other.row_to_col_; }

 private:
  std::vector<int> row_to_col_;
  std::vector<int> col_to_row_;
};

bool is_blocking(const PreferenceStructure& prefs, const Matching& mu, Pair pair);

// Row-major order.
std::vector<Pair> find_blocking_pairs(const PreferenceStructure& prefs, const Matching& mu);

// Lexicographically smallest blocking pair, if any.
std::optional<Pair> first_blocking_pair(const PreferenceStructure& prefs, const Matching& mu);

bool is_stable(const PreferenceStructure& prefs, const Matching& mu);

// Matched pairs (i, l) such that some blocking pair lies in row i or column l.
int count_unstable_pairs(const PreferenceStructure& prefs, const Matching& mu);

// One line of n column indices.
Matching read_matching(std::istream& in);
Matching read_matching_file(const std::string& path);
void write_matching(std::ostream& out, const Matching& mu);
std::string format_matching(const Matching& mu);

}  // namespace pii
