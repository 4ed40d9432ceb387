#include "pii/matching.hpp"

#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "pii/error.hpp"

namespace pii {

Matching::Matching(std::vector<int> row_to_col) : row_to_col_(std::move(row_to_col)) {
  const int n = static_cast<int>(row_to_col_.size());
  if (n < 1) throw ValidationError("matching must have at least one row");
  col_to_row_.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    int j = row_to_col_[static_cast<std::size_t>(i)];
    if (j < 0 || j >= n) {
      throw ValidationError("matching row " + std::to_string(i) + ": column " + std::to_string(j) + " out of range");
    }
    if (col_to_row_[static_cast<std::size_t>(j)] != -1) {
      throw ValidationError("matching is not a permutation: column " + std::to_string(j) + " used by rows " +
                            std::to_string(col_to_row_[static_cast<std::size_t>(j)]) + " and " + std::to_string(i));
    }
    col_to_row_[static_cast<std::size_t>(j)] = i;
  }
}

Matching Matching::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return Matching(std::move(v));
}

namespace {

void check_sizes(const PreferenceStructure& prefs, const Matching& mu) {
  if (prefs.size() != mu.size()) {
    throw ValidationError("matching has " + std::to_string(mu.size()) + " rows but the instance has n = " +
                          std::to_string(prefs.size()));
  }
}

bool blocking_unchecked(const PreferenceStructure& prefs, const Matching& mu, int i, int j) {
  const int l = mu.col_of(i);
  if (l == j) return false;
  const int m = mu.row_of(j);
  return prefs.left(i, j) < prefs.left(i, l) && prefs.right(i, j) < prefs.right(m, j);
}

}  // namespace

bool is_blocking(const PreferenceStructure& prefs, const Matching& mu, Pair pair) {
  check_sizes(prefs, mu);
  const int n = prefs.size();
  if (pair.row < 0 || pair.row >= n || pair.col < 0 || pair.col >= n) {
    throw ValidationError("pair (" + std::to_string(pair.row) + "," + std::to_string(pair.col) + ") out of range");
  }
  return blocking_unchecked(prefs, mu, pair.row, pair.col);
}

std::vector<Pair> find_blocking_pairs(const PreferenceStructure& prefs, const Matching& mu) {
  check_sizes(prefs, mu);
  std::vector<Pair> out;
  const int n = prefs.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (blocking_unchecked(prefs, mu, i, j)) out.push_back({i, j});
    }
  }
  return out;
}

std::optional<Pair> first_blocking_pair(const PreferenceStructure& prefs, const Matching& mu) {
  check_sizes(prefs, mu);
  const int n = prefs.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (blocking_unchecked(prefs, mu, i, j)) return Pair{i, j};
    }
  }
  return std::nullopt;
}

bool is_stable(const PreferenceStructure& prefs, const Matching& mu) {
  check_sizes(prefs, mu);
  const int n = prefs.size();
  // Only women above the current partner in a man's list can block.
  for (int i = 0; i < n; ++i) {
    auto list = prefs.man_list(i);
    const int limit = prefs.left(i, mu.col_of(i)) - 1;
    for (int pos = 0; pos < limit; ++pos) {
      const int j = list[static_cast<std::size_t>(pos)];
      if (prefs.right(i, j) < prefs.right(mu.row_of(j), j)) return false;
    }
  }
  return true;
}

int count_unstable_pairs(const PreferenceStructure& prefs, const Matching& mu) {
  const int n = prefs.size();
  std::vector<char> row_hit(static_cast<std::size_t>(n), 0), col_hit(static_cast<std::size_t>(n), 0);
  for (const Pair& p : find_blocking_pairs(prefs, mu)) {
    row_hit[static_cast<std::size_t>(p.row)] = 1;
    col_hit[static_cast<std::size_t>(p.col)] = 1;
  }
  int count = 0;
  for (int i = 0; i < n; ++i) {
    if (row_hit[static_cast<std::size_t>(i)] || col_hit[static_cast<std::size_t>(mu.col_of(i))]) ++count;
  }
  return count;
}

Matching read_matching(std::istream& in) {
  std::string line;
  int line_no = 0;
  bool found = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      found = true;
      break;
    }
  }
  if (!found) throw ParseError(0, "empty matching");
  std::vector<int> cols;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw ParseError(line_no, "expected an integer, got '" + tok + "'");
    cols.push_back(v);
  }
  std::string rest;
  while (std::getline(in, rest)) {
    ++line_no;
    if (rest.find_first_not_of(" \t\r") != std::string::npos) {
      throw ParseError(line_no, "matching must be a single line");
    }
  }
  return Matching(std::move(cols));
}

Matching read_matching_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matching file '" + path + "'");
  return read_matching(in);
}

std::string format_matching(const Matching& mu) {
  std::string s;
  for (int i = 0; i < mu.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(mu.col_of(i));
  }
  return s;
}

void write_matching(std::ostream& out, const Matching& mu) { out << format_matching(mu) << '\n'; }

}  // namespace pii
