#include "pii/prefs.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "pii/error.hpp"

namespace pii {

namespace {

// Checks that values[0..n) (read with the given stride) are exactly 1..n.
void check_rank_permutation(std::span<const int> values, int n, std::size_t start, std::size_t stride,
                            const char* what, int index) {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int k = 0; k < n; ++k) {
    int v = values[start + static_cast<std::size_t>(k) * stride];
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)]) {
      throw ValidationError(std::string(what) + " " + std::to_string(index) +
                            " is not a permutation of ranks 1.." + std::to_string(n));
    }
    seen[static_cast<std::size_t>(v - 1)] = 1;
  }
}

void check_list(const std::vector<int>& list, int n, const char* what, int index) {
  auto fail = [&](const std::string& why) {
    throw ValidationError(std::string(what) + "[" + std::to_string(index) + "]: " + why);
  };
  if (static_cast<int>(list.size()) != n) {
    fail("expected " + std::to_string(n) + " entries, got " + std::to_string(list.size()));
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v : list) {
    if (v < 0 || v >= n) fail("index " + std::to_string(v) + " out of range");
    if (seen[static_cast<std::size_t>(v)]) fail("duplicate index " + std::to_string(v));
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

}  // namespace

PreferenceStructure::PreferenceStructure(int n, std::vector<int> left_rank, std::vector<int> right_rank)
    : n_(n), left_(std::move(left_rank)), right_(std::move(right_rank)) {
  if (n < 1) throw ValidationError("preference structure needs n >= 1");
  const std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  if (left_.size() != cells || right_.size() != cells) {
    throw ValidationError("rank matrices must have n*n = " + std::to_string(cells) + " entries");
  }
  const auto un = static_cast<std::size_t>(n);
  for (int i = 0; i < n; ++i) check_rank_permutation(left_, n, static_cast<std::size_t>(i) * un, 1, "left_rank row", i);
  for (int j = 0; j < n; ++j) check_rank_permutation(right_, n, static_cast<std::size_t>(j), un, "right_rank column", j);

  men_order_.resize(cells);
  women_order_.resize(cells);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      men_order_[static_cast<std::size_t>(i) * un + static_cast<std::size_t>(left(i, j) - 1)] = j;
      women_order_[static_cast<std::size_t>(j) * un + static_cast<std::size_t>(right(i, j) - 1)] = i;
    }
  }
}

PreferenceStructure ranks_from_lists(const PreferenceLists& lists) {
  const int n = static_cast<int>(lists.men_lists.size());
  if (n < 1) throw ValidationError("preference lists are empty");
  if (static_cast<int>(lists.women_lists.size()) != n) {
    throw ValidationError("men_lists has " + std::to_string(n) + " lists but women_lists has " +
                          std::to_string(lists.women_lists.size()));
  }
  for (int i = 0; i < n; ++i) check_list(lists.men_lists[static_cast<std::size_t>(i)], n, "men_lists", i);
  for (int j = 0; j < n; ++j) check_list(lists.women_lists[static_cast<std::size_t>(j)], n, "women_lists", j);

  const auto un = static_cast<std::size_t>(n);
  std::vector<int> left(un * un), right(un * un);
  for (std::size_t i = 0; i < un; ++i) {
    for (std::size_t pos = 0; pos < un; ++pos) {
      left[i * un + static_cast<std::size_t>(lists.men_lists[i][pos])] = static_cast<int>(pos) + 1;
    }
  }
  for (std::size_t j = 0; j < un; ++j) {
    for (std::size_t pos = 0; pos < un; ++pos) {
      right[static_cast<std::size_t>(lists.women_lists[j][pos]) * un + j] = static_cast<int>(pos) + 1;
    }
  }
  return PreferenceStructure(n, std::move(left), std::move(right));
}

PreferenceLists lists_from_ranks(const PreferenceStructure& prefs) {
  PreferenceLists out;
  const int n = prefs.size();
  for (int i = 0; i < n; ++i) {
    auto l = prefs.man_list(i);
    out.men_lists.emplace_back(l.begin(), l.end());
  }
  for (int j = 0; j < n; ++j) {
    auto l = prefs.woman_list(j);
    out.women_lists.emplace_back(l.begin(), l.end());
  }
  return out;
}

PreferenceStructure random_preferences(int n, Rng& rng) {
  if (n < 1) throw ValidationError("random_preferences: n must be >= 1");
  PreferenceLists lists;
  lists.men_lists.reserve(static_cast<std::size_t>(n));
  lists.women_lists.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) lists.men_lists.push_back(rng.permutation(n));
  for (int j = 0; j < n; ++j) lists.women_lists.push_back(rng.permutation(n));
  return ranks_from_lists(lists);
}

namespace {

struct LineReader {
  std::istream& in;
  int line_no = 0;

  // Next non-blank line, or false at EOF.
  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  }
};

std::vector<int> parse_ints(const std::string& line, int line_no) {
  std::istringstream ss(line);
  std::vector<int> values;
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
    values.push_back(v);
  }
  return values;
}

}  // namespace

PreferenceStructure read_instance(std::istream& in) {
  LineReader reader{in};
  std::string line;
  if (!reader.next(line)) throw ParseError(0, "empty instance");
  auto header = parse_ints(line, reader.line_no);
  if (header.size() != 1) throw ParseError(reader.line_no, "first line must hold n alone");
  const int n = header[0];
  if (n < 1) throw ParseError(reader.line_no, "n must be >= 1");

  PreferenceLists lists;
  for (int k = 0; k < 2 * n; ++k) {
    if (!reader.next(line)) {
      throw ParseError(reader.line_no + 1, "expected " + std::to_string(2 * n) + " preference lines, got " +
                                               std::to_string(k));
    }
    auto values = parse_ints(line, reader.line_no);
    const bool man = k < n;
    const int index = man ? k : k - n;
    try {
      check_list(values, n, man ? "men_lists" : "women_lists", index);
    } catch (const ValidationError& e) {
      throw ParseError(reader.line_no, e.what());
    }
    (man ? lists.men_lists : lists.women_lists).push_back(std::move(values));
  }
  if (reader.next(line)) throw ParseError(reader.line_no, "unexpected trailing content");
  return ranks_from_lists(lists);
}

PreferenceStructure read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open instance file '" + path + "'");
  return read_instance(in);
}

void write_instance(std::ostream& out, const PreferenceStructure& prefs) {
  const int n = prefs.size();
  out << n << '\n';
  auto write_list = [&](std::span<const int> list) {
    for (std::size_t k = 0; k < list.size(); ++k) out << (k ? " " : "") << list[k];
    out << '\n';
  };
  for (int i = 0; i < n; ++i) write_list(prefs.man_list(i));
  for (int j = 0; j < n; ++j) write_list(prefs.woman_list(j));
}

}  // namespace pii
