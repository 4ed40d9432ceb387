#include "pii/init.hpp"

#include "pii/error.hpp"

namespace pii {

std::string_view to_string(InitMethod method) {
  switch (method) {
    case InitMethod::kRandom: return "random";
    case InitMethod::kQuick: return "quick";
    case InitMethod::kGaleShapley: return "gs";
  }
  return "unknown";
}

std::optional<InitMethod> parse_init_method(std::string_view text) {
  if (text == "random") return InitMethod::kRandom;
  if (text == "quick") return InitMethod::kQuick;
  if (text == "gs") return InitMethod::kGaleShapley;
  return std::nullopt;
}

Matching random_matching(int n, Rng& rng) {
  if (n < 1) throw ValidationError("random_matching: n must be >= 1");
  return Matching(rng.permutation(n));
}

Matching quick_init(const PreferenceStructure& prefs, CostLedger* ledger, InitStats* stats) {
  const int n = prefs.size();
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  std::vector<int> row_to_col(static_cast<std::size_t>(n), -1);
  int proposals = 0;
  for (int i = 0; i < n; ++i) {
    for (int j : prefs.man_list(i)) {
      if (!taken[static_cast<std::size_t>(j)]) {
        taken[static_cast<std::size_t>(j)] = 1;
        row_to_col[static_cast<std::size_t>(i)] = j;
        ++proposals;
        break;
      }
    }
  }
  if (ledger) ledger->charge(kInitPhase, Primitive::kConstantOp, n);
  if (stats) {
    stats->proposals = proposals;
    stats->rounds = n;
  }
  return Matching(std::move(row_to_col));
}

Matching gale_shapley_init(const PreferenceStructure& prefs, CostLedger* ledger, InitStats* stats) {
  const int n = prefs.size();
  const auto un = static_cast<std::size_t>(n);
  std::vector<int> next_pos(un, 0);     // next list position each man will propose to
  std::vector<int> husband(un, -1);     // woman -> man
  std::vector<int> free_men(un);
  for (int i = 0; i < n; ++i) free_men[static_cast<std::size_t>(i)] = i;

  int proposals = 0;
  int rounds = 0;
  std::vector<int> next_free;
  while (!free_men.empty()) {
    ++rounds;
    next_free.clear();
    for (int man : free_men) {
      const int woman = prefs.man_list(man)[static_cast<std::size_t>(next_pos[static_cast<std::size_t>(man)]++)];
      ++proposals;
      int& current = husband[static_cast<std::size_t>(woman)];
      if (current == -1) {
        current = man;
      } else if (prefs.right(man, woman) < prefs.right(current, woman)) {
        next_free.push_back(current);
        current = man;
      } else {
        next_free.push_back(man);
      }
    }
    free_men.swap(next_free);
  }

  std::vector<int> row_to_col(un);
  for (int j = 0; j < n; ++j) row_to_col[static_cast<std::size_t>(husband[static_cast<std::size_t>(j)])] = j;
  if (ledger) ledger->charge(kInitPhase, Primitive::kColFindMin, rounds);
  if (stats) {
    stats->proposals = proposals;
    stats->rounds = rounds;
  }
  return Matching(std::move(row_to_col));
}

Matching initialize(InitMethod method, const PreferenceStructure& prefs, Rng& rng, CostLedger* ledger) {
  switch (method) {
    case InitMethod::kRandom: return random_matching(prefs.size(), rng);
    case InitMethod::kQuick: return quick_init(prefs, ledger);
    case InitMethod::kGaleShapley: return gale_shapley_init(prefs, ledger);
  }
  throw ValidationError("unknown init method");
}

}  // namespace pii
