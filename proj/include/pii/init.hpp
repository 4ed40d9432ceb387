#pragma once

#include <optional>
#include <string_view>

#include "pii/costmodel.hpp"
#include "pii/matching.hpp"
#include "pii/prefs.hpp"
#include "pii/rng.hpp"

namespace pii {

enum class InitMethod { kRandom, kQuick, kGaleShapley };

// "random", "quick", "gs".
std::string_view to_string(InitMethod method);
std::optional<InitMethod> parse_init_method(std::string_view text);

struct InitStats {
  int proposals = 0;
  int rounds = 0;
};

// Uniform random permutation.
Matching random_matching(int n, Rng& rng);

// Men in index order each take their best woman still free.
// Charges n constant-ops to the ledger's init phase.
Matching quick_init(const PreferenceStructure& prefs, CostLedger* ledger = nullptr, InitStats* stats = nullptr);

// Man-proposing deferred acceptance; returns the man-optimal stable matching.
// Charges one col-find-min per proposal round (a round = every free man
// proposing once, each woman keeping her best offer).
Matching gale_shapley_init(const PreferenceStructure& prefs, CostLedger* ledger = nullptr,
                           InitStats* stats = nullptr);

// rng is only drawn from for kRandom.
Matching initialize(InitMethod method, const PreferenceStructure& prefs, Rng& rng, CostLedger* ledger = nullptr);

}  // namespace pii
