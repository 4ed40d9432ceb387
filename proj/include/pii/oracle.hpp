#pragma once

#include <vector>

#include "pii/error.hpp"
#include "pii/matching.hpp"
#include "pii/prefs.hpp"

namespace pii::oracle {

inline constexpr int kMaxOracleN = 8;

class OracleRefusal : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

struct StableSet {
  std::vector<Matching> matchings;  // in lexicographic order of row_to_col
  Matching man_optimal;

  bool contains(const Matching& mu) const;
};

// Checks every pair directly against the rank matrices; shares no code with
// the matching module.
bool independent_is_stable(const PreferenceStructure& prefs, const std::vector<int>& row_to_col);

// Exhaustive over all n! matchings. Throws OracleRefusal for n > kMaxOracleN.
StableSet enumerate_stable(const PreferenceStructure& prefs);

}  // namespace pii::oracle
