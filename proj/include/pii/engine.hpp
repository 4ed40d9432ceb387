#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pii/costmodel.hpp"
#include "pii/matching.hpp"
#include "pii/prefs.hpp"
#include "pii/rng.hpp"

namespace pii {

enum class PolicyKind { kStandard, kRightMinimum, kDynamic, kRmd };

// "standard", "rm", "dynamic", "rmd".
std::string_view to_string(PolicyKind kind);
std::optional<PolicyKind> parse_policy_kind(std::string_view text);

// Unset parameters resolve per instance size: rm_start defaults to n;
// initial_wait defaults to 2 for Dynamic and n for RMD.
struct SelectionPolicy {
  PolicyKind kind = PolicyKind::kStandard;
  std::optional<int> rm_start;
  std::optional<int> initial_wait;

  static SelectionPolicy standard() { return {PolicyKind::kStandard, {}, {}}; }
  static SelectionPolicy right_minimum() { return {PolicyKind::kRightMinimum, {}, {}}; }
  static SelectionPolicy dynamic() { return {PolicyKind::kDynamic, {}, {}}; }
  static SelectionPolicy rmd() { return {PolicyKind::kRmd, {}, {}}; }
};

struct ResolvedPolicy {
  PolicyKind kind = PolicyKind::kStandard;
  int rm_start = 0;
  int initial_wait = 2;

  bool uses_dynamic() const { return kind == PolicyKind::kDynamic || kind == PolicyKind::kRmd; }
  bool right_minimum_active(int iteration) const {
    return kind == PolicyKind::kRightMinimum || (kind == PolicyKind::kRmd && iteration >= rm_start);
  }
};

// Throws ValidationError for rm_start < 0 or initial_wait < 1.
ResolvedPolicy resolve(const SelectionPolicy& policy, int n);

struct LeftMinimum {
  int left = 0;  // L of the pointed-to pair
  int col = 0;
};

// Per-row Dynamic state: the minimum pointer over NM1 pairs chosen in the row,
// the iteration it last entered a comparison, and its wait time.
struct DynamicRowState {
  std::optional<LeftMinimum> pointer;
  int last_compared = 0;
  int wait = 2;
};

struct DynamicState {
  int initial_wait = 2;
  std::vector<DynamicRowState> rows;
};

DynamicState initial_dynamic_state(int n, int initial_wait);

// Wait condition: k - last_compared > wait for a row with a pointer.
bool wait_condition(const DynamicRowState& row, int iteration);

enum class PolicyEventKind {
  kRightMinimumActive,  // RM filter applied this iteration
  kFallback,            // RM filter left every row empty; used the filter-free candidates
  kRecompete,           // row's left-minimum entered the comparison (wait condition)
  kNewLeftMinimum,      // pointer moved; value = new L
  kLeftMinimumSelected, // left-minimum chosen again; value = new wait
  kIdle,                // nothing eligible; matching unchanged
};

std::string_view to_string(PolicyEventKind kind);

struct PolicyEvent {
  PolicyEventKind kind = PolicyEventKind::kIdle;
  int row = -1;
  int col = -1;
  int value = -1;
};

struct Selection {
  // Per row: column of the NM1-generating pair, if any.
  std::vector<std::optional<int>> generating;
  // Rows whose wait condition held; their left-minimum entered the comparison.
  std::vector<int> recompeting_rows;
  bool any_blocking = false;
  bool right_minimum_active = false;
  bool fell_back = false;
};

// Per row, the minimum-L blocking pair eligible under the policy.
//  Standard: every blocking pair.
//  RightMinimum: blocking pairs (i,j) with R(i,j) < R(i, mu(i)).
//  Dynamic: every blocking pair, except on rows whose wait condition holds,
//    where only pairs with L < pointer.left plus the pointed-to pair compete.
//  RMD: Dynamic, intersected with RightMinimum from rm_start on; if that
//    leaves every row empty, Dynamic alone for that iteration.
Selection select_nm1_generating(const PreferenceStructure& prefs, const Matching& mu, const ResolvedPolicy& policy,
                                const DynamicState* state, int iteration);

// Per column, the generating pair with minimum R. Sorted by row.
std::vector<Pair> select_nm1(const PreferenceStructure& prefs, std::span<const std::optional<int>> generating);

enum class FillRule {
  kRandom,      // uniform random bijection between open rows and columns
  kGreedyLeft,  // open rows in index order take their best open column
};

// Inserts nm1, drops matched pairs sharing a row or column with it, and fills
// the open rows and columns. Throws InternalError if nm1 is not row/column
// disjoint or holds a non-blocking pair.
Matching apply_iteration(const PreferenceStructure& prefs, const Matching& mu, std::span<const Pair> nm1, Rng& rng,
                         FillRule fill = FillRule::kRandom);

// Rows in recompeting_rows get last_compared = iteration. Then, per NM1 pair
// q in row i: a first pointer or L(q) < pointer.left moves the pointer to q
// (wait = initial_wait for a first pointer, 2 otherwise); q equal to the
// pointed-to pair increments wait. Both record last_compared = iteration.
void update_dynamic_state(DynamicState& state, const PreferenceStructure& prefs, std::span<const Pair> nm1,
                          std::span<const int> recompeting_rows, int iteration,
                          std::vector<PolicyEvent>* events = nullptr);

enum class RunStatus { kStable, kCapReached, kStalled };

std::string_view to_string(RunStatus status);

struct IterationRecord {
  int iteration = 0;
  Matching matching;  // before the iteration
  std::vector<Pair> nm1;
  std::vector<PolicyEvent> events;
  std::vector<Charge> charges;
};

struct RunOptions {
  std::optional<int> cap;  // default 5n
  FillRule fill = FillRule::kRandom;
  bool record_trace = true;
};

struct RunOutcome {
  RunStatus status = RunStatus::kStable;
  int iterations = 0;
  Matching final_matching;
  int unstable_count = 0;
  std::vector<IterationRecord> trace;
  CostLedger ledger;
};

RunOutcome run(const PreferenceStructure& prefs, const Matching& mu0, const SelectionPolicy& policy, Rng& rng,
               const RunOptions& options = {});

// Same, with an existing ledger (e.g. already holding initialization charges).
RunOutcome run(const PreferenceStructure& prefs, const Matching& mu0, const SelectionPolicy& policy, Rng& rng,
               const RunOptions& options, CostLedger ledger);

struct Cycle {
  int start = 0;
  int period = 0;
  bool operator==(const Cycle&) const = default;
};

// Earliest repeated matching: smallest start with matchings[start] equal to a later entry.
std::optional<Cycle> detect_cycle(std::span<const Matching> matchings);

// Every trace matching followed by the final one.
std::vector<Matching> trace_matchings(const RunOutcome& outcome);

}  // namespace pii
