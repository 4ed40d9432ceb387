#include "pii/engine.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "pii/error.hpp"

namespace pii {

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kStandard: return "standard";
    case PolicyKind::kRightMinimum: return "rm";
    case PolicyKind::kDynamic: return "dynamic";
    case PolicyKind::kRmd: return "rmd";
  }
  return "unknown";
}

std::optional<PolicyKind> parse_policy_kind(std::string_view text) {
  if (text == "standard") return PolicyKind::kStandard;
  if (text == "rm") return PolicyKind::kRightMinimum;
  if (text == "dynamic") return PolicyKind::kDynamic;
  if (text == "rmd") return PolicyKind::kRmd;
  return std::nullopt;
}

std::string_view to_string(PolicyEventKind kind) {
  switch (kind) {
    case PolicyEventKind::kRightMinimumActive: return "rm_active";
    case PolicyEventKind::kFallback: return "fallback";
    case PolicyEventKind::kRecompete: return "recompete";
    case PolicyEventKind::kNewLeftMinimum: return "new_left_min";
    case PolicyEventKind::kLeftMinimumSelected: return "left_min_selected";
    case PolicyEventKind::kIdle: return "idle";
  }
  return "unknown";
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kStable: return "STABLE";
    case RunStatus::kCapReached: return "CAP_REACHED";
    case RunStatus::kStalled: return "STALLED";
  }
  return "unknown";
}

ResolvedPolicy resolve(const SelectionPolicy& policy, int n) {
  ResolvedPolicy r;
  r.kind = policy.kind;
  r.rm_start = policy.rm_start.value_or(n);
  r.initial_wait = policy.initial_wait.value_or(policy.kind == PolicyKind::kRmd ? n : 2);
  if (r.rm_start < 0) throw ValidationError("rm_start must be >= 0");
  if (r.initial_wait < 1) throw ValidationError("initial_wait must be >= 1");
  return r;
}

DynamicState initial_dynamic_state(int n, int initial_wait) {
  DynamicState s;
  s.initial_wait = initial_wait;
  s.rows.assign(static_cast<std::size_t>(n), DynamicRowState{std::nullopt, 0, initial_wait});
  return s;
}

bool wait_condition(const DynamicRowState& row, int iteration) {
  return row.pointer.has_value() && iteration - row.last_compared > row.wait;
}

Selection select_nm1_generating(const PreferenceStructure& prefs, const Matching& mu, const ResolvedPolicy& policy,
                                const DynamicState* state, int iteration) {
  const int n = prefs.size();
  if (mu.size() != n) throw ValidationError("matching size does not match the instance");
  const bool dynamic = policy.uses_dynamic();
  if (dynamic && (state == nullptr || static_cast<int>(state->rows.size()) != n)) {
    throw ValidationError("dynamic policy needs a state with one row per man");
  }
  const bool rm = policy.right_minimum_active(iteration);
  // RMD keeps a filter-free candidate per row in case RM empties every row.
  const bool want_fallback = rm && dynamic;

  Selection sel;
  sel.right_minimum_active = rm;
  sel.generating.assign(static_cast<std::size_t>(n), std::nullopt);
  std::vector<std::optional<int>> fallback;
  if (want_fallback) fallback.assign(static_cast<std::size_t>(n), std::nullopt);
  bool any_primary = false;
  bool any_fallback = false;

  for (int i = 0; i < n; ++i) {
    const int cur = mu.col_of(i);
    const int cur_left = prefs.left(i, cur);
    const int cur_right = prefs.right(i, cur);

    bool recompete = false;
    int min_left = 0;
    int min_col = -1;
    if (dynamic) {
      const DynamicRowState& rs = state->rows[static_cast<std::size_t>(i)];
      if (wait_condition(rs, iteration)) {
        recompete = true;
        min_left = rs.pointer->left;
        min_col = rs.pointer->col;
        sel.recompeting_rows.push_back(i);
      }
    }

    std::optional<int> primary;
    std::optional<int> plain;
    auto list = prefs.man_list(i);
    // Blocking pairs sit above the current partner; scanning in list order
    // meets them by increasing L, so the first eligible one is the row minimum.
    for (int pos = 0; pos < cur_left - 1; ++pos) {
      const int j = list[static_cast<std::size_t>(pos)];
      if (!(prefs.right(i, j) < prefs.right(mu.row_of(j), j))) continue;
      sel.any_blocking = true;
      if (recompete && !(pos + 1 < min_left || j == min_col)) continue;
      if (!plain) plain = j;
      if (!primary && (!rm || prefs.right(i, j) < cur_right)) primary = j;
      if (primary && (plain || !want_fallback)) break;
    }
    if (primary) {
      sel.generating[static_cast<std::size_t>(i)] = primary;
      any_primary = true;
    }
    if (want_fallback && plain) {
      fallback[static_cast<std::size_t>(i)] = plain;
      any_fallback = true;
    }
  }

  if (want_fallback && !any_primary && any_fallback) {
    sel.generating = std::move(fallback);
    sel.fell_back = true;
  }
  return sel;
}

std::vector<Pair> select_nm1(const PreferenceStructure& prefs, std::span<const std::optional<int>> generating) {
  const int n = prefs.size();
  if (static_cast<int>(generating.size()) != n) throw ValidationError("generating must have one entry per row");
  std::vector<int> best_row(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const auto& g = generating[static_cast<std::size_t>(i)];
    if (!g) continue;
    const int j = *g;
    if (j < 0 || j >= n) throw ValidationError("generating column out of range");
    int& b = best_row[static_cast<std::size_t>(j)];
    if (b == -1) {
      b = i;
    } else {
      const int rb = prefs.right(b, j);
      const int ri = prefs.right(i, j);
      if (ri == rb) throw InternalError("tied right values in column " + std::to_string(j));
      if (ri < rb) b = i;
    }
  }
  std::vector<Pair> nm1;
  for (int j = 0; j < n; ++j) {
    if (best_row[static_cast<std::size_t>(j)] >= 0) nm1.push_back({best_row[static_cast<std::size_t>(j)], j});
  }
  std::sort(nm1.begin(), nm1.end());
  return nm1;
}

Matching apply_iteration(const PreferenceStructure& prefs, const Matching& mu, std::span<const Pair> nm1, Rng& rng,
                         FillRule fill) {
  const int n = prefs.size();
  const auto un = static_cast<std::size_t>(n);
  if (mu.size() != n) throw ValidationError("matching size does not match the instance");
  if (nm1.empty()) return mu;

  std::vector<int> next(un, -1);
  std::vector<char> col_taken(un, 0);
  std::vector<char> col_nm1(un, 0);
  for (const Pair& p : nm1) {
    if (p.row < 0 || p.row >= n || p.col < 0 || p.col >= n) throw InternalError("NM1 pair out of range");
    if (next[static_cast<std::size_t>(p.row)] != -1 || col_taken[static_cast<std::size_t>(p.col)]) {
      throw InternalError("NM1 set is not row/column disjoint");
    }
    const int l = mu.col_of(p.row);
    const int m = mu.row_of(p.col);
    if (!(l != p.col && prefs.left(p.row, p.col) < prefs.left(p.row, l) &&
          prefs.right(p.row, p.col) < prefs.right(m, p.col))) {
      throw InternalError("NM1 pair (" + std::to_string(p.row) + "," + std::to_string(p.col) + ") is not blocking");
    }
    next[static_cast<std::size_t>(p.row)] = p.col;
    col_taken[static_cast<std::size_t>(p.col)] = 1;
    col_nm1[static_cast<std::size_t>(p.col)] = 1;
  }
  // Keep matched pairs that share neither row nor column with an NM1 pair.
  for (int i = 0; i < n; ++i) {
    const int j = mu.col_of(i);
    if (next[static_cast<std::size_t>(i)] == -1 && !col_nm1[static_cast<std::size_t>(j)]) {
      next[static_cast<std::size_t>(i)] = j;
      col_taken[static_cast<std::size_t>(j)] = 1;
    }
  }

  std::vector<int> open_rows, open_cols;
  for (int i = 0; i < n; ++i) {
    if (next[static_cast<std::size_t>(i)] == -1) open_rows.push_back(i);
  }
  for (int j = 0; j < n; ++j) {
    if (!col_taken[static_cast<std::size_t>(j)]) open_cols.push_back(j);
  }
  if (open_rows.size() != open_cols.size()) throw InternalError("open rows and columns differ in number");

  if (fill == FillRule::kRandom) {
    rng.shuffle(std::span<int>(open_cols));
    for (std::size_t t = 0; t < open_rows.size(); ++t) next[static_cast<std::size_t>(open_rows[t])] = open_cols[t];
  } else {
    for (int i : open_rows) {
      auto best = open_cols.begin();
      for (auto it = open_cols.begin(); it != open_cols.end(); ++it) {
        if (prefs.left(i, *it) < prefs.left(i, *best)) best = it;
      }
      next[static_cast<std::size_t>(i)] = *best;
      open_cols.erase(best);
    }
  }
  return Matching(std::move(next));
}

void update_dynamic_state(DynamicState& state, const PreferenceStructure& prefs, std::span<const Pair> nm1,
                          std::span<const int> recompeting_rows, int iteration, std::vector<PolicyEvent>* events) {
  for (int i : recompeting_rows) state.rows.at(static_cast<std::size_t>(i)).last_compared = iteration;
  for (const Pair& q : nm1) {
    DynamicRowState& rs = state.rows.at(static_cast<std::size_t>(q.row));
    const int l = prefs.left(q.row, q.col);
    if (!rs.pointer || l < rs.pointer->left) {
      rs.wait = rs.pointer ? 2 : state.initial_wait;
      rs.pointer = LeftMinimum{l, q.col};
      rs.last_compared = iteration;
      if (events) events->push_back({PolicyEventKind::kNewLeftMinimum, q.row, q.col, l});
    } else if (q.col == rs.pointer->col) {
      ++rs.wait;
      rs.last_compared = iteration;
      if (events) events->push_back({PolicyEventKind::kLeftMinimumSelected, q.row, q.col, rs.wait});
    }
  }
}

RunOutcome run(const PreferenceStructure& prefs, const Matching& mu0, const SelectionPolicy& policy, Rng& rng,
               const RunOptions& options) {
  return run(prefs, mu0, policy, rng, options, CostLedger(prefs.size()));
}

RunOutcome run(const PreferenceStructure& prefs, const Matching& mu0, const SelectionPolicy& policy, Rng& rng,
               const RunOptions& options, CostLedger ledger) {
  const int n = prefs.size();
  if (mu0.size() != n) throw ValidationError("initial matching size does not match the instance");
  if (ledger.n() != n) throw ValidationError("ledger size does not match the instance");
  const ResolvedPolicy rp = resolve(policy, n);
  const int cap = options.cap.value_or(5 * n);
  if (cap < 1) throw ValidationError("cap must be >= 1");
  const bool dynamic = rp.uses_dynamic();

  DynamicState state = initial_dynamic_state(n, rp.initial_wait);
  RunOutcome out{RunStatus::kStable, 0, mu0, 0, {}, std::move(ledger)};
  Matching mu = mu0;
  std::vector<PolicyEvent> events;

  for (int k = 0;; ++k) {
    Selection sel = select_nm1_generating(prefs, mu, rp, dynamic ? &state : nullptr, k);
    if (!sel.any_blocking) {
      out.status = RunStatus::kStable;
      out.iterations = k;
      break;
    }
    if (k >= cap) {
      out.status = RunStatus::kCapReached;
      out.iterations = k;
      break;
    }
    std::vector<Pair> nm1 = select_nm1(prefs, sel.generating);
    if (nm1.empty() && sel.recompeting_rows.empty()) {
      out.status = RunStatus::kStalled;
      out.iterations = k;
      break;
    }

    const std::size_t first_charge = out.ledger.charges().size();
    events.clear();
    if (sel.right_minimum_active) events.push_back({PolicyEventKind::kRightMinimumActive});
    if (sel.fell_back) events.push_back({PolicyEventKind::kFallback});
    for (int i : sel.recompeting_rows) {
      events.push_back({PolicyEventKind::kRecompete, i, state.rows[static_cast<std::size_t>(i)].pointer->col,
                        state.rows[static_cast<std::size_t>(i)].wait});
    }

    // Each PE tests its own blocking inequalities, then row and column minima.
    out.ledger.charge(k, Primitive::kConstantOp);
    out.ledger.charge(k, Primitive::kRowFindMin);
    out.ledger.charge(k, Primitive::kColFindMin);

    Matching next = mu;
    if (nm1.empty()) {
      events.push_back({PolicyEventKind::kIdle});
    } else {
      next = apply_iteration(prefs, mu, nm1, rng, options.fill);
      // Removal along NM1 rows and columns, then fill coordination.
      out.ledger.charge(k, Primitive::kRowBroadcast);
      out.ledger.charge(k, Primitive::kColBroadcast);
      out.ledger.charge(k, Primitive::kRowBroadcast);
    }
    if (dynamic) {
      update_dynamic_state(state, prefs, nm1, sel.recompeting_rows, k, &events);
      // Pointer comparison, then pointer broadcast along the row.
      out.ledger.charge(k, Primitive::kConstantOp);
      out.ledger.charge(k, Primitive::kRowBroadcast);
    }

    if (options.record_trace) {
      auto all = out.ledger.charges();
      out.trace.push_back({k, mu, nm1, events, std::vector<Charge>(all.begin() + static_cast<std::ptrdiff_t>(first_charge), all.end())});
    }
    mu = std::move(next);
  }

  out.final_matching = mu;
  out.unstable_count = out.status == RunStatus::kStable ? 0 : count_unstable_pairs(prefs, mu);
  return out;
}

std::optional<Cycle> detect_cycle(std::span<const Matching> matchings) {
  // First occurrence of each matching, and for it the first later repeat.
  std::map<std::vector<int>, int> first;
  std::vector<int> repeat_at(matchings.size(), -1);
  for (std::size_t t = 0; t < matchings.size(); ++t) {
    auto [it, inserted] = first.emplace(matchings[t].row_to_col(), static_cast<int>(t));
    if (!inserted && repeat_at[static_cast<std::size_t>(it->second)] == -1) {
      repeat_at[static_cast<std::size_t>(it->second)] = static_cast<int>(t);
    }
  }
  for (std::size_t s = 0; s < matchings.size(); ++s) {
    if (repeat_at[s] != -1) return Cycle{static_cast<int>(s), repeat_at[s] - static_cast<int>(s)};
  }
  return std::nullopt;
}

std::vector<Matching> trace_matchings(const RunOutcome& outcome) {
  std::vector<Matching> out;
  out.reserve(outcome.trace.size() + 1);
  for (const auto& rec : outcome.trace) out.push_back(rec.matching);
  out.push_back(outcome.final_matching);
  return out;
}

}  // namespace pii
