#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pii/costmodel.hpp"
#include "pii/engine.hpp"
#include "pii/init.hpp"
#include "pii/matching.hpp"
#include "pii/prefs.hpp"

namespace pii::bench {

struct CampaignConfig {
  std::vector<int> n_values;
  int trials = 1;
  SelectionPolicy policy;
  InitMethod init = InitMethod::kRandom;
  double cap_multiplier = 5.0;
  std::uint64_t base_seed = 0;
  int workers = 1;
  FillRule fill = FillRule::kRandom;
  // Keep each run's matchings and test them for a repeat.
  bool detect_cycles = false;
};

// Throws ValidationError on empty n list, n < 1, trials < 1, cap multiplier <= 0 or workers < 1.
void validate(const CampaignConfig& config);

// ceil(cap_multiplier * n), at least 1.
int cap_for(double cap_multiplier, int n);

std::uint64_t trial_seed(std::uint64_t base_seed, int n, int trial);

// Instance and initial matching for a trial seed. The instance, the initial
// matching and the fill each get their own stream.
struct TrialSetup {
  PreferenceStructure prefs;
  Matching mu0;
  CostLedger ledger;  // holds initialization charges
};

TrialSetup make_trial(int n, std::uint64_t seed, InitMethod init);

// The streams make_trial draws the initial matching and the fill from.
Rng init_stream(std::uint64_t seed);
Rng fill_stream(std::uint64_t seed);

struct TrialResult {
  RunStatus status = RunStatus::kStable;
  int iterations = 0;
  int unstable_count = 0;
  std::int64_t sim_steps = 0;  // initialization plus run
  std::int64_t run_steps = 0;  // run only
  std::int64_t max_iteration_cost = 0;
  bool cycle = false;
};

TrialResult run_trial(const CampaignConfig& config, int n, int trial);

struct CellStats {
  int n = 0;
  int trials = 0;
  int converged = 0;
  int stalled = 0;
  int cap_reached = 0;
  // Converged runs bucketed by iterations in steps of 0.5n; the last bucket
  // also takes runs converging at exactly 5n or later.
  std::vector<int> histogram;
  double mean_iters = 0;    // NaN when nothing converged
  double median_iters = 0;  // NaN when nothing converged
  double p95_iters = 0;     // nearest rank; NaN when nothing converged
  double mean_unstable_on_fail = 0;  // NaN when everything converged
  double mean_sim_steps = 0;
  std::int64_t max_iteration_cost = 0;
  std::int64_t max_converged_run_steps = 0;
  int cycles = 0;
  std::vector<TrialResult> results;  // by trial index

  double conv_rate() const { return trials ? static_cast<double>(converged) / trials : 0.0; }
};

inline constexpr int kHistogramBuckets = 10;

struct TrialStats {
  PolicyKind policy = PolicyKind::kStandard;
  InitMethod init = InitMethod::kRandom;
  std::uint64_t base_seed = 0;
  std::vector<CellStats> cells;  // in n_values order
};

// Results do not depend on the worker count.
TrialStats run_campaign(const CampaignConfig& config);

struct PairedCell {
  int n = 0;
  int trials = 0;
  int mutually_converged = 0;
  double median_a = 0;      // NaN when no pair converged under both
  double median_b = 0;
  double median_delta = 0;  // median of (iterations_b - iterations_a)
  int b_wins = 0;           // b needed fewer iterations
  int a_wins = 0;
  int ties = 0;
  std::vector<int> deltas;  // iterations_b - iterations_a, mutually converged trials in index order

  double win_rate_b() const { return mutually_converged ? static_cast<double>(b_wins) / mutually_converged : 0.0; }
};

struct PairedResult {
  TrialStats a;
  TrialStats b;
  std::vector<PairedCell> cells;
};

// Both configs must agree on n values, trials, init and base seed, so every
// trial index sees the same instance and initial matching under both.
PairedResult paired_comparison(const CampaignConfig& a, const CampaignConfig& b);

enum class ReportFormat { kCsv, kJson };

void write_report(std::ostream& out, const std::vector<TrialStats>& stats, ReportFormat format);
// Throws IoError if the file cannot be written.
void write_report(const std::string& path, const std::vector<TrialStats>& stats, ReportFormat format);
void write_histogram(std::ostream& out, const std::vector<TrialStats>& stats);
void write_paired(std::ostream& out, const PairedResult& paired);

// Fixed formatting used in reports; empty for NaN.
std::string format_number(double value);

}  // namespace pii::bench
