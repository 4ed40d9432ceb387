#include "pii/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "pii/error.hpp"

namespace pii::bench {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Stream tags for the per-trial seed.
constexpr std::uint64_t kInstanceStream = 1;
constexpr std::uint64_t kInitStream = 2;
constexpr std::uint64_t kFillStream = 3;

double median_of_sorted(const std::vector<int>& v) {
  if (v.empty()) return kNaN;
  const std::size_t m = v.size() / 2;
  if (v.size() % 2) return v[m];
  return (static_cast<double>(v[m - 1]) + v[m]) / 2.0;
}

double median_of(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return median_of_sorted(v);
}

CellStats summarize(int n, std::vector<TrialResult> results) {
  CellStats c;
  c.n = n;
  c.trials = static_cast<int>(results.size());
  c.histogram.assign(kHistogramBuckets, 0);
  std::vector<int> iters;
  double unstable_sum = 0;
  double steps_sum = 0;
  for (const TrialResult& r : results) {
    steps_sum += static_cast<double>(r.sim_steps);
    c.max_iteration_cost = std::max(c.max_iteration_cost, r.max_iteration_cost);
    if (r.cycle) ++c.cycles;
    switch (r.status) {
      case RunStatus::kStable: {
        ++c.converged;
        iters.push_back(r.iterations);
        c.max_converged_run_steps = std::max(c.max_converged_run_steps, r.run_steps);
        const int bucket = std::min(kHistogramBuckets - 1, static_cast<int>((2LL * r.iterations) / n));
        ++c.histogram[static_cast<std::size_t>(bucket)];
        break;
      }
      case RunStatus::kStalled:
        ++c.stalled;
        unstable_sum += r.unstable_count;
        break;
      case RunStatus::kCapReached:
        ++c.cap_reached;
        unstable_sum += r.unstable_count;
        break;
    }
  }
  std::sort(iters.begin(), iters.end());
  if (iters.empty()) {
    c.mean_iters = c.median_iters = c.p95_iters = kNaN;
  } else {
    double sum = 0;
    for (int v : iters) sum += v;
    c.mean_iters = sum / static_cast<double>(iters.size());
    c.median_iters = median_of_sorted(iters);
    const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(iters.size())));
    c.p95_iters = iters[std::max<std::size_t>(rank, 1) - 1];
  }
  const int failed = c.stalled + c.cap_reached;
  c.mean_unstable_on_fail = failed ? unstable_sum / failed : kNaN;
  c.mean_sim_steps = c.trials ? steps_sum / c.trials : 0.0;
  c.results = std::move(results);
  return c;
}

}  // namespace

void validate(const CampaignConfig& config) {
  if (config.n_values.empty()) throw ValidationError("campaign needs at least one n value");
  for (int n : config.n_values) {
    if (n < 1) throw ValidationError("campaign n values must be >= 1, got " + std::to_string(n));
  }
  if (config.trials < 1) throw ValidationError("trials must be >= 1");
  if (!(config.cap_multiplier > 0) || !std::isfinite(config.cap_multiplier)) {
    throw ValidationError("cap multiplier must be a positive number");
  }
  if (config.workers < 1) throw ValidationError("workers must be >= 1");
  for (int n : config.n_values) resolve(config.policy, n);
}

int cap_for(double cap_multiplier, int n) {
  const double cap = std::ceil(cap_multiplier * n - 1e-9);
  return std::max(1, static_cast<int>(cap));
}

std::uint64_t trial_seed(std::uint64_t base_seed, int n, int trial) {
  return mix_seed(base_seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial));
}

Rng init_stream(std::uint64_t seed) { return Rng(mix_seed(seed, kInitStream)); }
Rng fill_stream(std::uint64_t seed) { return Rng(mix_seed(seed, kFillStream)); }

TrialSetup make_trial(int n, std::uint64_t seed, InitMethod init) {
  Rng instance_rng(mix_seed(seed, kInstanceStream));
  Rng init_rng = init_stream(seed);
  PreferenceStructure prefs = random_preferences(n, instance_rng);
  CostLedger ledger(n);
  Matching mu0 = initialize(init, prefs, init_rng, &ledger);
  return TrialSetup{std::move(prefs), std::move(mu0), std::move(ledger)};
}

TrialResult run_trial(const CampaignConfig& config, int n, int trial) {
  const std::uint64_t seed = trial_seed(config.base_seed, n, trial);
  TrialSetup setup = make_trial(n, seed, config.init);
  Rng fill_rng = fill_stream(seed);
  RunOptions options;
  options.cap = cap_for(config.cap_multiplier, n);
  options.fill = config.fill;
  options.record_trace = config.detect_cycles;
  RunOutcome out = run(setup.prefs, setup.mu0, config.policy, fill_rng, options, std::move(setup.ledger));

  TrialResult r;
  r.status = out.status;
  r.iterations = out.iterations;
  r.unstable_count = out.unstable_count;
  r.sim_steps = out.ledger.total();
  r.run_steps = out.ledger.run_cost();
  r.max_iteration_cost = out.ledger.max_iteration_cost();
  if (config.detect_cycles) {
    auto ms = trace_matchings(out);
    r.cycle = detect_cycle(ms).has_value();
  }
  return r;
}

TrialStats run_campaign(const CampaignConfig& config) {
  validate(config);
  const std::size_t cells = config.n_values.size();
  const auto trials = static_cast<std::size_t>(config.trials);
  std::vector<std::vector<TrialResult>> results(cells, std::vector<TrialResult>(trials));

  const std::size_t total = cells * trials;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= total) return;
      const std::size_t cell = idx / trials;
      const std::size_t t = idx % trials;
      try {
        results[cell][t] = run_trial(config, config.n_values[cell], static_cast<int>(t));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(total);
        return;
      }
    }
  };

  const int workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(config.workers), total));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  TrialStats stats;
  stats.policy = config.policy.kind;
  stats.init = config.init;
  stats.base_seed = config.base_seed;
  for (std::size_t c = 0; c < cells; ++c) stats.cells.push_back(summarize(config.n_values[c], std::move(results[c])));
  return stats;
}

PairedResult paired_comparison(const CampaignConfig& a, const CampaignConfig& b) {
  if (a.n_values != b.n_values) throw ValidationError("paired comparison: n values differ");
  if (a.trials != b.trials) throw ValidationError("paired comparison: trial counts differ");
  if (a.init != b.init) throw ValidationError("paired comparison: init methods differ");
  if (a.base_seed != b.base_seed) throw ValidationError("paired comparison: base seeds differ");

  PairedResult p{run_campaign(a), run_campaign(b), {}};
  for (std::size_t c = 0; c < p.a.cells.size(); ++c) {
    const CellStats& ca = p.a.cells[c];
    const CellStats& cb = p.b.cells[c];
    PairedCell pc;
    pc.n = ca.n;
    pc.trials = ca.trials;
    std::vector<int> ia, ib;
    for (std::size_t t = 0; t < ca.results.size(); ++t) {
      const TrialResult& ra = ca.results[t];
      const TrialResult& rb = cb.results[t];
      if (ra.status != RunStatus::kStable || rb.status != RunStatus::kStable) continue;
      ia.push_back(ra.iterations);
      ib.push_back(rb.iterations);
      const int d = rb.iterations - ra.iterations;
      pc.deltas.push_back(d);
      if (d < 0) ++pc.b_wins;
      else if (d > 0) ++pc.a_wins;
      else ++pc.ties;
    }
    pc.mutually_converged = static_cast<int>(pc.deltas.size());
    pc.median_a = median_of(ia);
    pc.median_b = median_of(ib);
    pc.median_delta = median_of(pc.deltas);
    p.cells.push_back(std::move(pc));
  }
  return p;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

namespace {

nlohmann::json json_number(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

}  // namespace

void write_report(std::ostream& out, const std::vector<TrialStats>& stats, ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    out << "policy,init,n,trials,converged,stalled,cap_reached,conv_rate,mean_iters,median_iters,p95_iters,"
           "mean_unstable_on_fail,mean_sim_steps,base_seed\n";
    for (const TrialStats& s : stats) {
      for (const CellStats& c : s.cells) {
        out << to_string(s.policy) << ',' << to_string(s.init) << ',' << c.n << ',' << c.trials << ','
            << c.converged << ',' << c.stalled << ',' << c.cap_reached << ',' << format_number(c.conv_rate()) << ','
            << format_number(c.mean_iters) << ',' << format_number(c.median_iters) << ','
            << format_number(c.p95_iters) << ',' << format_number(c.mean_unstable_on_fail) << ','
            << format_number(c.mean_sim_steps) << ',' << s.base_seed << '\n';
      }
    }
    return;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const TrialStats& s : stats) {
    for (const CellStats& c : s.cells) {
      rows.push_back({{"policy", to_string(s.policy)},
                      {"init", to_string(s.init)},
                      {"n", c.n},
                      {"trials", c.trials},
                      {"converged", c.converged},
                      {"stalled", c.stalled},
                      {"cap_reached", c.cap_reached},
                      {"conv_rate", json_number(c.conv_rate())},
                      {"mean_iters", json_number(c.mean_iters)},
                      {"median_iters", json_number(c.median_iters)},
                      {"p95_iters", json_number(c.p95_iters)},
                      {"mean_unstable_on_fail", json_number(c.mean_unstable_on_fail)},
                      {"mean_sim_steps", json_number(c.mean_sim_steps)},
                      {"base_seed", s.base_seed},
                      {"histogram", c.histogram}});
    }
  }
  out << rows.dump(2) << '\n';
}

void write_report(const std::string& path, const std::vector<TrialStats>& stats, ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write report '" + path + "'");
  write_report(out, stats, format);
  out.flush();
  if (!out) throw IoError("failed writing report '" + path + "'");
}

void write_histogram(std::ostream& out, const std::vector<TrialStats>& stats) {
  out << "policy,init,n,bucket,lo_iters,hi_iters,count\n";
  for (const TrialStats& s : stats) {
    for (const CellStats& c : s.cells) {
      for (int b = 0; b < kHistogramBuckets; ++b) {
        out << to_string(s.policy) << ',' << to_string(s.init) << ',' << c.n << ',' << b << ','
            << format_number(0.5 * b * c.n) << ',' << format_number(0.5 * (b + 1) * c.n) << ','
            << c.histogram[static_cast<std::size_t>(b)] << '\n';
      }
    }
  }
}

void write_paired(std::ostream& out, const PairedResult& p) {
  out << "policy_a,policy_b,init,n,trials,mutually_converged,median_a,median_b,median_delta,b_wins,a_wins,ties,"
         "win_rate_b\n";
  for (const PairedCell& c : p.cells) {
    out << to_string(p.a.policy) << ',' << to_string(p.b.policy) << ',' << to_string(p.a.init) << ',' << c.n << ','
        << c.trials << ',' << c.mutually_converged << ',' << format_number(c.median_a) << ','
        << format_number(c.median_b) << ',' << format_number(c.median_delta) << ',' << c.b_wins << ','
        << c.a_wins << ',' << c.ties << ',' << format_number(c.win_rate_b()) << '\n';
  }
}

}  // namespace pii::bench
