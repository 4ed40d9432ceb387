#include "pii/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "pii/bench.hpp"
#include "pii/error.hpp"
#include "pii/init.hpp"
#include "pii/matching.hpp"
#include "pii/oracle.hpp"
#include "pii/prefs.hpp"

namespace pii::cli {

namespace {

int parse_int(std::string_view text, std::string_view what) {
  std::string s(text);
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw ValidationError("bad " + std::string(what) + " '" + s + "'");
  return v;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write '" + path + "'");
  return f;
}

PolicyKind policy_or_throw(const std::string& text) {
  auto p = parse_policy_kind(text);
  if (!p) throw ValidationError("unknown policy '" + text + "' (expected standard, rm, dynamic or rmd)");
  return *p;
}

InitMethod init_or_throw(const std::string& text) {
  auto m = parse_init_method(text);
  if (!m) throw ValidationError("unknown init '" + text + "' (expected random, quick or gs)");
  return *m;
}

FillRule fill_or_throw(const std::string& text) {
  if (text == "random") return FillRule::kRandom;
  if (text == "greedy") return FillRule::kGreedyLeft;
  throw ValidationError("unknown fill '" + text + "' (expected random or greedy)");
}

nlohmann::json pairs_json(const std::vector<Pair>& pairs) {
  nlohmann::json a = nlohmann::json::array();
  for (const Pair& p : pairs) a.push_back({p.row, p.col});
  return a;
}

struct PolicyFlags {
  std::string policy = "standard";
  std::optional<int> rm_start;
  std::optional<int> initial_wait;

  SelectionPolicy build(const std::string& name) const { return {policy_or_throw(name), rm_start, initial_wait}; }
};

}  // namespace

std::vector<int> parse_n_values(std::string_view text) {
  std::vector<int> out;
  if (text.find(':') != std::string_view::npos) {
    std::vector<int> parts;
    std::size_t start = 0;
    for (;;) {
      std::size_t colon = text.find(':', start);
      parts.push_back(parse_int(text.substr(start, colon - start), "n range"));
      if (colon == std::string_view::npos) break;
      start = colon + 1;
    }
    if (parts.size() != 3 || parts[2] < 1 || parts[0] > parts[1]) {
      throw ValidationError("n range must be start:stop:step with start <= stop and step >= 1");
    }
    for (int n = parts[0]; n <= parts[1]; n += parts[2]) out.push_back(n);
  } else {
    std::size_t start = 0;
    for (;;) {
      std::size_t comma = text.find(',', start);
      out.push_back(parse_int(text.substr(start, comma - start), "n value"));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  for (int n : out) {
    if (n < 1) throw ValidationError("n must be >= 1, got " + std::to_string(n));
  }
  return out;
}

std::string format_solve_summary(const RunOutcome& outcome) {
  std::ostringstream s;
  s << to_string(outcome.status) << ' ' << outcome.iterations << '\n'
    << format_matching(outcome.final_matching) << '\n'
    << "unstable_pairs " << outcome.unstable_count << '\n'
    << "sim_steps " << outcome.ledger.total() << '\n';
  return s.str();
}

void write_trace(std::ostream& out, const RunOutcome& outcome) {
  for (const IterationRecord& rec : outcome.trace) {
    nlohmann::json events = nlohmann::json::array();
    for (const PolicyEvent& e : rec.events) {
      nlohmann::json j = {{"type", to_string(e.kind)}};
      if (e.row >= 0) j["row"] = e.row;
      if (e.col >= 0) j["col"] = e.col;
      if (e.value >= 0) j["value"] = e.value;
      events.push_back(std::move(j));
    }
    nlohmann::json charges = nlohmann::json::array();
    std::int64_t cost = 0;
    for (const Charge& c : rec.charges) {
      charges.push_back({{"kind", to_string(c.kind)}, {"times", c.times}});
      cost += static_cast<std::int64_t>(c.times) * outcome.ledger.step_cost(c.kind);
    }
    nlohmann::json line = {{"iteration", rec.iteration},
                           {"matching", rec.matching.row_to_col()},
                           {"nm1", pairs_json(rec.nm1)},
                           {"events", std::move(events)},
                           {"charges", std::move(charges)},
                           {"cost", cost}};
    out << line.dump() << '\n';
  }
  nlohmann::json last = {{"final", true},
                         {"status", to_string(outcome.status)},
                         {"iterations", outcome.iterations},
                         {"matching", outcome.final_matching.row_to_col()},
                         {"unstable_pairs", outcome.unstable_count},
                         {"init_steps", outcome.ledger.init_cost()},
                         {"sim_steps", outcome.ledger.total()}};
  out << last.dump() << '\n';
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parallel iterative improvement for stable matching", "pii"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Write a random instance");
  int gen_n = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "Number of men and women")->required();
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "Run the engine on an instance");
  std::string solve_instance, solve_init = "random", solve_trace, solve_fill = "random";
  PolicyFlags solve_policy;
  double solve_cap_mult = 5.0;
  std::uint64_t solve_seed = 0;
  solve->add_option("instance", solve_instance, "Instance file")->required();
  solve->add_option("--policy", solve_policy.policy, "standard, rm, dynamic or rmd");
  solve->add_option("--init", solve_init, "random, quick or gs");
  solve->add_option("--cap-mult", solve_cap_mult, "Iteration cap as a multiple of n");
  solve->add_option("--seed", solve_seed, "Random seed for init and fill");
  solve->add_option("--trace", solve_trace, "Write a JSON-lines trace here");
  solve->add_option("--fill", solve_fill, "random or greedy");
  solve->add_option("--rm-start", solve_policy.rm_start, "RMD: first iteration with the RM filter (default n)");
  solve->add_option("--initial-wait", solve_policy.initial_wait, "Dynamic/RMD: initial wait");

  // verify
  auto* verify = app.add_subcommand("verify", "Check a matching for stability");
  std::string verify_instance, verify_matching;
  bool verify_oracle = false;
  verify->add_option("instance", verify_instance, "Instance file")->required();
  verify->add_option("matching", verify_matching, "Matching file")->required();
  verify->add_flag("--oracle", verify_oracle, "Cross-check by exhaustive enumeration (n <= 8)");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run a Monte-Carlo campaign");
  std::string bench_n = "10", bench_init = "random", bench_out, bench_format = "csv", bench_hist,
              bench_paired, bench_paired_out, bench_fill = "random";
  PolicyFlags bench_policy;
  int bench_trials = 100, bench_workers = 1;
  double bench_cap_mult = 5.0;
  std::uint64_t bench_seed = 0;
  bench_cmd->add_option("--policy", bench_policy.policy, "standard, rm, dynamic or rmd");
  bench_cmd->add_option("--init", bench_init, "random, quick or gs");
  bench_cmd->add_option("--n", bench_n, "n values: start:stop:step, a,b,c or a single value");
  bench_cmd->add_option("--trials", bench_trials, "Trials per n");
  bench_cmd->add_option("--seed", bench_seed, "Base seed");
  bench_cmd->add_option("--out", bench_out, "Report file (default stdout)");
  bench_cmd->add_option("--format", bench_format, "csv or json");
  bench_cmd->add_option("--workers", bench_workers, "Worker threads");
  bench_cmd->add_option("--cap-mult", bench_cap_mult, "Iteration cap as a multiple of n");
  bench_cmd->add_option("--hist", bench_hist, "Write the iteration histogram CSV here");
  bench_cmd->add_option("--paired-against", bench_paired, "Also run this policy on the same instances and compare");
  bench_cmd->add_option("--paired-out", bench_paired_out, "Paired comparison CSV (default stdout)");
  bench_cmd->add_option("--fill", bench_fill, "random or greedy");
  bench_cmd->add_option("--rm-start", bench_policy.rm_start, "RMD: first iteration with the RM filter (default n)");
  bench_cmd->add_option("--initial-wait", bench_policy.initial_wait, "Dynamic/RMD: initial wait");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*gen) {
      if (gen_n < 1) throw ValidationError("--n must be >= 1");
      Rng rng(gen_seed);
      PreferenceStructure prefs = random_preferences(gen_n, rng);
      if (gen_out.empty()) {
        write_instance(out, prefs);
      } else {
        auto f = open_output(gen_out);
        write_instance(f, prefs);
        if (!f.flush()) throw IoError("failed writing '" + gen_out + "'");
      }
      return kExitOk;
    }

    if (*solve) {
      PreferenceStructure prefs = read_instance_file(solve_instance);
      const SelectionPolicy policy = solve_policy.build(solve_policy.policy);
      const InitMethod init = init_or_throw(solve_init);
      RunOptions options;
      options.fill = fill_or_throw(solve_fill);
      if (!(solve_cap_mult > 0)) throw ValidationError("--cap-mult must be positive");
      options.cap = bench::cap_for(solve_cap_mult, prefs.size());
      options.record_trace = !solve_trace.empty();
      CostLedger ledger(prefs.size());
      Rng init_rng = bench::init_stream(solve_seed);
      Matching mu0 = initialize(init, prefs, init_rng, &ledger);
      Rng fill_rng = bench::fill_stream(solve_seed);
      RunOutcome outcome = pii::run(prefs, mu0, policy, fill_rng, options, std::move(ledger));
      if (!solve_trace.empty()) {
        auto f = open_output(solve_trace);
        write_trace(f, outcome);
        if (!f.flush()) throw IoError("failed writing '" + solve_trace + "'");
      }
      out << format_solve_summary(outcome);
      return outcome.status == RunStatus::kStable ? kExitOk : kExitNotConverged;
    }

    if (*verify) {
      PreferenceStructure prefs = read_instance_file(verify_instance);
      Matching mu = read_matching_file(verify_matching);
      if (mu.size() != prefs.size()) {
        throw ValidationError("matching has " + std::to_string(mu.size()) + " entries but the instance has n = " +
                              std::to_string(prefs.size()));
      }
      auto blocking = first_blocking_pair(prefs, mu);
      if (blocking) {
        out << "UNSTABLE\nblocking_pair " << blocking->row << ' ' << blocking->col << '\n';
      } else {
        out << "STABLE\n";
      }
      if (verify_oracle) {
        oracle::StableSet set = oracle::enumerate_stable(prefs);
        const bool in_set = set.contains(mu);
        out << "oracle " << (in_set ? "STABLE" : "UNSTABLE") << " (" << set.matchings.size()
            << " stable matchings)\n";
        if (in_set == blocking.has_value()) {
          err << "error: stability check and oracle disagree\n";
          return kExitError;
        }
      }
      return blocking ? kExitNotConverged : kExitOk;
    }

    if (*bench_cmd) {
      bench::CampaignConfig config;
      config.n_values = parse_n_values(bench_n);
      config.trials = bench_trials;
      config.policy = bench_policy.build(bench_policy.policy);
      config.init = init_or_throw(bench_init);
      config.cap_multiplier = bench_cap_mult;
      config.base_seed = bench_seed;
      config.workers = bench_workers;
      config.fill = fill_or_throw(bench_fill);
      bench::ReportFormat format;
      if (bench_format == "csv") format = bench::ReportFormat::kCsv;
      else if (bench_format == "json") format = bench::ReportFormat::kJson;
      else throw ValidationError("unknown format '" + bench_format + "' (expected csv or json)");

      std::vector<bench::TrialStats> stats;
      std::optional<bench::PairedResult> paired;
      if (!bench_paired.empty()) {
        bench::CampaignConfig other = config;
        other.policy = bench_policy.build(bench_paired);
        paired = bench::paired_comparison(other, config);
        stats = {paired->b, paired->a};
      } else {
        stats.push_back(bench::run_campaign(config));
      }

      if (bench_out.empty()) {
        bench::write_report(out, stats, format);
      } else {
        bench::write_report(bench_out, stats, format);
      }
      if (!bench_hist.empty()) {
        auto f = open_output(bench_hist);
        bench::write_histogram(f, stats);
        if (!f.flush()) throw IoError("failed writing '" + bench_hist + "'");
      }
      if (paired) {
        if (bench_paired_out.empty()) {
          bench::write_paired(out, *paired);
        } else {
          auto f = open_output(bench_paired_out);
          bench::write_paired(f, *paired);
          if (!f.flush()) throw IoError("failed writing '" + bench_paired_out + "'");
        }
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace pii::cli
