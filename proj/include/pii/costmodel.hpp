#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace pii {

enum class Primitive { kRowFindMin, kColFindMin, kRowBroadcast, kColBroadcast, kConstantOp };

std::string_view to_string(Primitive kind);

// ceil(log2 n), but at least 1.
int log_step_cost(int n);

// Logarithmic primitives an engine iteration may charge.
inline constexpr int kPrimitiveBudget = 8;

// Charges made before the first iteration (initialization).
inline constexpr int kInitPhase = -1;

struct Charge {
  int iteration = 0;
  Primitive kind = Primitive::kConstantOp;
  int times = 1;
};

// Simulated step accounting for an n x n processor grid. Observational only.
class CostLedger {
 public:
  explicit CostLedger(int n);

  int n() const { return n_; }
  int step_cost(Primitive kind) const { return kind == Primitive::kConstantOp ? 1 : log_cost_; }

  // iteration >= 0, or kInitPhase. times >= 1.
  void charge(int iteration, Primitive kind, int times = 1);

  // Zero for iterations never charged.
  std::int64_t iteration_cost(int iteration) const;
  std::int64_t init_cost() const { return init_cost_; }
  // All iterations, excluding initialization.
  std::int64_t run_cost() const { return run_cost_; }
  std::int64_t total() const { return init_cost_ + run_cost_; }
  std::int64_t max_iteration_cost() const;

  std::span<const Charge> charges() const { return charges_; }
  // Charges belonging to one iteration, in the order made.
  std::vector<Charge> charges_for(int iteration) const;

 private:
  int n_;
  int log_cost_;
  std::vector<Charge> charges_;
  std::vector<std::int64_t> per_iteration_;
  std::int64_t init_cost_ = 0;
  std::int64_t run_cost_ = 0;
};

}  // namespace pii
