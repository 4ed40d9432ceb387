#include "pii/costmodel.hpp"

#include <algorithm>
#include <string>

#include "pii/error.hpp"

namespace pii {

std::string_view to_string(Primitive kind) {
  switch (kind) {
    case Primitive::kRowFindMin: return "row-find-min";
    case Primitive::kColFindMin: return "col-find-min";
    case Primitive::kRowBroadcast: return "row-broadcast";
    case Primitive::kColBroadcast: return "col-broadcast";
    case Primitive::kConstantOp: return "constant-op";
  }
  return "unknown";
}

int log_step_cost(int n) {
  if (n < 1) throw ValidationError("log_step_cost: n must be >= 1");
  int bits = 0;
  while ((std::int64_t{1} << bits) < n) ++bits;
  return std::max(1, bits);
}

CostLedger::CostLedger(int n) : n_(n), log_cost_(log_step_cost(n)) {}

void CostLedger::charge(int iteration, Primitive kind, int times) {
  if (times < 1) throw ValidationError("charge: times must be positive, got " + std::to_string(times));
  if (iteration < kInitPhase) throw ValidationError("charge: bad iteration " + std::to_string(iteration));
  charges_.push_back({iteration, kind, times});
  const std::int64_t cost = static_cast<std::int64_t>(times) * step_cost(kind);
  if (iteration == kInitPhase) {
    init_cost_ += cost;
    return;
  }
  if (per_iteration_.size() <= static_cast<std::size_t>(iteration)) {
    per_iteration_.resize(static_cast<std::size_t>(iteration) + 1, 0);
  }
  per_iteration_[static_cast<std::size_t>(iteration)] += cost;
  run_cost_ += cost;
}

std::int64_t CostLedger::iteration_cost(int iteration) const {
  if (iteration == kInitPhase) return init_cost_;
  if (iteration < 0 || static_cast<std::size_t>(iteration) >= per_iteration_.size()) return 0;
  return per_iteration_[static_cast<std::size_t>(iteration)];
}

std::int64_t CostLedger::max_iteration_cost() const {
  if (per_iteration_.empty()) return 0;
  return *std::max_element(per_iteration_.begin(), per_iteration_.end());
}

std::vector<Charge> CostLedger::charges_for(int iteration) const {
  std::vector<Charge> out;
  for (const Charge& c : charges_) {
    if (c.iteration == iteration) out.push_back(c);
  }
  return out;
}

}  // namespace pii
