#include <doctest.h>

#include "pii/bench.hpp"
#include "pii/costmodel.hpp"
#include "pii/error.hpp"

using namespace pii;

TEST_CASE("log_step_cost") {
  CHECK(log_step_cost(1) == 1);
  CHECK(log_step_cost(2) == 1);
  CHECK(log_step_cost(3) == 2);
  CHECK(log_step_cost(8) == 3);
  CHECK(log_step_cost(9) == 4);
  CHECK(log_step_cost(64) == 6);
  CHECK(log_step_cost(100) == 7);
  CHECK_THROWS_AS(log_step_cost(0), ValidationError);
}

TEST_CASE("charge adds times x step cost") {
  CostLedger l8(8);
  l8.charge(0, Primitive::kRowFindMin);
  CHECK(l8.iteration_cost(0) == 3);
  l8.charge(0, Primitive::kConstantOp);
  CHECK(l8.iteration_cost(0) == 4);
  l8.charge(1, Primitive::kColBroadcast, 2);
  CHECK(l8.iteration_cost(1) == 6);
  CHECK(l8.run_cost() == 10);

  CostLedger l1(1);
  l1.charge(0, Primitive::kColBroadcast);
  CHECK(l1.iteration_cost(0) == 1);

  CHECK_THROWS_AS(l8.charge(0, Primitive::kConstantOp, 0), ValidationError);
  CHECK_THROWS_AS(l8.charge(-2, Primitive::kConstantOp), ValidationError);
}

TEST_CASE("iteration_cost") {
  CostLedger l(16);
  l.charge(4, Primitive::kRowFindMin);
  l.charge(4, Primitive::kColFindMin);
  l.charge(4, Primitive::kRowBroadcast);
  CHECK(l.iteration_cost(4) == 12);
  CHECK(l.iteration_cost(3) == 0);
  CHECK(l.iteration_cost(99) == 0);
  CHECK(l.charges_for(4).size() == 3);
  CHECK(l.max_iteration_cost() == 12);
}

TEST_CASE("init charges are kept apart") {
  CostLedger l(4);
  l.charge(kInitPhase, Primitive::kColFindMin, 3);
  l.charge(0, Primitive::kConstantOp);
  CHECK(l.init_cost() == 6);
  CHECK(l.run_cost() == 1);
  CHECK(l.total() == 7);
  CHECK(l.iteration_cost(0) == 1);
  CHECK(l.max_iteration_cost() == 1);
}

TEST_CASE("engine iterations at n=64 stay within the primitive budget") {
  for (auto kind : {PolicyKind::kStandard, PolicyKind::kRightMinimum, PolicyKind::kDynamic, PolicyKind::kRmd}) {
    bench::CampaignConfig cfg;
    cfg.n_values = {64};
    cfg.trials = 30;
    cfg.policy.kind = kind;
    cfg.base_seed = 64;
    auto stats = bench::run_campaign(cfg);
    CHECK(stats.cells[0].max_iteration_cost <= kPrimitiveBudget * 6);
  }
}
