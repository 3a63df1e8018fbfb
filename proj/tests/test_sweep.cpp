#include "doctest.h"

#include <cmath>
#include <functional>

#include "netpolicy/errors.hpp"
#include "netpolicy/sweep.hpp"

using namespace netpolicy;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ModelError& e) {
    return e.code();
  }
  FAIL("expected a ModelError");
  return ErrorCode::kValidationError;
}

const ModelParams kBaseline = ModelParams::baseline(0.0, 0.05);

}  // namespace

TEST_CASE("b grid") {
  const std::vector<double> quarter = make_b_grid(0.0, 0.5, 0.25);
  REQUIRE(quarter.size() == 3);
  CHECK(quarter[0] == 0.0);
  CHECK(quarter[1] == 0.25);
  CHECK(quarter[2] == 0.5);

  const std::vector<double> fine = make_b_grid(0.0, 0.6, 0.01);
  CHECK(fine.size() == 61);
  CHECK(fine.back() == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(fine[30] == 30 * 0.01);

  CHECK(make_b_grid(0.2, 0.2, 0.1).size() == 1);
  CHECK(code_of([] { make_b_grid(0.0, 0.5, 0.0); }) == ErrorCode::kValidationError);
  CHECK(code_of([] { make_b_grid(0.5, 0.0, 0.1); }) == ErrorCode::kValidationError);
}

TEST_CASE("process sweep rows") {
  const std::vector<double> grid = make_b_grid(0.0, 0.6, 0.05);
  const std::vector<SweepRow> rows = sweep_b(kBaseline, grid, {0.05, 0.25}, RndMode::kProcessOnly);
  REQUIRE(rows.size() == 2 * grid.size());

  int feasible = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    CHECK(r.m == (i < grid.size() ? 0.05 : 0.25));
    CHECK(r.b == grid[i % grid.size()]);
    CHECK(r.mode == RndMode::kProcessOnly);
    CHECK(r.dW == r.dW1 + r.dW2);
    CHECK(r.sigma1_star == 0.0);
    CHECK(r.sigma2_star == 0.0);
    if (r.feasible) {
      ++feasible;
      CHECK(r.dW1 < 0.0);
      CHECK(r.dW2 > 0.0);
      CHECK(r.binding_constraint.empty());
      CHECK(r.epsilon_check <= 1e-5);
    } else {
      CHECK_FALSE(r.binding_constraint.empty());
    }
  }
  CHECK(feasible > 0);
  // The infeasible tail is kept, not dropped.
  CHECK_FALSE(rows[grid.size() - 1].feasible);
  CHECK(rows[grid.size() - 1].binding_constraint == "cost2");
}

TEST_CASE("warm and cold starts agree") {
  const std::vector<double> grid = make_b_grid(0.0, 0.4, 0.1);
  SweepOptions cold;
  cold.warm_start = false;
  for (const RndMode mode : {RndMode::kProcessOnly, RndMode::kProductOnly}) {
    const std::vector<SweepRow> warm_rows = sweep_b(kBaseline, grid, {0.25}, mode);
    const std::vector<SweepRow> cold_rows = sweep_b(kBaseline, grid, {0.25}, mode, cold);
    REQUIRE(warm_rows.size() == cold_rows.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(warm_rows[i].feasible == cold_rows[i].feasible);
      CHECK(std::abs(warm_rows[i].t_star - cold_rows[i].t_star) < 1e-6);
      CHECK(std::abs(warm_rows[i].home_subsidy_star() - cold_rows[i].home_subsidy_star()) <
            1e-6);
      CHECK(std::abs(warm_rows[i].dW - cold_rows[i].dW) < 1e-9);
    }
  }
}

TEST_CASE("row accessors") {
  const std::vector<SweepRow> rows =
      sweep_b(kBaseline, {0.2}, {0.05}, RndMode::kProductOnly);
  const SweepRow& r = rows.front();
  CHECK(r.foreign_subsidy_star() == r.sigma1_star);
  CHECK(r.home_subsidy_star() == r.sigma2_star);
  const PolicyVector pol = r.policy();
  CHECK(pol.mode == RndMode::kProductOnly);
  CHECK(pol.t == r.t_star);
  CHECK(pol.sigma2 == r.sigma2_star);
  CHECK(row_value(r, "dW") == r.dW);
  CHECK(row_value(r, "t_star") == r.t_star);
  CHECK(row_value(r, "W1_lf") == r.W1_lf);
  CHECK(code_of([&] { row_value(r, "nope"); }) == ErrorCode::kValidationError);
}

TEST_CASE("admissible bound") {
  const AdmissibleBound proc = find_admissible_bound(kBaseline, 0.05, RndMode::kProcessOnly);
  CHECK(proc.b_bar >= 0.40);
  CHECK(proc.b_bar <= 0.52);
  CHECK(proc.b_fail > proc.b_bar);
  CHECK(proc.b_fail - proc.b_bar <= 1e-3 + 1e-12);
  CHECK(proc.binding_constraint == "cost2");

  const AdmissibleBound prod = find_admissible_bound(kBaseline, 0.05, RndMode::kProductOnly);
  CHECK(prod.b_bar >= 0.44);
  CHECK(prod.b_bar <= 0.56);

  ModelParams weak = kBaseline;
  weak.phi1 = weak.phi2 = 0.4;
  CHECK(code_of([&] { find_admissible_bound(weak, 0.05, RndMode::kProcessOnly); }) ==
        ErrorCode::kNeverFeasible);
}

TEST_CASE("crossings") {
  const std::vector<SweepRow> rows =
      sweep_b(kBaseline, make_b_grid(0.0, 0.6, 0.02), {0.05}, RndMode::kProcessOnly);

  const std::vector<CrossingReport> dw = detect_crossings(rows, "dW", kBaseline);
  REQUIRE(dw.size() == 1);
  CHECK(dw[0].direction == 1);
  CHECK(dw[0].column == "dW");
  CHECK(dw[0].b_lo < dw[0].b_cross);
  CHECK(dw[0].b_cross < dw[0].b_hi);
  CHECK(dw[0].b_hi - dw[0].b_lo == doctest::Approx(0.02));

  CHECK(detect_crossings(rows, "dW1", kBaseline).empty());
  CHECK(detect_crossings(rows, "dW2", kBaseline).empty());

  // Halving the grid step leaves the crossing count and location unchanged.
  const std::vector<SweepRow> finer =
      sweep_b(kBaseline, make_b_grid(0.0, 0.6, 0.01), {0.05}, RndMode::kProcessOnly);
  const std::vector<CrossingReport> dw_fine = detect_crossings(finer, "dW", kBaseline);
  REQUIRE(dw_fine.size() == 1);
  CHECK(std::abs(dw_fine[0].b_cross - dw[0].b_cross) < 2e-4);
}

TEST_CASE("product crossings at m = 0.05") {
  const std::vector<SweepRow> rows =
      sweep_b(kBaseline, make_b_grid(0.0, 0.6, 0.02), {0.05}, RndMode::kProductOnly);
  const std::vector<CrossingReport> tax = detect_crossings(rows, "t_star", kBaseline);
  const std::vector<CrossingReport> foreign = detect_crossings(rows, "dW1", kBaseline);
  REQUIRE(tax.size() == 1);
  REQUIRE(foreign.size() == 1);
  CHECK(tax[0].direction == -1);
  CHECK(foreign[0].direction == 1);
  CHECK(std::abs(tax[0].b_cross - foreign[0].b_cross) < 0.05);
}
