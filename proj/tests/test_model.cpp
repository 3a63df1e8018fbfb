#include "doctest.h"

#include <cmath>

#include "netpolicy/errors.hpp"
#include "netpolicy/model.hpp"

using namespace netpolicy;

namespace {

MarketState quantities(double q1, double q2) {
  MarketState s;
  s.q1 = q1;
  s.q2 = q2;
  return s;
}

// Laissez-faire process point at b = m = 0 with baseline values.
MarketState lf_process_point() {
  MarketState s = quantities(0.1875, 0.1875);
  s.k1 = s.k2 = 0.075;
  return s;
}

}  // namespace

TEST_CASE("inverse demand") {
  ModelParams p = ModelParams::baseline(0.0, 0.25);
  SUBCASE("choke price at zero output") {
    const Prices pr = inverse_demand(p, MarketState{});
    CHECK(pr.p1 == 1.0);
    CHECK(pr.p2 == 1.0);
  }
  SUBCASE("own network term flattens the slope") {
    p.b1 = 0.3;
    CHECK(inverse_demand(p, quantities(0.2, 0.1)).p1 == doctest::Approx(0.835).epsilon(1e-15));
  }
  SUBCASE("homogeneous goods") {
    p.m = 1.0;
    const Prices pr = inverse_demand(p, quantities(0.15, 0.15));
    CHECK(pr.p1 == doctest::Approx(0.7));
    CHECK(pr.p2 == pr.p1);
  }
}

TEST_CASE("profits") {
  const ModelParams p = ModelParams::baseline(0.0, 0.0);
  PolicyVector pol = PolicyVector::zero(RndMode::kProcessOnly);
  CHECK(profits(p, pol, MarketState{}).pi1 == 0.0);
  CHECK(profits(p, pol, MarketState{}).pi2 == 0.0);

  const MarketState s = lf_process_point();
  CHECK(profits(p, pol, s).pi1 == doctest::Approx(0.028125).epsilon(1e-14));

  pol.t = 0.5;
  const double expected = 0.5 * 0.8125 * 0.1875 - 0.625 * 0.1875 - 0.00703125;
  CHECK(profits(p, pol, s).pi1 == doctest::Approx(expected).epsilon(1e-14));
  CHECK(profits(p, pol, s).pi1 < 0.0);
}

TEST_CASE("consumer surplus short and long forms") {
  ModelParams p = ModelParams::baseline(0.0, 0.0);
  CHECK(consumer_surplus(p, MarketState{}) == 0.0);
  CHECK(consumer_surplus(p, quantities(0.1875, 0.1875)) == doctest::Approx(0.03515625));
  CHECK(consumer_surplus_long_form(p, quantities(0.1875, 0.1875)) ==
        doctest::Approx(0.03515625).epsilon(1e-14));

  p.m = -0.25;
  CHECK(consumer_surplus(p, quantities(0.2, 0.2)) == doctest::Approx(0.03).epsilon(1e-14));

  p = ModelParams::baseline(0.35, 0.4);
  MarketState s = quantities(0.31, 0.12);
  s.r1 = 0.05;
  s.r2 = 0.2;
  CHECK(std::abs(consumer_surplus(p, s) - consumer_surplus_long_form(p, s)) < 1e-15);
}

TEST_CASE("welfare accounting") {
  const ModelParams p = ModelParams::baseline(0.0, 0.0);
  PolicyVector pol = PolicyVector::zero(RndMode::kProcessOnly);

  const WelfareBreakdown zero = welfare(p, pol, MarketState{});
  CHECK(zero.W1 == 0.0);
  CHECK(zero.W2 == 0.0);

  const MarketState s = lf_process_point();
  const WelfareBreakdown lf = welfare(p, pol, s);
  CHECK(lf.W2 == doctest::Approx(0.06328125).epsilon(1e-14));
  CHECK(lf.W1 == lf.pi1);

  // A tax at frozen quantities moves revenue from firm 1 to the home budget.
  pol.t = 0.1;
  const WelfareBreakdown taxed = welfare(p, pol, s);
  CHECK(taxed.taxrev == doctest::Approx(0.1 * taxed.p1 * s.q1));
  CHECK(taxed.taxrev > 0.0);
  CHECK(lf.W1 - taxed.W1 == doctest::Approx(taxed.taxrev).epsilon(1e-13));
  CHECK(taxed.W2 - lf.W2 == doctest::Approx(taxed.taxrev).epsilon(1e-13));
  CHECK(taxed.W1 + taxed.W2 == doctest::Approx(lf.W1 + lf.W2).epsilon(1e-14));

  pol.s2 = 0.3;
  const WelfareBreakdown w = welfare(p, pol, s);
  CHECK(std::abs(w.W2 - w.cs - w.pi2 - w.taxrev + w.subsidy_cost_home) < 1e-15);
  CHECK(w.W1 == w.pi1 - w.subsidy_cost_foreign);
}

TEST_CASE("parameter and policy validation") {
  CHECK_NOTHROW(ModelParams::baseline(0.2, 0.05).validate());
  ModelParams p;
  p.m = 1.5;
  CHECK_THROWS_AS(p.validate(), ModelError);
  p = ModelParams{};
  p.c1 = 1.0;
  CHECK_THROWS_AS(p.validate(), ModelError);
  p = ModelParams{};
  p.b2 = 1.0;
  CHECK_THROWS_AS(p.validate(), ModelError);

  PolicyVector pol = PolicyVector::zero(RndMode::kProcessOnly);
  pol.sigma1 = 0.1;
  CHECK_THROWS_AS(pol.validate(), ModelError);
  pol = PolicyVector::zero(RndMode::kProductOnly);
  pol.t = -1.0;
  CHECK_THROWS_AS(pol.validate(), ModelError);
  pol.t = -0.5;
  CHECK_NOTHROW(pol.validate());
}

TEST_CASE("instrument placement follows the mode") {
  const PolicyVector proc = PolicyVector::from_instruments(RndMode::kProcessOnly, 0.1, 0.2, 0.3);
  CHECK(proc.s1 == 0.2);
  CHECK(proc.s2 == 0.3);
  CHECK(proc.sigma1 == 0.0);
  const PolicyVector prod = PolicyVector::from_instruments(RndMode::kProductOnly, 0.1, 0.2, 0.3);
  CHECK(prod.sigma1 == 0.2);
  CHECK(prod.sigma2 == 0.3);
  CHECK(prod.s2 == 0.0);
  CHECK(prod.home_subsidy() == 0.3);
  CHECK(prod.with_foreign_subsidy(0.05).foreign_subsidy() == 0.05);
  CHECK(parse_mode("product") == RndMode::kProductOnly);
  CHECK(parse_mode("PROCESS_ONLY") == RndMode::kProcessOnly);
  CHECK_THROWS_AS(parse_mode("neither"), ModelError);
}
