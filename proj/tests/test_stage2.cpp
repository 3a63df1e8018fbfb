#include "doctest.h"

#include <cmath>

#include "netpolicy/comparative_statics.hpp"
#include "netpolicy/errors.hpp"
#include "netpolicy/stage2.hpp"

using namespace netpolicy;

namespace {

PolicyVector zero_process() { return PolicyVector::zero(RndMode::kProcessOnly); }
PolicyVector zero_product() { return PolicyVector::zero(RndMode::kProductOnly); }

}  // namespace

TEST_CASE("gamma coefficients") {
  PolicyVector pol = PolicyVector::zero(RndMode::kBoth);
  ModelParams p = ModelParams::baseline(0.0, 0.0);
  const GammaPair g = gamma_coefficients(p, pol);
  CHECK(g.gamma1 == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(g.gamma2 == doctest::Approx(1.2).epsilon(1e-15));

  p.b2 = 0.5;
  CHECK(gamma_coefficients(p, pol).gamma2 == doctest::Approx(0.2).epsilon(1e-14));

  pol.t = 1.0 - 1e-9;
  CHECK(gamma_coefficients(p, pol).gamma1 < -1e8);
  pol.t = 1.0;
  CHECK_THROWS_AS(gamma_coefficients(p, pol), ModelError);
  try {
    gamma_coefficients(p, pol);
  } catch (const ModelError& e) {
    CHECK(e.code() == ErrorCode::kTaxDegenerate);
  }
}

TEST_CASE("general closed form") {
  const ModelParams p = ModelParams::baseline(0.0, 0.0);
  const Stage2Equilibrium eq = solve_stage2_general(p, PolicyVector::zero(RndMode::kBoth));
  CHECK(eq.state.q1 == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(eq.state.q2 == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(eq.state.k1 == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(eq.state.r2 == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(eq.feasibility.interior);

  SUBCASE("collapses to the single-channel forms as one channel gets expensive") {
    for (const double m : {0.05, 0.25}) {
      ModelParams q = ModelParams::baseline(0.2, m);
      PolicyVector both = PolicyVector::zero(RndMode::kBoth);
      both.t = 0.1;
      both.s1 = both.sigma1 = 0.05;
      both.s2 = both.sigma2 = 0.2;

      q.theta1 = q.theta2 = 1e12;
      PolicyVector proc = PolicyVector::from_instruments(RndMode::kProcessOnly, 0.1, 0.05, 0.2);
      const Stage2Equilibrium g1 = solve_stage2_general(q, both);
      const Stage2Equilibrium s1 = solve_stage2_process(q, proc);
      CHECK(std::abs(g1.state.q1 - s1.state.q1) < 1e-6);
      CHECK(std::abs(g1.state.q2 - s1.state.q2) < 1e-6);
      CHECK(std::abs(g1.state.k1 - s1.state.k1) < 1e-6);

      q = ModelParams::baseline(0.2, m);
      q.phi1 = q.phi2 = 1e12;
      PolicyVector prod = PolicyVector::from_instruments(RndMode::kProductOnly, 0.1, 0.05, 0.2);
      const Stage2Equilibrium g2 = solve_stage2_general(q, both);
      const Stage2Equilibrium s2 = solve_stage2_product(q, prod);
      CHECK(std::abs(g2.state.q1 - s2.state.q1) < 1e-6);
      CHECK(std::abs(g2.state.r2 - s2.state.r2) < 1e-6);
    }
  }
}

TEST_CASE("process closed form") {
  const Stage2Equilibrium eq = solve_stage2_process(ModelParams::baseline(0.0, 0.0), zero_process());
  CHECK(eq.state.q1 == doctest::Approx(0.1875).epsilon(1e-14));
  CHECK(eq.state.k2 == doctest::Approx(0.075).epsilon(1e-14));
  CHECK(eq.welfare.p1 == doctest::Approx(0.8125).epsilon(1e-14));
  CHECK(eq.state.r1 == 0.0);
  const ModelParams p0 = ModelParams::baseline(0.0, 0.0);
  CHECK(std::abs(p0.a - 2.0 * eq.state.q1 - (p0.c1 - eq.state.k1)) < 1e-15);

  const Stage2Equilibrium subst = solve_stage2_process(ModelParams::baseline(0.0, 0.25), zero_process());
  CHECK(subst.state.q1 == subst.state.q2);
  CHECK(subst.state.q1 < 0.1875);

  const Stage2Equilibrium low = solve_stage2_process(ModelParams::baseline(0.0, 0.05), zero_process());
  const Stage2Equilibrium high = solve_stage2_process(ModelParams::baseline(0.3, 0.05), zero_process());
  CHECK(high.state.q1 > low.state.q1);
  CHECK(high.state.q2 > low.state.q2);
}

TEST_CASE("product closed form") {
  const ModelParams p = ModelParams::baseline(0.0, 0.0);
  const Stage2Equilibrium eq = solve_stage2_product(p, zero_product());
  CHECK(eq.state.q1 == doctest::Approx(0.1875).epsilon(1e-14));
  CHECK(eq.state.r1 == doctest::Approx(0.075).epsilon(1e-14));
  CHECK(eq.state.k1 == 0.0);

  PolicyVector taxed = zero_product();
  taxed.t = 0.2;
  const Stage2Equilibrium t_eq = solve_stage2_product(p, taxed);
  CHECK(t_eq.state.r1 / t_eq.state.q1 == doctest::Approx(0.32).epsilon(1e-14));

  PolicyVector subsidised = zero_product();
  subsidised.sigma2 = 0.5;
  const Stage2Equilibrium s_eq = solve_stage2_product(p, subsidised);
  CHECK(s_eq.state.r2 / s_eq.state.q2 == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("fixed-point oracle") {
  const ModelParams p = ModelParams::baseline(0.0, 0.0);
  const Stage2Equilibrium fp = solve_stage2_fixed_point(p, zero_process());
  CHECK(std::abs(fp.state.q1 - 0.1875) < 1e-10);
  CHECK(std::abs(fp.state.q2 - 0.1875) < 1e-10);

  const ModelParams q = ModelParams::baseline(0.3, 0.25);
  for (const PolicyVector& pol :
       {zero_process(), zero_product(), PolicyVector::zero(RndMode::kBoth)}) {
    const Stage2Equilibrium closed = solve_stage2(q, pol);
    const Stage2Equilibrium iter = solve_stage2_fixed_point(q, pol);
    CHECK(std::abs(closed.state.q1 - iter.state.q1) < 1e-10);
    CHECK(std::abs(closed.state.q2 - iter.state.q2) < 1e-10);
    CHECK(std::abs(closed.state.k1 - iter.state.k1) < 1e-10);
    CHECK(std::abs(closed.state.r2 - iter.state.r2) < 1e-10);
  }

  // Past the stability region the reaction map no longer contracts. At
  // b = 0.8 the symmetric start rides the stable direction of a saddle, so
  // go a little further.
  ModelParams unstable = ModelParams::baseline(0.85, 0.05);
  CHECK(solve_stage2(unstable, zero_process()).feasibility.soc1 < 0.0);
  try {
    solve_stage2_fixed_point(unstable, zero_process());
    FAIL("expected NO_CONVERGENCE");
  } catch (const ModelError& e) {
    CHECK(e.code() == ErrorCode::kNoConvergence);
  }
}

TEST_CASE("feasibility report") {
  const Stage2Equilibrium ok = solve_stage2(ModelParams::baseline(0.2, 0.05), zero_process());
  CHECK(ok.feasibility.interior);
  CHECK(ok.feasibility.violated.empty());
  CHECK(ok.feasibility.delta > 0.0);

  // At zero policy b = 0.6 is still interior; the admissible bound concerns
  // the Nash outcome and is tested with the policy game.
  CHECK(solve_stage2(ModelParams::baseline(0.6, 0.05), zero_process()).feasibility.interior);

  PolicyVector pol = zero_process();
  pol.s1 = 0.999;
  const Stage2Equilibrium bad = solve_stage2(ModelParams::baseline(0.0, 0.05), pol);
  CHECK_FALSE(bad.feasibility.soc1_ok);
  CHECK_FALSE(bad.feasibility.interior);
  CHECK(bad.feasibility.violated == "soc1");

  // A heavy home subsidy pushes k2 past c2.
  pol = zero_process();
  pol.s2 = 0.5;
  const Stage2Equilibrium over = solve_stage2(ModelParams::baseline(0.5, 0.05), pol);
  CHECK_FALSE(over.feasibility.cost_nonneg);
  CHECK(over.feasibility.violated == "cost2");
  CHECK_THROWS_AS(require_interior(over), ModelError);
}

TEST_CASE("interior solutions satisfy the first-order conditions") {
  InteriorSampler sampler({}, 7);
  for (const RndMode mode : {RndMode::kProcessOnly, RndMode::kProductOnly, RndMode::kBoth}) {
    for (int i = 0; i < 100; ++i) {
      const InteriorSample s = sampler.next(mode);
      CHECK(foc_residual(s.params, s.policy, s.eq.state, mode) < 1e-10);
    }
  }
}

TEST_CASE("symmetric firms, symmetric outcome") {
  for (const RndMode mode : {RndMode::kProcessOnly, RndMode::kProductOnly, RndMode::kBoth}) {
    const Stage2Equilibrium eq =
        solve_stage2(ModelParams::baseline(0.25, 0.15), PolicyVector::zero(mode));
    CHECK(eq.state.q1 == eq.state.q2);
    CHECK(eq.state.k1 == eq.state.k2);
    CHECK(eq.state.r1 == eq.state.r2);
  }
}

TEST_CASE("foreign output falls with the tax") {
  InteriorSampler sampler({}, 11);
  for (const RndMode mode : {RndMode::kProcessOnly, RndMode::kProductOnly}) {
    for (int i = 0; i < 100; ++i) {
      const InteriorSample s = sampler.next(mode);
      const Stage2Equilibrium up = solve_stage2(s.params, s.policy.with_tax(s.policy.t + 1e-4));
      CHECK(up.state.q1 < s.eq.state.q1);
    }
  }
}
