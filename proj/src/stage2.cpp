#include "netpolicy/stage2.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "netpolicy/errors.hpp"

namespace netpolicy {

namespace {

double tax_margin(double t) {
  const double margin = 1.0 - t;
  if (std::abs(margin) < 1e-12) {
    std::ostringstream out;
    out << "1 - t vanishes at t = " << t;
    throw ModelError(ErrorCode::kTaxDegenerate, out.str());
  }
  return margin;
}

bool active_process(RndMode mode) { return mode != RndMode::kProductOnly; }
bool active_product(RndMode mode) { return mode != RndMode::kProcessOnly; }

// Own-slope terms of the single-channel systems after substituting the R&D
// rule into the output equation, normalised by 2(1 - b_i).
struct SingleChannelTerms {
  double own1 = 0.0;
  double own2 = 0.0;
  double cross = 0.0;  // m^2 / (4 (1 - b1)(1 - b2))
  double delta = 0.0;
};

SingleChannelTerms process_terms(const ModelParams& p, const PolicyVector& pol) {
  const double one_minus_t = tax_margin(pol.t);
  SingleChannelTerms s;
  s.own1 = 1.0 - 1.0 / (2.0 * (1.0 - p.b1) * one_minus_t * (1.0 - pol.s1) * p.phi1);
  s.own2 = 1.0 - 1.0 / (2.0 * (1.0 - p.b2) * (1.0 - pol.s2) * p.phi2);
  s.cross = p.m * p.m / (4.0 * (1.0 - p.b1) * (1.0 - p.b2));
  s.delta = s.own1 * s.own2 - s.cross;
  return s;
}

SingleChannelTerms product_terms(const ModelParams& p, const PolicyVector& pol) {
  const double one_minus_t = tax_margin(pol.t);
  SingleChannelTerms s;
  s.own1 = 1.0 - one_minus_t / (2.0 * (1.0 - p.b1) * (1.0 - pol.sigma1) * p.theta1);
  s.own2 = 1.0 - 1.0 / (2.0 * (1.0 - p.b2) * (1.0 - pol.sigma2) * p.theta2);
  s.cross = p.m * p.m / (4.0 * (1.0 - p.b1) * (1.0 - p.b2));
  s.delta = s.own1 * s.own2 - s.cross;
  return s;
}

// Solves own1*q1 + m/(2(1-b1)) q2 = A1/(2(1-b1)), and symmetrically for q2.
std::pair<double, double> solve_single_channel(const ModelParams& p,
                                               const SingleChannelTerms& s,
                                               double one_minus_t) {
  const double margin1 = p.a - p.c1 / one_minus_t;
  const double margin2 = p.a - p.c2;
  const double scale = 4.0 * (1.0 - p.b1) * (1.0 - p.b2);
  const double q1 = (margin1 * s.own2 / (2.0 * (1.0 - p.b1)) - p.m * margin2 / scale) / s.delta;
  const double q2 = (margin2 * s.own1 / (2.0 * (1.0 - p.b2)) - p.m * margin1 / scale) / s.delta;
  return {q1, q2};
}

MarketState rnd_from_quantities(const ModelParams& p, const PolicyVector& pol,
                                RndMode mode, double q1, double q2) {
  MarketState st;
  st.q1 = q1;
  st.q2 = q2;
  if (active_process(mode)) {
    st.k1 = q1 / ((1.0 - pol.s1) * p.phi1);
    st.k2 = q2 / ((1.0 - pol.s2) * p.phi2);
  }
  if (active_product(mode)) {
    st.r1 = (1.0 - pol.t) * q1 / ((1.0 - pol.sigma1) * p.theta1);
    st.r2 = q2 / ((1.0 - pol.sigma2) * p.theta2);
  }
  return st;
}

Stage2Equilibrium finish(const ModelParams& p, const PolicyVector& pol,
                         RndMode mode, const MarketState& st) {
  Stage2Equilibrium eq;
  eq.mode = mode;
  eq.state = st;
  eq.welfare = welfare(p, pol, st);
  eq.feasibility = check_feasibility(p, pol, eq);
  return eq;
}

}  // namespace

GammaPair gamma_coefficients(const ModelParams& p, const PolicyVector& pol) {
  const double one_minus_t = tax_margin(pol.t);
  return {
      2.0 * (1.0 - p.b1) - one_minus_t / ((1.0 - pol.sigma1) * p.theta1) -
          1.0 / (one_minus_t * (1.0 - pol.s1) * p.phi1),
      2.0 * (1.0 - p.b2) - 1.0 / ((1.0 - pol.sigma2) * p.theta2) -
          1.0 / ((1.0 - pol.s2) * p.phi2),
  };
}

Stage2Equilibrium solve_stage2_general(const ModelParams& p,
                                       const PolicyVector& pol) {
  const GammaPair g = gamma_coefficients(p, pol);
  const double one_minus_t = 1.0 - pol.t;
  const double margin1 = p.a - p.c1 / one_minus_t;
  const double margin2 = p.a - p.c2;
  const double product = g.gamma1 * g.gamma2;
  const double delta = 1.0 - p.m * p.m / product;
  const double q1 = (margin1 / g.gamma1 - p.m * margin2 / product) / delta;
  const double q2 = (margin2 / g.gamma2 - p.m * margin1 / product) / delta;
  return finish(p, pol, RndMode::kBoth,
                rnd_from_quantities(p, pol, RndMode::kBoth, q1, q2));
}

Stage2Equilibrium solve_stage2_process(const ModelParams& p,
                                       const PolicyVector& pol) {
  const SingleChannelTerms s = process_terms(p, pol);
  const auto [q1, q2] = solve_single_channel(p, s, 1.0 - pol.t);
  return finish(p, pol, RndMode::kProcessOnly,
                rnd_from_quantities(p, pol, RndMode::kProcessOnly, q1, q2));
}

Stage2Equilibrium solve_stage2_product(const ModelParams& p,
                                       const PolicyVector& pol) {
  const SingleChannelTerms s = product_terms(p, pol);
  const auto [q1, q2] = solve_single_channel(p, s, 1.0 - pol.t);
  return finish(p, pol, RndMode::kProductOnly,
                rnd_from_quantities(p, pol, RndMode::kProductOnly, q1, q2));
}

Stage2Equilibrium solve_stage2(const ModelParams& p, const PolicyVector& pol) {
  switch (pol.mode) {
    case RndMode::kProcessOnly: return solve_stage2_process(p, pol);
    case RndMode::kProductOnly: return solve_stage2_product(p, pol);
    case RndMode::kBoth: return solve_stage2_general(p, pol);
  }
  return solve_stage2_general(p, pol);
}

Stage2Equilibrium solve_stage2_fixed_point(const ModelParams& p,
                                           const PolicyVector& pol,
                                           const FixedPointOptions& options) {
  const double one_minus_t = tax_margin(pol.t);
  const RndMode mode = pol.mode;
  double q1 = options.start_q1;
  double q2 = options.start_q2;
  double prev_change = HUGE_VAL;
  for (int it = 0; it < options.max_iterations; ++it) {
    const MarketState st = rnd_from_quantities(p, pol, mode, q1, q2);
    const double react1 = (p.a + st.r1 - p.m * q2 - (p.c1 - st.k1) / one_minus_t) /
                          (2.0 * (1.0 - p.b1));
    const double react2 = (p.a + st.r2 - p.m * q1 - (p.c2 - st.k2)) /
                          (2.0 * (1.0 - p.b2));
    const double next1 = (1.0 - options.damping) * q1 + options.damping * react1;
    const double next2 = (1.0 - options.damping) * q2 + options.damping * react2;
    if (!std::isfinite(next1) || !std::isfinite(next2) ||
        std::abs(next1) > 1e8 || std::abs(next2) > 1e8) {
      throw ModelError(ErrorCode::kNoConvergence,
                       "reaction iteration diverged");
    }
    const double change = std::max(std::abs(next1 - q1), std::abs(next2 - q2));
    q1 = next1;
    q2 = next2;
    // The step size alone understates the distance to the fixed point when
    // the map contracts slowly; use the a-posteriori bound rho/(1-rho) step.
    const double rho = change / prev_change;
    prev_change = change;
    const double bound = rho < 1.0 ? change * rho / (1.0 - rho) : HUGE_VAL;
    if (change < options.tolerance &&
        (bound < options.tolerance || change < 1e-3 * options.tolerance)) {
      return finish(p, pol, mode, rnd_from_quantities(p, pol, mode, q1, q2));
    }
  }
  throw ModelError(ErrorCode::kNoConvergence,
                   "reaction iteration did not settle within " +
                       std::to_string(options.max_iterations) + " iterations");
}

FeasibilityReport check_feasibility(const ModelParams& p,
                                    const PolicyVector& pol,
                                    const Stage2Equilibrium& eq) {
  FeasibilityReport r;
  const RndMode mode = eq.mode;
  const double one_minus_t = 1.0 - pol.t;
  switch (mode) {
    case RndMode::kProcessOnly: {
      const SingleChannelTerms s = process_terms(p, pol);
      r.soc1 = s.own1;
      r.soc2 = s.own2;
      r.delta = s.delta;
      break;
    }
    case RndMode::kProductOnly: {
      const SingleChannelTerms s = product_terms(p, pol);
      r.soc1 = s.own1;
      r.soc2 = s.own2;
      r.delta = s.delta;
      break;
    }
    case RndMode::kBoth: {
      const GammaPair g = gamma_coefficients(p, pol);
      r.soc1 = g.gamma1 / (2.0 * (1.0 - p.b1));
      r.soc2 = g.gamma2 / (2.0 * (1.0 - p.b2));
      r.delta = 1.0 - p.m * p.m / (g.gamma1 * g.gamma2);
      break;
    }
  }

  // Concavity of each firm's problem also needs positive own curvature in
  // every choice variable.
  const bool curv1 = one_minus_t > 0.0 && p.b1 < 1.0 &&
                     (!active_process(mode) || (1.0 - pol.s1) * p.phi1 > 0.0) &&
                     (!active_product(mode) || (1.0 - pol.sigma1) * p.theta1 > 0.0);
  const bool curv2 = p.b2 < 1.0 &&
                     (!active_process(mode) || (1.0 - pol.s2) * p.phi2 > 0.0) &&
                     (!active_product(mode) || (1.0 - pol.sigma2) * p.theta2 > 0.0);
  r.soc1_ok = curv1 && r.soc1 > 0.0;
  r.soc2_ok = curv2 && r.soc2 > 0.0;
  r.delta_ok = r.delta > 0.0;

  const MarketState& st = eq.state;
  const Prices prices = inverse_demand(p, st);
  r.positive_quantities = st.q1 > 0.0 && st.q2 > 0.0;
  r.positive_prices = prices.p1 > 0.0 && prices.p2 > 0.0;

  auto rnd_ok = [&](double k, double rq) {
    const bool k_ok = active_process(mode) ? k > 0.0 : k == 0.0;
    const bool r_ok = active_product(mode) ? rq > 0.0 : rq == 0.0;
    return k_ok && r_ok;
  };
  const bool rnd1 = rnd_ok(st.k1, st.r1);
  const bool rnd2 = rnd_ok(st.k2, st.r2);
  r.positive_rnd = rnd1 && rnd2;
  const bool cost1 = p.c1 - st.k1 > 0.0;
  const bool cost2 = p.c2 - st.k2 > 0.0;
  r.cost_nonneg = cost1 && cost2;

  const std::pair<bool, const char*> checks[] = {
      {r.soc1_ok, "soc1"},        {r.soc2_ok, "soc2"},
      {r.delta_ok, "delta"},      {st.q1 > 0.0, "q1"},
      {st.q2 > 0.0, "q2"},        {prices.p1 > 0.0, "p1"},
      {prices.p2 > 0.0, "p2"},    {rnd1, "rnd1"},
      {rnd2, "rnd2"},             {cost1, "cost1"},
      {cost2, "cost2"},
  };
  for (const auto& [ok, name] : checks) {
    if (!ok) {
      r.violated = name;
      break;
    }
  }
  r.interior = r.violated.empty();
  return r;
}

double foc_residual(const ModelParams& p, const PolicyVector& pol,
                    const MarketState& st, RndMode mode) {
  const double one_minus_t = 1.0 - pol.t;
  double worst = 0.0;
  auto track = [&](double v) { worst = std::max(worst, std::abs(v)); };
  track(one_minus_t * (p.a + st.r1 - 2.0 * (1.0 - p.b1) * st.q1 - p.m * st.q2) -
        (p.c1 - st.k1));
  track(p.a + st.r2 - 2.0 * (1.0 - p.b2) * st.q2 - p.m * st.q1 - (p.c2 - st.k2));
  if (active_process(mode)) {
    track(st.q1 - (1.0 - pol.s1) * p.phi1 * st.k1);
    track(st.q2 - (1.0 - pol.s2) * p.phi2 * st.k2);
  } else {
    track(st.k1);
    track(st.k2);
  }
  if (active_product(mode)) {
    track(one_minus_t * st.q1 - (1.0 - pol.sigma1) * p.theta1 * st.r1);
    track(st.q2 - (1.0 - pol.sigma2) * p.theta2 * st.r2);
  } else {
    track(st.r1);
    track(st.r2);
  }
  return worst;
}

void require_interior(const Stage2Equilibrium& eq) {
  if (!eq.feasibility.interior) {
    throw ModelError(ErrorCode::kNonInterior,
                     "stage-2 equilibrium is not interior (" +
                         eq.feasibility.violated + ")");
  }
}

}  // namespace netpolicy
