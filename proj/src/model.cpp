#include "netpolicy/model.hpp"

#include <cmath>
#include <sstream>

#include "netpolicy/errors.hpp"

namespace netpolicy {

std::string_view to_string(RndMode mode) {
  switch (mode) {
    case RndMode::kProcessOnly: return "process";
    case RndMode::kProductOnly: return "product";
    case RndMode::kBoth: return "both";
  }
  return "unknown";
}

RndMode parse_mode(std::string_view text) {
  if (text == "process" || text == "PROCESS_ONLY") return RndMode::kProcessOnly;
  if (text == "product" || text == "PRODUCT_ONLY") return RndMode::kProductOnly;
  if (text == "both" || text == "BOTH") return RndMode::kBoth;
  throw ModelError(ErrorCode::kValidationError,
                   "unknown R&D mode '" + std::string(text) + "'");
}

ModelParams ModelParams::baseline(double b, double m) {
  ModelParams p;
  p.b1 = b;
  p.b2 = b;
  p.m = m;
  return p;
}

ModelParams ModelParams::with_b(double b) const {
  ModelParams p = *this;
  p.b1 = b;
  p.b2 = b;
  return p;
}

ModelParams ModelParams::with_m(double m_value) const {
  ModelParams p = *this;
  p.m = m_value;
  return p;
}

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ModelError(ErrorCode::kValidationError, message);
}

std::string describe(const char* name, double value) {
  std::ostringstream out;
  out << name << " = " << value;
  return out.str();
}

}  // namespace

void ModelParams::validate() const {
  require(std::isfinite(a) && a > 0.0, describe("a must be > 0, got a", a));
  require(c1 >= 0.0 && c1 < a, describe("c1 must lie in [0, a), got c1", c1));
  require(c2 >= 0.0 && c2 < a, describe("c2 must lie in [0, a), got c2", c2));
  require(b1 >= 0.0 && b1 < 1.0, describe("b1 must lie in [0, 1), got b1", b1));
  require(b2 >= 0.0 && b2 < 1.0, describe("b2 must lie in [0, 1), got b2", b2));
  require(m >= -1.0 && m <= 1.0, describe("m must lie in [-1, 1], got m", m));
  require(phi1 > 0.0 && phi2 > 0.0, "phi1, phi2 must be > 0");
  require(theta1 > 0.0 && theta2 > 0.0, "theta1, theta2 must be > 0");
}

PolicyVector PolicyVector::zero(RndMode mode) {
  PolicyVector p;
  p.mode = mode;
  return p;
}

PolicyVector PolicyVector::from_instruments(RndMode mode, double tax,
                                            double foreign_subsidy,
                                            double home_subsidy) {
  PolicyVector p = zero(mode);
  p.t = tax;
  return p.with_foreign_subsidy(foreign_subsidy).with_home_subsidy(home_subsidy);
}

double PolicyVector::foreign_subsidy() const {
  return mode == RndMode::kProductOnly ? sigma1 : s1;
}

double PolicyVector::home_subsidy() const {
  return mode == RndMode::kProductOnly ? sigma2 : s2;
}

PolicyVector PolicyVector::with_foreign_subsidy(double value) const {
  PolicyVector p = *this;
  (mode == RndMode::kProductOnly ? p.sigma1 : p.s1) = value;
  return p;
}

PolicyVector PolicyVector::with_home_subsidy(double value) const {
  PolicyVector p = *this;
  (mode == RndMode::kProductOnly ? p.sigma2 : p.s2) = value;
  return p;
}

PolicyVector PolicyVector::with_tax(double value) const {
  PolicyVector p = *this;
  p.t = value;
  return p;
}

void PolicyVector::validate() const {
  require(t > -1.0 && t < 1.0, describe("t must lie in (-1, 1), got t", t));
  require(s1 < 1.0 && s2 < 1.0 && sigma1 < 1.0 && sigma2 < 1.0,
          "subsidy rates must be < 1");
  if (mode == RndMode::kProcessOnly) {
    require(sigma1 == 0.0 && sigma2 == 0.0,
            "process-only policy must have sigma1 = sigma2 = 0");
  }
  if (mode == RndMode::kProductOnly) {
    require(s1 == 0.0 && s2 == 0.0,
            "product-only policy must have s1 = s2 = 0");
  }
}

Prices inverse_demand(const ModelParams& params, const MarketState& state) {
  return {
      params.a + state.r1 - (1.0 - params.b1) * state.q1 - params.m * state.q2,
      params.a + state.r2 - (1.0 - params.b2) * state.q2 - params.m * state.q1,
  };
}

Profits profits(const ModelParams& params, const PolicyVector& policy,
                const MarketState& state) {
  const Prices p = inverse_demand(params, state);
  const double process1 = params.phi1 * state.k1 * state.k1 / 2.0;
  const double process2 = params.phi2 * state.k2 * state.k2 / 2.0;
  const double product1 = params.theta1 * state.r1 * state.r1 / 2.0;
  const double product2 = params.theta2 * state.r2 * state.r2 / 2.0;
  return {
      (1.0 - policy.t) * p.p1 * state.q1 - (params.c1 - state.k1) * state.q1 -
          (1.0 - policy.s1) * process1 - (1.0 - policy.sigma1) * product1,
      p.p2 * state.q2 - (params.c2 - state.k2) * state.q2 -
          (1.0 - policy.s2) * process2 - (1.0 - policy.sigma2) * product2,
  };
}

double consumer_surplus(const ModelParams& params, const MarketState& state) {
  return 0.5 * (state.q1 * state.q1 + state.q2 * state.q2 +
                2.0 * params.m * state.q1 * state.q2);
}

double consumer_surplus_long_form(const ModelParams& params,
                                  const MarketState& state) {
  const double choke1 = params.a + params.b1 * state.q1 + state.r1;
  const double choke2 = params.a + params.b2 * state.q2 + state.r2;
  const double gross = choke1 * state.q1 + choke2 * state.q2 -
                       0.5 * (state.q1 * state.q1 + state.q2 * state.q2 +
                              2.0 * params.m * state.q1 * state.q2);
  const Prices p = inverse_demand(params, state);
  return gross - p.p1 * state.q1 - p.p2 * state.q2;
}

WelfareBreakdown welfare(const ModelParams& params, const PolicyVector& policy,
                         const MarketState& state) {
  WelfareBreakdown w;
  const Prices p = inverse_demand(params, state);
  const Profits pi = profits(params, policy, state);
  w.p1 = p.p1;
  w.p2 = p.p2;
  w.pi1 = pi.pi1;
  w.pi2 = pi.pi2;
  w.cs = consumer_surplus(params, state);
  w.taxrev = policy.t * p.p1 * state.q1;
  w.subsidy_cost_foreign =
      policy.s1 * params.phi1 * state.k1 * state.k1 / 2.0 +
      policy.sigma1 * params.theta1 * state.r1 * state.r1 / 2.0;
  w.subsidy_cost_home =
      policy.s2 * params.phi2 * state.k2 * state.k2 / 2.0 +
      policy.sigma2 * params.theta2 * state.r2 * state.r2 / 2.0;
  w.W1 = w.pi1 - w.subsidy_cost_foreign;
  w.W2 = w.cs + w.pi2 + w.taxrev - w.subsidy_cost_home;
  return w;
}

}  // namespace netpolicy
