#include "netpolicy/comparative_statics.hpp"

#include <cmath>
#include <limits>

#include "netpolicy/errors.hpp"

namespace netpolicy {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Row = Jacobian4::Row;
using Col = Jacobian4::Col;

void require_mode(const Stage2Equilibrium& eq, RndMode mode) {
  if (eq.mode != mode) {
    throw ModelError(ErrorCode::kValidationError,
                     "equilibrium mode " + std::string(to_string(eq.mode)) +
                         " does not match " + std::string(to_string(mode)));
  }
  require_interior(eq);
}

// Shared scalars of the single-channel systems.
struct Terms {
  double one_minus_t;
  double own1;   // 1 - 1/(2(1-b1)(1-t)(1-s1)phi1)   or product analogue
  double own2;
  double cross;  // m^2 / (4(1-b1)(1-b2))
  double delta;
};

Terms terms(const ModelParams& p, const PolicyVector& pol, RndMode mode) {
  Terms t{};
  t.one_minus_t = 1.0 - pol.t;
  if (mode == RndMode::kProcessOnly) {
    t.own1 = 1.0 - 1.0 / (2.0 * (1.0 - p.b1) * t.one_minus_t * (1.0 - pol.s1) * p.phi1);
    t.own2 = 1.0 - 1.0 / (2.0 * (1.0 - p.b2) * (1.0 - pol.s2) * p.phi2);
  } else {
    t.own1 = 1.0 - t.one_minus_t / (2.0 * (1.0 - p.b1) * (1.0 - pol.sigma1) * p.theta1);
    t.own2 = 1.0 - 1.0 / (2.0 * (1.0 - p.b2) * (1.0 - pol.sigma2) * p.theta2);
  }
  t.cross = p.m * p.m / (4.0 * (1.0 - p.b1) * (1.0 - p.b2));
  t.delta = t.own1 * t.own2 - t.cross;
  return t;
}

double sq(double x) { return x * x; }

}  // namespace

Jacobian4::Jacobian4() : Jacobian4(RndMode::kProcessOnly) {}

Jacobian4::Jacobian4(RndMode m) : mode(m) {
  for (auto& row : entries) row.fill(kNaN);
}

bool Jacobian4::has_column(Col c) const {
  for (int r = 0; r < kRows; ++r) {
    if (std::isnan(entries[r][c])) return false;
  }
  return true;
}

void Jacobian4::merge(const Jacobian4& other) {
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) {
      if (!std::isnan(other.entries[r][c])) entries[r][c] = other.entries[r][c];
    }
  }
}

std::string_view row_name(Jacobian4::Row row, RndMode mode) {
  const bool process = mode == RndMode::kProcessOnly;
  switch (row) {
    case Row::kQ1: return "q1";
    case Row::kX1: return process ? "k1" : "r1";
    case Row::kQ2: return "q2";
    case Row::kX2: return process ? "k2" : "r2";
  }
  return "?";
}

std::string_view col_name(Jacobian4::Col col, RndMode mode) {
  const bool process = mode == RndMode::kProcessOnly;
  switch (col) {
    case Col::kTax: return "t";
    case Col::kForeignSubsidy: return process ? "s1" : "sigma1";
    case Col::kHomeSubsidy: return process ? "s2" : "sigma2";
    case Col::kB1: return "b1";
    case Col::kB2: return "b2";
  }
  return "?";
}

Jacobian4 policy_jacobian_process(const ModelParams& p, const PolicyVector& pol,
                                  const Stage2Equilibrium& eq) {
  require_mode(eq, RndMode::kProcessOnly);
  const Terms T = terms(p, pol, RndMode::kProcessOnly);
  const MarketState& st = eq.state;
  const double net_cost1 = p.c1 - st.k1;
  const double rd1 = (1.0 - pol.s1) * p.phi1;
  const double rd2 = (1.0 - pol.s2) * p.phi2;
  const double slope1 = 2.0 * (1.0 - p.b1);
  const double slope2 = 2.0 * (1.0 - p.b2);
  const double both = 4.0 * (1.0 - p.b1) * (1.0 - p.b2);
  const double omt2 = sq(T.one_minus_t);

  Jacobian4 J(RndMode::kProcessOnly);
  // Home tax.
  J.at(Row::kQ1, Col::kTax) = -net_cost1 / (slope1 * omt2) * T.own2 / T.delta;
  J.at(Row::kX1, Col::kTax) = -net_cost1 / (slope1 * omt2 * rd1) * T.own2 / T.delta;
  J.at(Row::kQ2, Col::kTax) = p.m * net_cost1 / (both * omt2) / T.delta;
  J.at(Row::kX2, Col::kTax) = p.m * net_cost1 / (both * omt2 * rd2) / T.delta;
  // Foreign subsidy s1.
  const double ds1 = sq(1.0 - pol.s1) * p.phi1;
  J.at(Row::kQ1, Col::kForeignSubsidy) =
      st.q1 / (slope1 * T.one_minus_t * ds1) * T.own2 / T.delta;
  J.at(Row::kX1, Col::kForeignSubsidy) = st.q1 / ds1 * (T.own2 - T.cross) / T.delta;
  J.at(Row::kQ2, Col::kForeignSubsidy) =
      -p.m * st.q1 / (both * T.one_minus_t * ds1) / T.delta;
  J.at(Row::kX2, Col::kForeignSubsidy) =
      -p.m * st.q1 / (both * T.one_minus_t * ds1 * rd2) / T.delta;
  // Home subsidy s2.
  const double ds2 = sq(1.0 - pol.s2) * p.phi2;
  J.at(Row::kQ1, Col::kHomeSubsidy) = -p.m * st.q2 / (both * ds2) / T.delta;
  J.at(Row::kX1, Col::kHomeSubsidy) = J(Row::kQ1, Col::kHomeSubsidy) / rd1;
  J.at(Row::kQ2, Col::kHomeSubsidy) = st.q2 / (slope2 * ds2) * T.own1 / T.delta;
  J.at(Row::kX2, Col::kHomeSubsidy) = st.q2 / ds2 * (T.own1 - T.cross) / T.delta;
  return J;
}

Jacobian4 network_jacobian_process(const ModelParams& p, const PolicyVector& pol,
                                   const Stage2Equilibrium& eq) {
  require_mode(eq, RndMode::kProcessOnly);
  const Terms T = terms(p, pol, RndMode::kProcessOnly);
  const MarketState& st = eq.state;
  const double resid1 = p.a - (p.c1 - st.k1) / T.one_minus_t - p.m * st.q2;
  const double resid2 = p.a - (p.c2 - st.k2) - p.m * st.q1;
  const double rd1 = (1.0 - pol.s1) * p.phi1;
  const double rd2 = (1.0 - pol.s2) * p.phi2;
  const double ob1 = 1.0 - p.b1;
  const double ob2 = 1.0 - p.b2;

  Jacobian4 J(RndMode::kProcessOnly);
  J.at(Row::kQ1, Col::kB1) = resid1 / (2.0 * sq(ob1)) * T.own2 / T.delta;
  J.at(Row::kX1, Col::kB1) = resid1 / (2.0 * sq(ob1) * rd1) * T.own2 / T.delta;
  J.at(Row::kQ2, Col::kB1) = -p.m * resid1 / (4.0 * sq(ob1) * ob2) / T.delta;
  J.at(Row::kX2, Col::kB1) = -p.m * resid1 / (4.0 * sq(ob1) * ob2 * rd2) / T.delta;
  J.at(Row::kQ1, Col::kB2) = -p.m * resid2 / (4.0 * ob1 * sq(ob2)) / T.delta;
  J.at(Row::kX1, Col::kB2) = -p.m * resid2 / (4.0 * ob1 * sq(ob2) * rd1) / T.delta;
  J.at(Row::kQ2, Col::kB2) = resid2 / (2.0 * sq(ob2)) * T.own1 / T.delta;
  J.at(Row::kX2, Col::kB2) = resid2 / (2.0 * sq(ob2) * rd2) * T.own1 / T.delta;
  return J;
}

Jacobian4 policy_jacobian_product(const ModelParams& p, const PolicyVector& pol,
                                  const Stage2Equilibrium& eq) {
  require_mode(eq, RndMode::kProductOnly);
  const Terms T = terms(p, pol, RndMode::kProductOnly);
  const MarketState& st = eq.state;
  const double rd1 = (1.0 - pol.sigma1) * p.theta1;
  const double rd2 = (1.0 - pol.sigma2) * p.theta2;
  const double ob1 = 1.0 - p.b1;
  const double ob2 = 1.0 - p.b2;
  const double both = 4.0 * ob1 * ob2;
  const double omt2 = sq(T.one_minus_t);
  // Bracket shared by the tax effects: q1/((1-sigma1)theta1) + c1/(1-t)^2.
  const double tax_push = st.q1 / rd1 + p.c1 / omt2;

  Jacobian4 J(RndMode::kProductOnly);
  J.at(Row::kQ1, Col::kTax) = -tax_push / (2.0 * ob1) * T.own2 / T.delta;
  J.at(Row::kQ2, Col::kTax) =
      p.m / (2.0 * ob2) * (st.q1 / (2.0 * ob1 * rd1) + p.c1 / (2.0 * ob1 * omt2)) / T.delta;
  J.at(Row::kX1, Col::kTax) =
      -(st.q1 + T.one_minus_t / (2.0 * ob1) * tax_push * T.own2 / T.delta) / rd1;
  J.at(Row::kX2, Col::kTax) = J(Row::kQ2, Col::kTax) / rd2;

  const double ds1 = sq(1.0 - pol.sigma1) * p.theta1;
  J.at(Row::kQ1, Col::kForeignSubsidy) =
      T.one_minus_t * st.q1 / (2.0 * ob1 * ds1) * T.own2 / T.delta;
  J.at(Row::kQ2, Col::kForeignSubsidy) =
      -p.m * T.one_minus_t * st.q1 / (both * ds1) / T.delta;
  J.at(Row::kX1, Col::kForeignSubsidy) =
      T.one_minus_t * st.q1 / ds1 *
      (1.0 + T.one_minus_t / (2.0 * ob1 * rd1) * T.own2 / T.delta);
  J.at(Row::kX2, Col::kForeignSubsidy) = J(Row::kQ2, Col::kForeignSubsidy) / rd2;

  const double ds2 = sq(1.0 - pol.sigma2) * p.theta2;
  J.at(Row::kQ1, Col::kHomeSubsidy) = -st.q2 / ds2 * p.m / both / T.delta;
  J.at(Row::kQ2, Col::kHomeSubsidy) = st.q2 / (2.0 * ob2 * ds2) * T.own1 / T.delta;
  J.at(Row::kX1, Col::kHomeSubsidy) =
      T.one_minus_t / rd1 * J(Row::kQ1, Col::kHomeSubsidy);
  J.at(Row::kX2, Col::kHomeSubsidy) = st.q2 / ds2 * (T.own1 - T.cross) / T.delta;
  return J;
}

Jacobian4 network_jacobian_product(const ModelParams& p, const PolicyVector& pol,
                                   const Stage2Equilibrium& eq) {
  require_mode(eq, RndMode::kProductOnly);
  const Terms T = terms(p, pol, RndMode::kProductOnly);
  const MarketState& st = eq.state;
  const double resid1 = p.a + st.r1 - p.c1 / T.one_minus_t - p.m * st.q2;
  const double resid2 = p.a + st.r2 - p.c2 - p.m * st.q1;
  const double rd1 = (1.0 - pol.sigma1) * p.theta1;
  const double rd2 = (1.0 - pol.sigma2) * p.theta2;
  const double ob1 = 1.0 - p.b1;
  const double ob2 = 1.0 - p.b2;

  Jacobian4 J(RndMode::kProductOnly);
  J.at(Row::kQ1, Col::kB1) = resid1 / (2.0 * sq(ob1)) * T.own2 / T.delta;
  J.at(Row::kX1, Col::kB1) =
      T.one_minus_t / (2.0 * sq(ob1) * rd1) * resid1 * T.own2 / T.delta;
  J.at(Row::kQ2, Col::kB1) = -p.m * resid1 / (4.0 * sq(ob1) * ob2) / T.delta;
  J.at(Row::kX2, Col::kB1) = J(Row::kQ2, Col::kB1) / rd2;
  J.at(Row::kQ1, Col::kB2) = -p.m * resid2 / (4.0 * ob1 * sq(ob2)) / T.delta;
  J.at(Row::kX1, Col::kB2) = T.one_minus_t / rd1 * J(Row::kQ1, Col::kB2);
  J.at(Row::kQ2, Col::kB2) = resid2 / (2.0 * sq(ob2)) * T.own1 / T.delta;
  J.at(Row::kX2, Col::kB2) = resid2 / (2.0 * sq(ob2) * rd2) * T.own1 / T.delta;
  return J;
}

Jacobian4 analytic_jacobian(const ModelParams& p, const PolicyVector& pol,
                            const Stage2Equilibrium& eq) {
  Jacobian4 J(eq.mode);
  switch (eq.mode) {
    case RndMode::kProcessOnly:
      J.merge(policy_jacobian_process(p, pol, eq));
      J.merge(network_jacobian_process(p, pol, eq));
      break;
    case RndMode::kProductOnly:
      J.merge(policy_jacobian_product(p, pol, eq));
      J.merge(network_jacobian_product(p, pol, eq));
      break;
    case RndMode::kBoth:
      throw ModelError(ErrorCode::kValidationError,
                       "comparative statics cover single-channel modes only");
  }
  return J;
}

Jacobian4 chain_rule_jacobian(const ModelParams& p, const PolicyVector& pol,
                              const Stage2Equilibrium& eq) {
  Jacobian4 J = analytic_jacobian(p, pol, eq);
  const MarketState& st = eq.state;
  if (eq.mode == RndMode::kProcessOnly) {
    const double rd1 = (1.0 - pol.s1) * p.phi1;
    const double rd2 = (1.0 - pol.s2) * p.phi2;
    for (int c = 0; c < Jacobian4::kCols; ++c) {
      const auto col = static_cast<Col>(c);
      J.at(Row::kX1, col) = J(Row::kQ1, col) / rd1;
      J.at(Row::kX2, col) = J(Row::kQ2, col) / rd2;
    }
    J.at(Row::kX1, Col::kForeignSubsidy) += st.q1 / (sq(1.0 - pol.s1) * p.phi1);
    J.at(Row::kX2, Col::kHomeSubsidy) += st.q2 / (sq(1.0 - pol.s2) * p.phi2);
  } else {
    const double one_minus_t = 1.0 - pol.t;
    const double rd1 = (1.0 - pol.sigma1) * p.theta1;
    const double rd2 = (1.0 - pol.sigma2) * p.theta2;
    for (int c = 0; c < Jacobian4::kCols; ++c) {
      const auto col = static_cast<Col>(c);
      J.at(Row::kX1, col) = one_minus_t * J(Row::kQ1, col) / rd1;
      J.at(Row::kX2, col) = J(Row::kQ2, col) / rd2;
    }
    J.at(Row::kX1, Col::kTax) -= st.q1 / rd1;
    J.at(Row::kX1, Col::kForeignSubsidy) +=
        one_minus_t * st.q1 / (sq(1.0 - pol.sigma1) * p.theta1);
    J.at(Row::kX2, Col::kHomeSubsidy) += st.q2 / (sq(1.0 - pol.sigma2) * p.theta2);
  }
  return J;
}

Matrix4 equilibrium_system_matrix(const ModelParams& p, const PolicyVector& pol,
                                  RndMode mode) {
  const double one_minus_t = 1.0 - pol.t;
  const double ob1 = 1.0 - p.b1;
  const double ob2 = 1.0 - p.b2;
  Matrix4 M{};
  if (mode == RndMode::kProcessOnly) {
    M[0] = {1.0, -1.0 / (2.0 * ob1 * one_minus_t), p.m / (2.0 * ob1), 0.0};
    M[1] = {-1.0 / ((1.0 - pol.s1) * p.phi1), 1.0, 0.0, 0.0};
    M[2] = {p.m / (2.0 * ob2), 0.0, 1.0, -1.0 / (2.0 * ob2)};
    M[3] = {0.0, 0.0, -1.0 / ((1.0 - pol.s2) * p.phi2), 1.0};
  } else {
    M[0] = {1.0, -1.0 / (2.0 * ob1), p.m / (2.0 * ob1), 0.0};
    M[1] = {-one_minus_t / ((1.0 - pol.sigma1) * p.theta1), 1.0, 0.0, 0.0};
    M[2] = {p.m / (2.0 * ob2), 0.0, 1.0, -1.0 / (2.0 * ob2)};
    M[3] = {0.0, 0.0, -1.0 / ((1.0 - pol.sigma2) * p.theta2), 1.0};
  }
  return M;
}

Jacobian4 cramer_jacobian(const ModelParams& p, const PolicyVector& pol,
                          const Stage2Equilibrium& eq) {
  require_interior(eq);
  if (eq.mode == RndMode::kBoth) {
    throw ModelError(ErrorCode::kValidationError,
                     "comparative statics cover single-channel modes only");
  }
  const Matrix4 M = equilibrium_system_matrix(p, pol, eq.mode);
  const MarketState& st = eq.state;
  const double one_minus_t = 1.0 - pol.t;
  const double ob1 = 1.0 - p.b1;
  const double ob2 = 1.0 - p.b2;
  std::array<Vector4, Jacobian4::kCols> rhs{};
  if (eq.mode == RndMode::kProcessOnly) {
    rhs[Col::kTax] = {-(p.c1 - st.k1) / (2.0 * ob1 * sq(one_minus_t)), 0.0, 0.0, 0.0};
    rhs[Col::kForeignSubsidy] = {0.0, st.q1 / (sq(1.0 - pol.s1) * p.phi1), 0.0, 0.0};
    rhs[Col::kHomeSubsidy] = {0.0, 0.0, 0.0, st.q2 / (sq(1.0 - pol.s2) * p.phi2)};
    rhs[Col::kB1] = {(p.a - (p.c1 - st.k1) / one_minus_t - p.m * st.q2) / (2.0 * sq(ob1)),
                     0.0, 0.0, 0.0};
    rhs[Col::kB2] = {0.0, 0.0, (p.a - (p.c2 - st.k2) - p.m * st.q1) / (2.0 * sq(ob2)),
                     0.0};
  } else {
    const double rd1 = (1.0 - pol.sigma1) * p.theta1;
    rhs[Col::kTax] = {-p.c1 / (2.0 * ob1 * sq(one_minus_t)), -st.q1 / rd1, 0.0, 0.0};
    rhs[Col::kForeignSubsidy] = {
        0.0, one_minus_t * st.q1 / (sq(1.0 - pol.sigma1) * p.theta1), 0.0, 0.0};
    rhs[Col::kHomeSubsidy] = {0.0, 0.0, 0.0,
                              st.q2 / (sq(1.0 - pol.sigma2) * p.theta2)};
    rhs[Col::kB1] = {(p.a + st.r1 - p.c1 / one_minus_t - p.m * st.q2) / (2.0 * sq(ob1)),
                     0.0, 0.0, 0.0};
    rhs[Col::kB2] = {0.0, 0.0, (p.a + st.r2 - p.c2 - p.m * st.q1) / (2.0 * sq(ob2)),
                     0.0};
  }
  Jacobian4 J(eq.mode);
  for (int c = 0; c < Jacobian4::kCols; ++c) {
    const Vector4 x = cramer_solve(M, rhs[c]);
    for (int r = 0; r < Jacobian4::kRows; ++r) J.entries[r][c] = x[r];
  }
  return J;
}

namespace {

void perturb(ModelParams& p, PolicyVector& pol, Col col, double delta) {
  switch (col) {
    case Col::kTax: pol.t += delta; break;
    case Col::kForeignSubsidy:
      pol = pol.with_foreign_subsidy(pol.foreign_subsidy() + delta);
      break;
    case Col::kHomeSubsidy:
      pol = pol.with_home_subsidy(pol.home_subsidy() + delta);
      break;
    case Col::kB1: p.b1 += delta; break;
    case Col::kB2: p.b2 += delta; break;
  }
}

Vector4 state_vector(const MarketState& st, RndMode mode) {
  if (mode == RndMode::kProcessOnly) return {st.q1, st.k1, st.q2, st.k2};
  return {st.q1, st.r1, st.q2, st.r2};
}

}  // namespace

Jacobian4 finite_difference_jacobian(const ModelParams& params,
                                     const PolicyVector& policy, RndMode mode,
                                     double step) {
  if (mode == RndMode::kBoth) {
    throw ModelError(ErrorCode::kValidationError,
                     "comparative statics cover single-channel modes only");
  }
  PolicyVector base_policy = policy;
  base_policy.mode = mode;
  if (!solve_stage2(params, base_policy).feasibility.interior) {
    throw ModelError(ErrorCode::kBoundary, "base point is not interior");
  }
  Jacobian4 J(mode);
  for (int c = 0; c < Jacobian4::kCols; ++c) {
    const auto col = static_cast<Col>(c);
    Vector4 plus{};
    Vector4 minus{};
    for (const double sign : {1.0, -1.0}) {
      ModelParams p = params;
      PolicyVector pol = base_policy;
      perturb(p, pol, col, sign * step);
      const Stage2Equilibrium eq = solve_stage2(p, pol);
      if (!eq.feasibility.interior) {
        throw ModelError(ErrorCode::kBoundary,
                         "perturbed point leaves the interior region along " +
                             std::string(col_name(col, mode)) + " (" +
                             eq.feasibility.violated + ")");
      }
      (sign > 0 ? plus : minus) = state_vector(eq.state, mode);
    }
    for (int r = 0; r < Jacobian4::kRows; ++r) {
      J.entries[r][c] = (plus[r] - minus[r]) / (2.0 * step);
    }
  }
  return J;
}

InteriorSampler::InteriorSampler(SamplerConfig config, std::uint64_t seed)
    : config_(config), rng_(seed) {}

double InteriorSampler::uniform(double lo, double hi) {
  if (lo == hi) return lo;
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

InteriorSample InteriorSampler::next(RndMode mode) {
  const SamplerConfig& cfg = config_;
  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    InteriorSample s;
    ModelParams& p = s.params;
    p.a = uniform(cfg.a_lo, cfg.a_hi);
    p.c1 = uniform(cfg.c_lo, cfg.c_hi);
    p.b1 = uniform(cfg.b_lo, cfg.b_hi);
    p.phi1 = uniform(cfg.eff_lo, cfg.eff_hi);
    p.theta1 = uniform(cfg.eff_lo, cfg.eff_hi);
    if (cfg.symmetric) {
      p.c2 = p.c1;
      p.b2 = p.b1;
      p.phi2 = p.phi1;
      p.theta2 = p.theta1;
    } else {
      p.c2 = uniform(cfg.c_lo, cfg.c_hi);
      p.b2 = uniform(cfg.b_lo, cfg.b_hi);
      p.phi2 = uniform(cfg.eff_lo, cfg.eff_hi);
      p.theta2 = uniform(cfg.eff_lo, cfg.eff_hi);
    }
    const double u = uniform(0.0, 1.0);
    p.m = cfg.m_exclude_zero ? cfg.m_hi - u * (cfg.m_hi - cfg.m_lo)
                             : cfg.m_lo + u * (cfg.m_hi - cfg.m_lo);
    s.policy = PolicyVector::from_instruments(
        mode, uniform(cfg.t_lo, cfg.t_hi),
        uniform(cfg.subsidy_lo, cfg.subsidy_hi),
        uniform(cfg.subsidy_lo, cfg.subsidy_hi));
    if (mode == RndMode::kBoth) {
      s.policy.sigma1 = uniform(cfg.subsidy_lo, cfg.subsidy_hi);
      s.policy.sigma2 = uniform(cfg.subsidy_lo, cfg.subsidy_hi);
    }
    if (p.c1 >= p.a || p.c2 >= p.a) continue;
    s.eq = solve_stage2(p, s.policy);
    if (s.eq.feasibility.interior) return s;
  }
  throw ModelError(ErrorCode::kNoInteriorPoint,
                   "sampler found no interior point in " +
                       std::to_string(cfg.max_attempts) + " attempts");
}

int SignReport::total_failures() const {
  int total = 0;
  for (const auto& c : clauses) total += c.failures;
  return total;
}

namespace {

// Sign expected for one Jacobian entry: `own` clauses have a fixed sign,
// cross clauses carry the sign of m times `sign`, and vanish at m = 0.
struct Clause {
  const char* name;
  RndMode mode;
  Row row;
  Col col;
  int sign;
  bool cross;
};

constexpr RndMode kProc = RndMode::kProcessOnly;
constexpr RndMode kProd = RndMode::kProductOnly;

const Clause kClauses[] = {
    {"process dq1/dt < 0", kProc, Row::kQ1, Col::kTax, -1, false},
    {"process dk1/dt < 0", kProc, Row::kX1, Col::kTax, -1, false},
    {"process dq1/ds1 > 0", kProc, Row::kQ1, Col::kForeignSubsidy, +1, false},
    {"process dk1/ds1 > 0", kProc, Row::kX1, Col::kForeignSubsidy, +1, false},
    {"process dq1/ds2 sign -m", kProc, Row::kQ1, Col::kHomeSubsidy, -1, true},
    {"process dq2/dt sign +m", kProc, Row::kQ2, Col::kTax, +1, true},
    {"process dk2/dt sign +m", kProc, Row::kX2, Col::kTax, +1, true},
    {"process dq2/ds2 > 0", kProc, Row::kQ2, Col::kHomeSubsidy, +1, false},
    {"process dk2/ds2 > 0", kProc, Row::kX2, Col::kHomeSubsidy, +1, false},
    {"process dq2/ds1 sign -m", kProc, Row::kQ2, Col::kForeignSubsidy, -1, true},
    {"process dq1/db1 > 0", kProc, Row::kQ1, Col::kB1, +1, false},
    {"process dk1/db1 > 0", kProc, Row::kX1, Col::kB1, +1, false},
    {"process dq2/db2 > 0", kProc, Row::kQ2, Col::kB2, +1, false},
    {"process dk2/db2 > 0", kProc, Row::kX2, Col::kB2, +1, false},
    {"process dq1/db2 sign -m", kProc, Row::kQ1, Col::kB2, -1, true},
    {"process dk1/db2 sign -m", kProc, Row::kX1, Col::kB2, -1, true},
    {"process dq2/db1 sign -m", kProc, Row::kQ2, Col::kB1, -1, true},
    {"process dk2/db1 sign -m", kProc, Row::kX2, Col::kB1, -1, true},
    {"product dq1/dt < 0", kProd, Row::kQ1, Col::kTax, -1, false},
    {"product dr1/dt < 0", kProd, Row::kX1, Col::kTax, -1, false},
    {"product dq1/dsigma1 > 0", kProd, Row::kQ1, Col::kForeignSubsidy, +1, false},
    {"product dr1/dsigma1 > 0", kProd, Row::kX1, Col::kForeignSubsidy, +1, false},
    {"product dq2/dsigma2 > 0", kProd, Row::kQ2, Col::kHomeSubsidy, +1, false},
    {"product dr2/dsigma2 > 0", kProd, Row::kX2, Col::kHomeSubsidy, +1, false},
    {"product dq1/dsigma2 sign -m", kProd, Row::kQ1, Col::kHomeSubsidy, -1, true},
    {"product dr1/dsigma2 sign -m", kProd, Row::kX1, Col::kHomeSubsidy, -1, true},
    {"product dq2/dsigma1 sign -m", kProd, Row::kQ2, Col::kForeignSubsidy, -1, true},
    {"product dr2/dsigma1 sign -m", kProd, Row::kX2, Col::kForeignSubsidy, -1, true},
    {"product dq2/dt sign +m", kProd, Row::kQ2, Col::kTax, +1, true},
    {"product dr2/dt sign +m", kProd, Row::kX2, Col::kTax, +1, true},
    {"P6 dq1/db1 > 0", kProd, Row::kQ1, Col::kB1, +1, false},
    {"P6 dr1/db1 > 0", kProd, Row::kX1, Col::kB1, +1, false},
    {"P6 dq2/db2 > 0", kProd, Row::kQ2, Col::kB2, +1, false},
    {"P6 dr2/db2 > 0", kProd, Row::kX2, Col::kB2, +1, false},
    {"P6 dq1/db2 sign -m", kProd, Row::kQ1, Col::kB2, -1, true},
    {"P6 dr1/db2 sign -m", kProd, Row::kX1, Col::kB2, -1, true},
    {"P6 dq2/db1 sign -m", kProd, Row::kQ2, Col::kB1, -1, true},
    {"P6 dr2/db1 sign -m", kProd, Row::kX2, Col::kB1, -1, true},
};

bool clause_holds(const Clause& c, double m, double value) {
  if (!std::isfinite(value)) return false;
  if (!c.cross) return c.sign > 0 ? value > 0.0 : value < 0.0;
  if (m == 0.0) return value == 0.0;
  const int expected = c.sign * (m > 0.0 ? 1 : -1);
  return expected > 0 ? value > 0.0 : value < 0.0;
}

}  // namespace

SignReport verify_sign_propositions(InteriorSampler& sampler, int n_samples) {
  return verify_sign_propositions(sampler, n_samples, [](const InteriorSample& s) {
    return analytic_jacobian(s.params, s.policy, s.eq);
  });
}

SignReport verify_sign_propositions(
    InteriorSampler& sampler, int n_samples,
    const std::function<Jacobian4(const InteriorSample&)>& jacobian) {
  SignReport report;
  report.samples = n_samples;
  for (const Clause& c : kClauses) report.clauses.push_back({c.name, 0, 0, {}});

  for (const RndMode mode : {kProc, kProd}) {
    for (int i = 0; i < n_samples; ++i) {
      const InteriorSample s = sampler.next(mode);
      const Jacobian4 J = jacobian(s);
      for (std::size_t k = 0; k < std::size(kClauses); ++k) {
        const Clause& c = kClauses[k];
        if (c.mode != mode) continue;
        ClauseResult& out = report.clauses[k];
        ++out.evaluated;
        const double value = J(c.row, c.col);
        if (!clause_holds(c, s.params.m, value)) {
          ++out.failures;
          if (!out.witness) out.witness = SignWitness{s.params, s.policy, value};
        }
      }
    }
  }
  return report;
}

}  // namespace netpolicy
