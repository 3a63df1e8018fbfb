#include "netpolicy/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "netpolicy/comparative_statics.hpp"
#include "netpolicy/optimize.hpp"

namespace netpolicy {

namespace {

constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

double foreign_response(const ModelParams& p, double home_rate, double efficiency) {
  const double own2 = 1.0 - 1.0 / (2.0 * (1.0 - p.b2) * (1.0 - home_rate) * efficiency);
  if (!(own2 > 0.0)) {
    std::ostringstream out;
    out << "home firm own term " << own2 << " is not positive at subsidy " << home_rate;
    throw ModelError(ErrorCode::kSocViolation, out.str());
  }
  return p.m * p.m / (4.0 * (1.0 - p.b1) * (1.0 - p.b2)) / own2;
}

void require_single_channel(RndMode mode) {
  if (mode == RndMode::kBoth) {
    throw ModelError(ErrorCode::kValidationError,
                     "the policy game is defined for process or product mode only");
  }
}

}  // namespace

double foreign_best_response_process(const ModelParams& params, double s2) {
  return foreign_response(params, s2, params.phi2);
}

double foreign_best_response_product(const ModelParams& params, double sigma2) {
  return foreign_response(params, sigma2, params.theta2);
}

double foreign_best_response(const ModelParams& params, double home_subsidy,
                             RndMode mode) {
  require_single_channel(mode);
  return mode == RndMode::kProcessOnly
             ? foreign_best_response_process(params, home_subsidy)
             : foreign_best_response_product(params, home_subsidy);
}

double closed_form_home_subsidy_m0(double b2) { return 1.0 / (1.0 + 2.0 * (1.0 - b2)); }

HomeGradient home_welfare_gradient(const ModelParams& p, const PolicyVector& pol) {
  require_single_channel(pol.mode);
  const Stage2Equilibrium eq = solve_stage2(p, pol);
  const Jacobian4 J = analytic_jacobian(p, pol, eq);
  const MarketState& st = eq.state;
  const Prices pr = inverse_demand(p, st);
  const bool process = pol.mode == RndMode::kProcessOnly;

  // Partials of W2 = cs + pi2 + t p1 q1 - home subsidy cost in (q1, x1, q2, x2).
  // In q1 the consumer-surplus term m q2 and the home-profit term -m q2 cancel.
  const double w_q1 = st.q1 + pol.t * (pr.p1 - (1.0 - p.b1) * st.q1);
  const double w_x1 = process ? 0.0 : pol.t * st.q1;
  const double w_q2 = st.q2 + p.m * st.q1 + pr.p2 - (1.0 - p.b2) * st.q2 - (p.c2 - st.k2) -
                      pol.t * p.m * st.q1;
  const double w_x2 = process ? st.q2 - p.phi2 * st.k2 : st.q2 - p.theta2 * st.r2;

  auto total = [&](Jacobian4::Col col) {
    return w_q1 * J(Jacobian4::kQ1, col) + w_x1 * J(Jacobian4::kX1, col) +
           w_q2 * J(Jacobian4::kQ2, col) + w_x2 * J(Jacobian4::kX2, col);
  };
  HomeGradient g;
  g.d_subsidy = total(Jacobian4::kHomeSubsidy);
  g.d_tax = total(Jacobian4::kTax) + pr.p1 * st.q1;
  return g;
}

double home_objective(const ModelParams& params, const PolicyVector& policy) {
  const Stage2Equilibrium eq = solve_stage2(params, policy);
  return eq.feasibility.interior ? eq.welfare.W2 : kMinusInf;
}

double foreign_objective(const ModelParams& params, const PolicyVector& policy) {
  const Stage2Equilibrium eq = solve_stage2(params, policy);
  return eq.feasibility.interior ? eq.welfare.W1 : kMinusInf;
}

namespace {

using Point = std::array<double, 2>;  // (home subsidy, tax)

bool on_face(double x, double lo, double hi) { return x <= lo || x >= hi; }

// Gradient with components that push outward through an active box face
// removed.
HomeGradient projected(const HomeGradient& g, const Point& x, const HomeBox& box) {
  HomeGradient out = g;
  if ((x[0] <= box.subsidy_lo && g.d_subsidy < 0.0) ||
      (x[0] >= box.subsidy_hi && g.d_subsidy > 0.0)) {
    out.d_subsidy = 0.0;
  }
  if ((x[1] <= box.tax_lo && g.d_tax < 0.0) || (x[1] >= box.tax_hi && g.d_tax > 0.0)) {
    out.d_tax = 0.0;
  }
  return out;
}

// Newton steps on the analytic gradient with a finite-difference Hessian.
// A step is kept only if it stays interior and W2 does not fall.
Point newton_polish(const ModelParams& p, double foreign, RndMode mode, Point x,
                    double value, const HomeBox& box) {
  auto policy_at = [&](const Point& y) {
    return PolicyVector::from_instruments(mode, y[1], foreign, y[0]);
  };
  const double h = 1e-6;
  for (int iter = 0; iter < 20; ++iter) {
    try {
      const HomeGradient g = home_welfare_gradient(p, policy_at(x));
      if (std::max(std::abs(g.d_subsidy), std::abs(g.d_tax)) < 1e-13) break;
      const HomeGradient gs_plus = home_welfare_gradient(p, policy_at({x[0] + h, x[1]}));
      const HomeGradient gs_minus = home_welfare_gradient(p, policy_at({x[0] - h, x[1]}));
      const HomeGradient gt_plus = home_welfare_gradient(p, policy_at({x[0], x[1] + h}));
      const HomeGradient gt_minus = home_welfare_gradient(p, policy_at({x[0], x[1] - h}));
      const double hss = (gs_plus.d_subsidy - gs_minus.d_subsidy) / (2.0 * h);
      const double htt = (gt_plus.d_tax - gt_minus.d_tax) / (2.0 * h);
      const double hst = 0.5 * ((gs_plus.d_tax - gs_minus.d_tax) +
                                (gt_plus.d_subsidy - gt_minus.d_subsidy)) / (2.0 * h);
      const double det = hss * htt - hst * hst;
      if (!(hss < 0.0 && det > 0.0)) break;
      const double ds = -(htt * g.d_subsidy - hst * g.d_tax) / det;
      const double dt = -(hss * g.d_tax - hst * g.d_subsidy) / det;
      const Point next{std::clamp(x[0] + ds, box.subsidy_lo, box.subsidy_hi),
                       std::clamp(x[1] + dt, box.tax_lo, box.tax_hi)};
      const double next_value = home_objective(p, policy_at(next));
      if (!(next_value >= value - 1e-15 * std::abs(value))) break;
      if (next == x) break;
      x = next;
      value = std::max(value, next_value);
    } catch (const ModelError&) {
      break;
    }
  }
  return x;
}

}  // namespace

HomeResponse home_best_response(const ModelParams& params, double foreign_subsidy,
                                RndMode mode, const HomeSearchOptions& options) {
  require_single_channel(mode);
  const HomeBox& box = options.box;
  auto policy_at = [&](const Point& x) {
    return PolicyVector::from_instruments(mode, x[1], foreign_subsidy, x[0]);
  };
  auto objective = [&](const Point& x) { return home_objective(params, policy_at(x)); };

  Point best{0.0, 0.0};
  double best_value = kMinusInf;
  const int n = options.grid_points;
  for (int i = 0; i < n; ++i) {
    const double s = box.subsidy_lo + (box.subsidy_hi - box.subsidy_lo) * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double t = box.tax_lo + (box.tax_hi - box.tax_lo) * j / (n - 1);
      const double v = objective({s, t});
      if (v > best_value) {
        best_value = v;
        best = {s, t};
      }
    }
  }
  if (best_value == kMinusInf) {
    throw ModelError(ErrorCode::kNoInteriorPoint,
                     "no interior stage-2 equilibrium anywhere in the home box");
  }

  PatternSearchOptions ps;
  ps.initial_step = (box.subsidy_hi - box.subsidy_lo) / (n - 1);
  const PlanarOptimum refined =
      hooke_jeeves_maximize(objective, best, {box.subsidy_lo, box.tax_lo},
                            {box.subsidy_hi, box.tax_hi}, ps);
  const Point x =
      newton_polish(params, foreign_subsidy, mode, refined.x, refined.value, box);

  HomeResponse out;
  out.home_subsidy = x[0];
  out.tax = x[1];
  out.W2 = objective(x);
  out.gradient = home_welfare_gradient(params, policy_at(x));
  const HomeGradient pg = projected(out.gradient, x, box);
  out.on_box_face = on_face(x[0], box.subsidy_lo, box.subsidy_hi) ||
                    on_face(x[1], box.tax_lo, box.tax_hi);
  const double norm = std::max(std::abs(pg.d_subsidy), std::abs(pg.d_tax));
  out.interior = norm < options.gradient_tolerance;
  if (!out.interior) {
    // Walk uphill until the stage-2 equilibrium stops being interior; the
    // condition that fails is the one holding the optimum back.
    const Point dir{pg.d_subsidy / norm, pg.d_tax / norm};
    for (double step = 1e-9; step <= 1e-2; step *= 10.0) {
      const Point y{x[0] + step * dir[0], x[1] + step * dir[1]};
      const Stage2Equilibrium eq = solve_stage2(params, policy_at(y));
      if (!eq.feasibility.interior) {
        out.binding_constraint = eq.feasibility.violated;
        break;
      }
    }
    if (out.binding_constraint.empty()) out.binding_constraint = "unresolved";
  }
  return out;
}

Stage2Equilibrium laissez_faire(const ModelParams& params, RndMode mode) {
  return solve_stage2(params, PolicyVector::zero(mode));
}

double epsilon_equilibrium_gap(const ModelParams& params, const PolicyVector& policy,
                               int points, const HomeBox& box) {
  const Stage2Equilibrium base = solve_stage2(params, policy);
  const double W1 = base.welfare.W1;
  const double W2 = base.welfare.W2;
  double gap = 0.0;
  auto grid = [&](double lo, double hi, int i) { return lo + (hi - lo) * i / (points - 1); };
  for (int i = 0; i < points; ++i) {
    const double s = grid(box.subsidy_lo, box.subsidy_hi, i);
    const double t = grid(box.tax_lo, box.tax_hi, i);
    gap = std::max(gap, foreign_objective(params, policy.with_foreign_subsidy(s)) - W1);
    gap = std::max(gap, home_objective(params, policy.with_home_subsidy(s)) - W2);
    gap = std::max(gap, home_objective(params, policy.with_tax(t)) - W2);
    for (int j = 0; j < points; ++j) {
      const PolicyVector joint =
          policy.with_home_subsidy(s).with_tax(grid(box.tax_lo, box.tax_hi, j));
      gap = std::max(gap, home_objective(params, joint) - W2);
    }
  }
  return gap;
}

NashResult solve_nash_report(const ModelParams& params, RndMode mode,
                             const NashOptions& options) {
  require_single_channel(mode);
  params.validate();
  NashResult result;
  result.lf = laissez_faire(params, mode);
  PolicyVector policy = options.start.value_or(PolicyVector::zero(mode));
  policy.mode = mode;
  policy = PolicyVector::from_instruments(mode, policy.t, policy.foreign_subsidy(),
                                          policy.home_subsidy());

  const double w = options.damping;
  HomeResponse home;
  try {
    for (int round = 1; round <= options.max_rounds; ++round) {
      const double foreign = foreign_best_response(params, policy.home_subsidy(), mode);
      home = home_best_response(params, foreign, mode, options.home);
      const PolicyVector next = PolicyVector::from_instruments(
          mode, (1.0 - w) * policy.t + w * home.tax,
          (1.0 - w) * policy.foreign_subsidy() + w * foreign,
          (1.0 - w) * policy.home_subsidy() + w * home.home_subsidy);
      const double diff = std::max({std::abs(next.t - policy.t),
                                    std::abs(next.foreign_subsidy() - policy.foreign_subsidy()),
                                    std::abs(next.home_subsidy() - policy.home_subsidy())});
      policy = next;
      result.iterations = round;
      if (diff < options.tolerance) {
        result.converged = true;
        break;
      }
    }
  } catch (const ModelError& e) {
    result.policy = policy;
    result.eq = solve_stage2(params, policy);
    result.failure = e.code();
    result.failure_message = e.what();
    result.binding_constraint = result.eq.feasibility.violated.empty()
                                    ? std::string(to_string(e.code()))
                                    : result.eq.feasibility.violated;
    result.dW1 = result.eq.welfare.W1 - result.lf.welfare.W1;
    result.dW2 = result.eq.welfare.W2 - result.lf.welfare.W2;
    result.dW = result.dW1 + result.dW2;
    return result;
  }

  result.policy = policy;
  result.eq = solve_stage2(params, policy);
  result.dW1 = result.eq.welfare.W1 - result.lf.welfare.W1;
  result.dW2 = result.eq.welfare.W2 - result.lf.welfare.W2;
  result.dW = result.dW1 + result.dW2;
  result.interior = result.eq.feasibility.interior && home.interior;
  if (!result.eq.feasibility.interior) {
    result.binding_constraint = result.eq.feasibility.violated;
  } else if (!home.interior) {
    result.binding_constraint = home.binding_constraint;
  }

  if (!result.converged) {
    result.failure = ErrorCode::kNoConvergence;
    result.failure_message = "policy iteration did not settle in " +
                             std::to_string(options.max_rounds) + " rounds";
    return result;
  }
  if (!result.interior) {
    result.failure = ErrorCode::kNonInteriorAtNash;
    result.failure_message = "Nash policy is pinned by " + result.binding_constraint;
    return result;
  }
  if (options.run_epsilon_check) {
    result.epsilon_check = epsilon_equilibrium_gap(
        params, policy, options.epsilon_grid_points, options.home.box);
    if (result.epsilon_check > options.epsilon_tolerance) {
      result.failure = ErrorCode::kNoConvergence;
      std::ostringstream out;
      out << "unilateral deviation gains " << result.epsilon_check;
      result.failure_message = out.str();
    }
  }
  return result;
}

NashResult solve_nash(const ModelParams& params, RndMode mode, const NashOptions& options) {
  NashResult result = solve_nash_report(params, mode, options);
  if (result.failure) throw ModelError(*result.failure, result.failure_message);
  return result;
}

}  // namespace netpolicy
