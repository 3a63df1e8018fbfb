#include "netpolicy/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "netpolicy/comparative_statics.hpp"
#include "netpolicy/errors.hpp"
#include "netpolicy/optimize.hpp"
#include "netpolicy/policy.hpp"
#include "netpolicy/stage2.hpp"

namespace netpolicy {

int CheckReport::passed() const {
  return static_cast<int>(std::count_if(results.begin(), results.end(),
                                        [](const CheckResult& r) { return r.passed; }));
}

int CheckReport::failed() const { return static_cast<int>(results.size()) - passed(); }

namespace {

std::string label(const char* base, RndMode mode) {
  return std::string(base) + "[" + std::string(to_string(mode)) + "]";
}

CheckResult finish(std::string name, double worst, double tol, int points,
                   std::string detail = {}) {
  CheckResult r;
  r.name = std::move(name);
  r.worst = worst;
  r.tolerance = tol;
  r.points = points;
  r.passed = points > 0 && worst < tol;
  r.detail = std::move(detail);
  return r;
}

double state_gap(const MarketState& a, const MarketState& b) {
  return std::max({std::abs(a.q1 - b.q1), std::abs(a.q2 - b.q2), std::abs(a.k1 - b.k1),
                   std::abs(a.k2 - b.k2), std::abs(a.r1 - b.r1), std::abs(a.r2 - b.r2)});
}

// Largest entrywise excess of |x - ref| over max(rel |ref|, floor), as a
// multiple of that allowance (pass when < 1).
double scaled_gap(const Jacobian4& x, const Jacobian4& ref, double rel, double floor) {
  double worst = 0.0;
  for (int r = 0; r < Jacobian4::kRows; ++r) {
    for (int c = 0; c < Jacobian4::kCols; ++c) {
      const double allow = std::max(rel * std::abs(ref.entries[r][c]), floor);
      const double err = std::abs(x.entries[r][c] - ref.entries[r][c]);
      worst = std::max(worst, std::isfinite(err) ? err / allow : HUGE_VAL);
    }
  }
  return worst;
}

double numeric_foreign_optimum(const ModelParams& p, const PolicyVector& pol) {
  auto w1 = [&](double s) { return foreign_objective(p, pol.with_foreign_subsidy(s)); };
  return golden_section_maximize(w1, -0.5, 0.95, 1e-11).x;
}

}  // namespace

CheckResult check_stage2_oracle(RndMode mode, int n, std::uint64_t seed) {
  InteriorSampler sampler({}, seed);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const InteriorSample s = sampler.next(mode);
    const Stage2Equilibrium fp = solve_stage2_fixed_point(s.params, s.policy);
    worst = std::max(worst, state_gap(s.eq.state, fp.state));
  }
  return finish(label("stage2_closed_form_vs_fixed_point", mode), worst, 1e-10, n);
}

CheckResult check_jacobian_fd(RndMode mode, int n, std::uint64_t seed, double rel,
                              double floor) {
  InteriorSampler sampler({}, seed);
  double worst = 0.0;
  int done = 0;
  int skipped = 0;
  while (done < n) {
    const InteriorSample s = sampler.next(mode);
    Jacobian4 fd;
    try {
      fd = finite_difference_jacobian(s.params, s.policy, mode);
    } catch (const ModelError& e) {
      if (e.code() != ErrorCode::kBoundary) throw;
      ++skipped;
      continue;
    }
    worst = std::max(worst, scaled_gap(analytic_jacobian(s.params, s.policy, s.eq), fd,
                                       rel, floor));
    ++done;
  }
  std::ostringstream detail;
  detail << "error as a multiple of max(" << rel << "|fd|, " << floor << "); "
         << skipped << " draws too close to the boundary";
  return finish(label("jacobian_closed_form_vs_finite_differences", mode), worst, 1.0, n,
                detail.str());
}

CheckResult check_jacobian_routes(RndMode mode, int n, std::uint64_t seed) {
  InteriorSampler sampler({}, seed);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const InteriorSample s = sampler.next(mode);
    const Jacobian4 closed = analytic_jacobian(s.params, s.policy, s.eq);
    worst = std::max(worst, scaled_gap(cramer_jacobian(s.params, s.policy, s.eq), closed,
                                       1e-10, 1e-14));
    worst = std::max(worst, scaled_gap(chain_rule_jacobian(s.params, s.policy, s.eq),
                                       closed, 1e-10, 1e-14));
  }
  return finish(label("jacobian_closed_form_vs_cramer_and_chain_rule", mode), worst, 1.0,
                n, "error as a multiple of max(1e-10|closed|, 1e-14)");
}

CheckResult check_sign_propositions(int n, std::uint64_t seed, bool independent) {
  SamplerConfig cfg;
  if (independent) {
    cfg.m_lo = cfg.m_hi = 0.0;
    cfg.m_exclude_zero = false;
  }
  InteriorSampler sampler(cfg, seed);
  const SignReport report = verify_sign_propositions(sampler, n);
  std::ostringstream detail;
  for (const auto& c : report.clauses) {
    if (c.failures > 0) detail << c.name << ": " << c.failures << " failures; ";
  }
  return finish(independent ? "sign_propositions[m=0]" : "sign_propositions[m>0]",
                report.total_failures(), 0.5, n, detail.str());
}

CheckResult check_foreign_response_numeric(RndMode mode, int n, std::uint64_t seed) {
  InteriorSampler sampler({}, seed);
  double worst = 0.0;
  int done = 0;
  while (done < n) {
    const InteriorSample s = sampler.next(mode);
    const double closed = foreign_best_response(s.params, s.policy.home_subsidy(), mode);
    if (!solve_stage2(s.params, s.policy.with_foreign_subsidy(closed)).feasibility.interior) {
      continue;
    }
    worst = std::max(worst, std::abs(numeric_foreign_optimum(s.params, s.policy) - closed));
    ++done;
  }
  return finish(label("foreign_response_closed_form_vs_numeric", mode), worst, 1e-6, n);
}

CheckResult check_foreign_response_tax_invariance(RndMode mode, int n,
                                                  std::uint64_t seed) {
  InteriorSampler sampler({}, seed);
  double worst = 0.0;
  int done = 0;
  const double h = 1e-5;
  while (done < n) {
    const InteriorSample s = sampler.next(mode);
    const double closed = foreign_best_response(s.params, s.policy.home_subsidy(), mode);
    bool all_interior = true;
    double local = 0.0;
    for (const double t : {-0.1, 0.0, 0.1, 0.2, 0.3}) {
      const PolicyVector at = s.policy.with_tax(t);
      const double up = foreign_objective(s.params, at.with_foreign_subsidy(closed + h));
      const double down = foreign_objective(s.params, at.with_foreign_subsidy(closed - h));
      if (!std::isfinite(up) || !std::isfinite(down)) {
        all_interior = false;
        break;
      }
      local = std::max(local, std::abs(up - down) / (2.0 * h));
    }
    if (!all_interior) continue;
    worst = std::max(worst, local);
    ++done;
  }
  return finish(label("foreign_response_tax_invariance", mode), worst, 1e-8, n,
                "|dW1/dsubsidy| at the closed-form response for t in {-0.1,...,0.3}");
}

CheckResult check_foreign_response_monotone(RndMode mode, int n, std::uint64_t seed) {
  double failures = 0.0;
  int done = 0;
  for (const double sign : {1.0, -1.0}) {
    SamplerConfig cfg;
    cfg.m_lo = 0.05;
    cfg.m_hi = 0.3;
    InteriorSampler sampler(cfg, seed + (sign > 0 ? 0 : 1));
    int here = 0;
    while (here < n) {
      InteriorSample s = sampler.next(mode);
      s.params.m *= sign;
      double prev_closed = -HUGE_VAL;
      double prev_numeric = -HUGE_VAL;
      bool ok = true;
      bool usable = true;
      for (const double home : {0.0, 0.1, 0.2, 0.3}) {
        const PolicyVector pol = s.policy.with_home_subsidy(home);
        if (!solve_stage2(s.params, pol).feasibility.interior) {
          usable = false;
          break;
        }
        const double closed = foreign_best_response(s.params, home, mode);
        const double numeric = numeric_foreign_optimum(s.params, pol);
        ok = ok && closed > prev_closed && numeric > prev_numeric;
        prev_closed = closed;
        prev_numeric = numeric;
      }
      if (!usable) continue;
      if (!ok) failures += 1.0;
      ++here;
      ++done;
    }
  }
  return finish(label("foreign_response_increasing_in_home_subsidy", mode), failures, 0.5,
                done, "home subsidy in {0, 0.1, 0.2, 0.3}, m of both signs");
}

CheckResult check_home_subsidy_m0(RndMode mode) {
  double worst = 0.0;
  int points = 0;
  for (const double b : {0.0, 0.1, 0.2, 0.3, 0.4}) {
    const HomeResponse h = home_best_response(ModelParams::baseline(b, 0.0), 0.0, mode);
    worst = std::max(worst, std::abs(h.home_subsidy - closed_form_home_subsidy_m0(b)));
    ++points;
  }
  return finish(label("home_subsidy_at_m0_vs_closed_form", mode), worst, 1e-6, points);
}

CheckResult check_home_gradient_fd(RndMode mode, int n, std::uint64_t seed) {
  InteriorSampler sampler({}, seed);
  double worst = 0.0;
  int done = 0;
  const double h = 1e-6;
  while (done < n) {
    const InteriorSample s = sampler.next(mode);
    const PolicyVector& pol = s.policy;
    const double sub = pol.home_subsidy();
    const double vals[4] = {
        home_objective(s.params, pol.with_home_subsidy(sub + h)),
        home_objective(s.params, pol.with_home_subsidy(sub - h)),
        home_objective(s.params, pol.with_tax(pol.t + h)),
        home_objective(s.params, pol.with_tax(pol.t - h)),
    };
    if (!std::all_of(std::begin(vals), std::end(vals),
                     [](double v) { return std::isfinite(v); })) {
      continue;
    }
    const HomeGradient g = home_welfare_gradient(s.params, pol);
    const double fd_s = (vals[0] - vals[1]) / (2.0 * h);
    const double fd_t = (vals[2] - vals[3]) / (2.0 * h);
    worst = std::max(worst, std::abs(g.d_subsidy - fd_s) / std::max(1e-6 * std::abs(fd_s), 1e-9));
    worst = std::max(worst, std::abs(g.d_tax - fd_t) / std::max(1e-6 * std::abs(fd_t), 1e-9));
    ++done;
  }
  return finish(label("home_gradient_vs_finite_differences", mode), worst, 1.0, n,
                "error as a multiple of max(1e-6|fd|, 1e-9)");
}

CheckResult check_cs_forms(int n, std::uint64_t seed) {
  InteriorSampler sampler({}, seed);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const RndMode mode = static_cast<RndMode>(i % 3);
    const InteriorSample s = sampler.next(mode);
    worst = std::max(worst, std::abs(consumer_surplus(s.params, s.eq.state) -
                                     consumer_surplus_long_form(s.params, s.eq.state)));
  }
  return finish("consumer_surplus_short_vs_long_form", worst, 1e-13, n);
}

CheckResult check_welfare_decomposition(int n, std::uint64_t seed) {
  InteriorSampler sampler({}, seed);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const RndMode mode = static_cast<RndMode>(i % 3);
    const InteriorSample s = sampler.next(mode);
    const ModelParams& p = s.params;
    const MarketState& st = s.eq.state;
    const WelfareBreakdown& w = s.eq.welfare;
    worst = std::max(worst, std::abs(w.W1 - (w.pi1 - w.subsidy_cost_foreign)));
    worst = std::max(worst,
                     std::abs(w.W2 - (w.cs + w.pi2 + w.taxrev - w.subsidy_cost_home)));
    // Taxes and subsidies are transfers between the two countries' agents.
    const double total = w.cs + w.p1 * st.q1 + w.p2 * st.q2 - (p.c1 - st.k1) * st.q1 -
                         (p.c2 - st.k2) * st.q2 -
                         0.5 * (p.phi1 * st.k1 * st.k1 + p.phi2 * st.k2 * st.k2 +
                                p.theta1 * st.r1 * st.r1 + p.theta2 * st.r2 * st.r2);
    worst = std::max(worst, std::abs(w.W1 + w.W2 - total));
  }
  return finish("welfare_decomposition", worst, 1e-13, n);
}

CheckResult check_symmetry(int n, std::uint64_t seed) {
  SamplerConfig cfg;
  cfg.symmetric = true;
  cfg.t_lo = cfg.t_hi = 0.0;
  InteriorSampler sampler(cfg, seed);
  double worst = 0.0;
  int done = 0;
  while (done < n) {
    const RndMode mode = static_cast<RndMode>(done % 3);
    InteriorSample s = sampler.next(mode);
    PolicyVector pol = s.policy;
    pol.s2 = pol.s1;
    pol.sigma2 = pol.sigma1;
    const Stage2Equilibrium eq = solve_stage2(s.params, pol);
    if (!eq.feasibility.interior) continue;
    const MarketState& st = eq.state;
    const WelfareBreakdown& w = eq.welfare;
    worst = std::max({worst, std::abs(st.q1 - st.q2), std::abs(st.k1 - st.k2),
                      std::abs(st.r1 - st.r2), std::abs(w.p1 - w.p2),
                      std::abs(w.pi1 - w.pi2),
                      std::abs(w.subsidy_cost_foreign - w.subsidy_cost_home)});
    // At laissez-faire the governments' objectives reduce to profits (+ cs).
    const Stage2Equilibrium lf = solve_stage2(s.params, PolicyVector::zero(mode));
    worst = std::max({worst, std::abs(lf.welfare.W1 - lf.welfare.pi1),
                      std::abs(lf.welfare.W2 - (lf.welfare.cs + lf.welfare.pi2))});
    ++done;
  }
  return finish("symmetric_parameters_symmetric_outcome", worst, 1e-14, n);
}

CheckResult check_welfare_difference_identity(RndMode mode) {
  double worst = 0.0;
  int points = 0;
  NashOptions opts;
  opts.run_epsilon_check = false;
  for (const double m : {0.05, 0.25, -0.1}) {
    for (const double b : {0.0, 0.2, 0.4}) {
      const NashResult r = solve_nash_report(ModelParams::baseline(b, m), mode, opts);
      worst = std::max(worst, std::abs(r.dW - (r.dW1 + r.dW2)));
      worst = std::max(worst, std::abs(r.dW1 - (r.eq.welfare.W1 - r.lf.welfare.W1)));
      worst = std::max(worst, std::abs(r.dW2 - (r.eq.welfare.W2 - r.lf.welfare.W2)));
      ++points;
    }
  }
  // Exact: the differences are formed directly from these quantities.
  return finish(label("welfare_difference_identity", mode), worst, 1e-300, points);
}

CheckReport run_check_suite(std::uint64_t seed) {
  CheckReport report;
  auto add = [&](CheckResult r) { report.results.push_back(std::move(r)); };
  const RndMode single[] = {RndMode::kProcessOnly, RndMode::kProductOnly};
  for (const RndMode mode : {RndMode::kProcessOnly, RndMode::kProductOnly, RndMode::kBoth}) {
    add(check_stage2_oracle(mode, 200, seed + 1));
  }
  for (const RndMode mode : single) {
    add(check_jacobian_fd(mode, 200, seed + 2));
    add(check_jacobian_routes(mode, 200, seed + 3));
  }
  add(check_sign_propositions(500, seed + 4, false));
  add(check_sign_propositions(500, seed + 5, true));
  for (const RndMode mode : single) {
    add(check_foreign_response_numeric(mode, 50, seed + 6));
    add(check_foreign_response_tax_invariance(mode, 50, seed + 7));
    add(check_foreign_response_monotone(mode, 25, seed + 8));
    add(check_home_subsidy_m0(mode));
    add(check_home_gradient_fd(mode, 50, seed + 9));
    add(check_welfare_difference_identity(mode));
  }
  add(check_cs_forms(200, seed + 10));
  add(check_welfare_decomposition(200, seed + 11));
  add(check_symmetry(200, seed + 12));
  return report;
}

}  // namespace netpolicy
