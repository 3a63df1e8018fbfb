#include "netpolicy/sweep.hpp"

#include <cmath>

#include "netpolicy/errors.hpp"

namespace netpolicy {

double SweepRow::foreign_subsidy_star() const {
  return mode == RndMode::kProductOnly ? sigma1_star : s1_star;
}

double SweepRow::home_subsidy_star() const {
  return mode == RndMode::kProductOnly ? sigma2_star : s2_star;
}

PolicyVector SweepRow::policy() const {
  return PolicyVector::from_instruments(mode, t_star, foreign_subsidy_star(),
                                        home_subsidy_star());
}

SweepRow make_row(double b, double m, RndMode mode, const NashResult& nash) {
  SweepRow row;
  row.b = b;
  row.m = m;
  row.mode = mode;
  row.t_star = nash.policy.t;
  row.s1_star = nash.policy.s1;
  row.s2_star = nash.policy.s2;
  row.sigma1_star = nash.policy.sigma1;
  row.sigma2_star = nash.policy.sigma2;
  row.q1 = nash.eq.state.q1;
  row.q2 = nash.eq.state.q2;
  row.W1_nash = nash.eq.welfare.W1;
  row.W2_nash = nash.eq.welfare.W2;
  row.W1_lf = nash.lf.welfare.W1;
  row.W2_lf = nash.lf.welfare.W2;
  row.dW1 = nash.dW1;
  row.dW2 = nash.dW2;
  row.dW = row.dW1 + row.dW2;
  row.feasible = nash.accepted();
  if (!row.feasible) {
    row.binding_constraint = nash.binding_constraint.empty()
                                 ? std::string(to_string(*nash.failure))
                                 : nash.binding_constraint;
  }
  row.iterations = nash.iterations;
  row.epsilon_check = nash.epsilon_check;
  return row;
}

std::vector<double> make_b_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) {
    throw ModelError(ErrorCode::kValidationError, "b grid needs step > 0 and hi >= lo");
  }
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> grid;
  grid.reserve(n + 1);
  for (long i = 0; i <= n; ++i) grid.push_back(lo + static_cast<double>(i) * step);
  return grid;
}

namespace {

NashResult solve_at(const ModelParams& tmpl, double b, RndMode mode,
                    const SweepOptions& options,
                    const std::optional<PolicyVector>& start) {
  NashOptions nash = options.nash;
  if (options.warm_start && start) nash.start = start;
  return solve_nash_report(tmpl.with_b(b), mode, nash);
}

}  // namespace

std::vector<SweepRow> sweep_b(const ModelParams& params_template,
                              const std::vector<double>& b_grid,
                              const std::vector<double>& m_values, RndMode mode,
                              const SweepOptions& options) {
  std::vector<SweepRow> rows;
  rows.reserve(b_grid.size() * m_values.size());
  for (const double m : m_values) {
    const ModelParams tmpl = params_template.with_m(m);
    std::optional<PolicyVector> warm;
    for (const double b : b_grid) {
      const NashResult nash = solve_at(tmpl, b, mode, options, warm);
      rows.push_back(make_row(b, m, mode, nash));
      if (rows.back().feasible) warm = nash.policy;
    }
  }
  return rows;
}

AdmissibleBound find_admissible_bound(const ModelParams& params_template, double m,
                                      RndMode mode, const SweepOptions& options,
                                      double scan_step, double tolerance) {
  const ModelParams tmpl = params_template.with_m(m);
  NashResult at_zero = solve_at(tmpl, 0.0, mode, options, std::nullopt);
  if (!at_zero.accepted()) {
    throw ModelError(ErrorCode::kNeverFeasible,
                     "no accepted Nash equilibrium at b = 0 (" +
                         at_zero.binding_constraint + ")");
  }

  double good = 0.0;
  PolicyVector warm = at_zero.policy;
  double bad = -1.0;
  std::string binding;
  for (long i = 1; static_cast<double>(i) * scan_step < 1.0; ++i) {
    const double b = static_cast<double>(i) * scan_step;
    const NashResult r = solve_at(tmpl, b, mode, options, warm);
    if (r.accepted()) {
      good = b;
      warm = r.policy;
    } else {
      bad = b;
      binding = r.binding_constraint;
      break;
    }
  }
  if (bad < 0.0) return {good, 1.0, "none"};

  while (bad - good > tolerance) {
    const double mid = 0.5 * (good + bad);
    const NashResult r = solve_at(tmpl, mid, mode, options, warm);
    if (r.accepted()) {
      good = mid;
      warm = r.policy;
    } else {
      bad = mid;
      binding = r.binding_constraint;
    }
  }
  return {good, bad, binding};
}

double row_value(const SweepRow& row, const std::string& column) {
  if (column == "t_star") return row.t_star;
  if (column == "s1_star") return row.s1_star;
  if (column == "s2_star") return row.s2_star;
  if (column == "sigma1_star") return row.sigma1_star;
  if (column == "sigma2_star") return row.sigma2_star;
  if (column == "q1") return row.q1;
  if (column == "q2") return row.q2;
  if (column == "W1_nash") return row.W1_nash;
  if (column == "W2_nash") return row.W2_nash;
  if (column == "W1_lf") return row.W1_lf;
  if (column == "W2_lf") return row.W2_lf;
  if (column == "dW1") return row.dW1;
  if (column == "dW2") return row.dW2;
  if (column == "dW") return row.dW;
  throw ModelError(ErrorCode::kValidationError, "unknown sweep column '" + column + "'");
}

std::vector<CrossingReport> detect_crossings(const std::vector<SweepRow>& rows,
                                             const std::string& column,
                                             const ModelParams& params_template,
                                             const SweepOptions& options,
                                             double tolerance) {
  std::vector<CrossingReport> out;
  const SweepRow* prev = nullptr;
  for (const SweepRow& row : rows) {
    if (!row.feasible) {
      prev = nullptr;
      continue;
    }
    if (prev != nullptr) {
      const double v_lo = row_value(*prev, column);
      const double v_hi = row_value(row, column);
      if ((v_lo < 0.0 && v_hi > 0.0) || (v_lo > 0.0 && v_hi < 0.0)) {
        CrossingReport rep;
        rep.column = column;
        rep.b_lo = prev->b;
        rep.b_hi = row.b;
        rep.direction = v_hi > 0.0 ? 1 : -1;

        const ModelParams tmpl = params_template.with_m(row.m);
        double lo = prev->b;
        double hi = row.b;
        PolicyVector warm = prev->policy();
        while (hi - lo > tolerance) {
          const double mid = 0.5 * (lo + hi);
          const NashResult r = solve_at(tmpl, mid, row.mode, options, warm);
          const double v = row_value(make_row(mid, row.m, row.mode, r), column);
          if ((v < 0.0) == (v_lo < 0.0)) {
            lo = mid;
            warm = r.policy;
          } else {
            hi = mid;
          }
        }
        rep.b_cross = 0.5 * (lo + hi);
        out.push_back(rep);
      }
    }
    prev = &row;
  }
  return out;
}

}  // namespace netpolicy
