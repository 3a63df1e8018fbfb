#pragma once

// b-grid sweeps of the Nash policy game against laissez-faire.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "netpolicy/model.hpp"
#include "netpolicy/policy.hpp"

namespace netpolicy {

struct SweepRow {
  double b = 0.0;
  double m = 0.0;
  RndMode mode = RndMode::kProcessOnly;
  double t_star = 0.0;
  double s1_star = 0.0;
  double s2_star = 0.0;
  double sigma1_star = 0.0;
  double sigma2_star = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double W1_nash = 0.0;
  double W2_nash = 0.0;
  double W1_lf = 0.0;
  double W2_lf = 0.0;
  double dW1 = 0.0;
  double dW2 = 0.0;
  double dW = 0.0;
  bool feasible = false;
  std::string binding_constraint;

  // Diagnostics, not part of the CSV.
  int iterations = 0;
  double epsilon_check = 0.0;

  double foreign_subsidy_star() const;
  double home_subsidy_star() const;
  PolicyVector policy() const;
};

SweepRow make_row(double b, double m, RndMode mode, const NashResult& nash);

/// {lo, lo + step, ...} up to hi inclusive (within 1e-9), built from the
/// index so no rounding drift accumulates.
std::vector<double> make_b_grid(double lo, double hi, double step);

struct SweepOptions {
  NashOptions nash;
  /// Start each grid point from the last feasible point's policy.
  bool warm_start = true;
};

/// One row per (m, b), ordered by m then b. Infeasible points are kept and
/// flagged.
std::vector<SweepRow> sweep_b(const ModelParams& params_template,
                              const std::vector<double>& b_grid,
                              const std::vector<double>& m_values, RndMode mode,
                              const SweepOptions& options = {});

struct AdmissibleBound {
  double b_bar = 0.0;
  /// Smallest b found infeasible (b_bar < b_fail <= b_bar + tolerance).
  double b_fail = 0.0;
  std::string binding_constraint;
};

/// Largest b (symmetric b1 = b2 = b) with an accepted Nash equilibrium:
/// scan in `scan_step`, then bisect to `tolerance`. Throws kNeverFeasible if
/// b = 0 already fails.
AdmissibleBound find_admissible_bound(const ModelParams& params_template, double m,
                                      RndMode mode, const SweepOptions& options = {},
                                      double scan_step = 0.01, double tolerance = 1e-3);

struct CrossingReport {
  std::string column;
  double b_lo = 0.0;
  double b_hi = 0.0;
  double b_cross = 0.0;
  /// +1 for negative to positive, -1 for positive to negative.
  int direction = 0;
};

/// Reads a numeric SweepRow column by its CSV name; throws kValidationError
/// for unknown names.
double row_value(const SweepRow& row, const std::string& column);

/// Every sign change of `column` between adjacent feasible rows, refined by
/// bisection on b with Nash re-solved at each midpoint. Rows must share
/// (m, mode) and be sorted by b.
std::vector<CrossingReport> detect_crossings(const std::vector<SweepRow>& rows,
                                             const std::string& column,
                                             const ModelParams& params_template,
                                             const SweepOptions& options = {},
                                             double tolerance = 1e-4);

}  // namespace netpolicy
