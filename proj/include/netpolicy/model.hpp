#pragma once

// Structural model: demand with network externalities, firm profits,
// consumer surplus and the two governments' objectives.
//
// Firm 1 is the foreign exporter, firm 2 the home firm. Consumers live at
// home only. All functions here are pure formulas; feasibility of a state
// (positive prices, quantities, ...) is judged by the stage-2 solver.

#include <string>
#include <string_view>

namespace netpolicy {

enum class RndMode { kProcessOnly, kProductOnly, kBoth };

std::string_view to_string(RndMode mode);
/// Accepts "process", "product", "both" (and the PROCESS_ONLY style names).
RndMode parse_mode(std::string_view text);

struct ModelParams {
  double a = 1.0;
  double c1 = 0.7;
  double c2 = 0.7;
  double b1 = 0.0;
  double b2 = 0.0;
  double m = 0.05;
  double phi1 = 2.5;
  double phi2 = 2.5;
  double theta1 = 2.5;
  double theta2 = 2.5;

  /// Baseline calibration with symmetric network strength b and substitutability m.
  static ModelParams baseline(double b, double m);

  ModelParams with_b(double b) const;
  ModelParams with_m(double m_value) const;

  /// Throws ModelError(kValidationError) if an invariant is violated.
  void validate() const;
};

struct PolicyVector {
  double t = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  RndMode mode = RndMode::kProcessOnly;

  static PolicyVector zero(RndMode mode);

  /// Places the subsidies on the channel that is active in `mode`
  /// (process rates for kBoth).
  static PolicyVector from_instruments(RndMode mode, double tax,
                                       double foreign_subsidy,
                                       double home_subsidy);

  double foreign_subsidy() const;
  double home_subsidy() const;
  PolicyVector with_foreign_subsidy(double value) const;
  PolicyVector with_home_subsidy(double value) const;
  PolicyVector with_tax(double value) const;

  void validate() const;
};

struct MarketState {
  double q1 = 0.0;
  double q2 = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
};

struct Prices {
  double p1 = 0.0;
  double p2 = 0.0;
};

struct Profits {
  double pi1 = 0.0;
  double pi2 = 0.0;
};

struct WelfareBreakdown {
  double p1 = 0.0;
  double p2 = 0.0;
  double pi1 = 0.0;
  double pi2 = 0.0;
  double cs = 0.0;
  double taxrev = 0.0;
  double subsidy_cost_home = 0.0;
  double subsidy_cost_foreign = 0.0;
  double W1 = 0.0;
  double W2 = 0.0;
};

Prices inverse_demand(const ModelParams& params, const MarketState& state);

Profits profits(const ModelParams& params, const PolicyVector& policy,
                const MarketState& state);

/// Short form 0.5 (q1^2 + q2^2 + 2 m q1 q2).
double consumer_surplus(const ModelParams& params, const MarketState& state);

/// Gross utility from the two goods minus expenditure, with the choke
/// prices A_i = a + b_i q_i + r_i held at their equilibrium values.
double consumer_surplus_long_form(const ModelParams& params,
                                  const MarketState& state);

WelfareBreakdown welfare(const ModelParams& params, const PolicyVector& policy,
                         const MarketState& state);

}  // namespace netpolicy
