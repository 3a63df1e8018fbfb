#pragma once

// Stage-2 Cournot equilibrium with R&D for a fixed policy vector.
//
// Three closed forms (general, process-only, product-only) plus a damped
// fixed-point iteration on the firms' reaction functions that serves as an
// independent oracle. Non-interior points are returned flagged rather than
// thrown so optimisers can probe them.

#include <string>

#include "netpolicy/model.hpp"

namespace netpolicy {

struct GammaPair {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

struct FeasibilityReport {
  double delta = 0.0;
  double soc1 = 0.0;  // value of the foreign firm's SOC expression (> 0 required)
  double soc2 = 0.0;
  bool delta_ok = false;
  bool soc1_ok = false;
  bool soc2_ok = false;
  bool positive_quantities = false;
  bool positive_prices = false;
  bool positive_rnd = false;
  bool cost_nonneg = false;
  bool interior = false;
  /// First failing condition ("delta", "soc1", "q2", "cost2", ...), empty if interior.
  std::string violated;
};

struct Stage2Equilibrium {
  RndMode mode = RndMode::kProcessOnly;
  MarketState state;
  WelfareBreakdown welfare;
  FeasibilityReport feasibility;
};

GammaPair gamma_coefficients(const ModelParams& params,
                             const PolicyVector& policy);

/// Both channels active; inactive-mode subsidy rates are simply zero.
Stage2Equilibrium solve_stage2_general(const ModelParams& params,
                                       const PolicyVector& policy);
Stage2Equilibrium solve_stage2_process(const ModelParams& params,
                                       const PolicyVector& policy);
Stage2Equilibrium solve_stage2_product(const ModelParams& params,
                                       const PolicyVector& policy);
/// Dispatches on policy.mode.
Stage2Equilibrium solve_stage2(const ModelParams& params,
                               const PolicyVector& policy);

struct FixedPointOptions {
  double damping = 0.5;
  double tolerance = 1e-12;
  int max_iterations = 10000;
  double start_q1 = 0.01;
  double start_q2 = 0.01;
};

/// Throws ModelError(kNoConvergence) if the iteration stalls or diverges.
Stage2Equilibrium solve_stage2_fixed_point(const ModelParams& params,
                                           const PolicyVector& policy,
                                           const FixedPointOptions& options = {});

FeasibilityReport check_feasibility(const ModelParams& params,
                                    const PolicyVector& policy,
                                    const Stage2Equilibrium& eq);

/// Largest absolute residual of the active first-order conditions at `state`.
double foc_residual(const ModelParams& params, const PolicyVector& policy,
                    const MarketState& state, RndMode mode);

/// Throws ModelError(kNonInterior) unless eq.feasibility.interior.
void require_interior(const Stage2Equilibrium& eq);

}  // namespace netpolicy
