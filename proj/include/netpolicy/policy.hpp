#pragma once

// Stage-1 policy game. The foreign government picks its R&D subsidy from a
// closed form; the home government chooses (home subsidy, tax) numerically.
// Their alternation, damped, gives the Nash policy equilibrium.

#include <array>
#include <optional>
#include <string>

#include "netpolicy/errors.hpp"
#include "netpolicy/model.hpp"
#include "netpolicy/stage2.hpp"

namespace netpolicy {

/// Home instrument box: subsidy in [0, 0.95], tax in [-0.95, 0.95].
struct HomeBox {
  double subsidy_lo = 0.0;
  double subsidy_hi = 0.95;
  double tax_lo = -0.95;
  double tax_hi = 0.95;
};

/// s1* as a function of the home process subsidy. Throws kSocViolation when
/// the home firm's own term 1 - 1/(2(1-b2)(1-s2)phi2) is not positive.
double foreign_best_response_process(const ModelParams& params, double s2);
/// sigma1* as a function of the home product subsidy.
double foreign_best_response_product(const ModelParams& params, double sigma2);
double foreign_best_response(const ModelParams& params, double home_subsidy,
                             RndMode mode);

/// Home optimum at m = 0: 1/(1 + 2(1 - b2)).
double closed_form_home_subsidy_m0(double b2);

struct HomeGradient {
  double d_subsidy = 0.0;
  double d_tax = 0.0;
};

/// Total derivative of W2 in the home instruments, assembled from the
/// partials of W2 and the comparative-statics Jacobian. Throws kNonInterior.
HomeGradient home_welfare_gradient(const ModelParams& params,
                                   const PolicyVector& policy);

/// W2 at a policy, or -infinity if the stage-2 equilibrium is not interior.
double home_objective(const ModelParams& params, const PolicyVector& policy);
/// W1 at a policy, or -infinity if the stage-2 equilibrium is not interior.
double foreign_objective(const ModelParams& params, const PolicyVector& policy);

struct HomeResponse {
  double home_subsidy = 0.0;
  double tax = 0.0;
  double W2 = 0.0;
  HomeGradient gradient;
  /// True when W2 is stationary at the optimum (ignoring the box faces).
  bool interior = false;
  bool on_box_face = false;
  /// When not interior: the stage-2 condition that pins the optimum.
  std::string binding_constraint;
};

struct HomeSearchOptions {
  HomeBox box;
  int grid_points = 41;
  double gradient_tolerance = 1e-5;
};

/// Maximises W2 over the box for a given foreign subsidy. Throws
/// kNoInteriorPoint if no grid point is interior.
HomeResponse home_best_response(const ModelParams& params,
                                double foreign_subsidy, RndMode mode,
                                const HomeSearchOptions& options = {});

struct NashOptions {
  double damping = 0.5;
  double tolerance = 1e-8;
  int max_rounds = 500;
  int epsilon_grid_points = 201;
  double epsilon_tolerance = 1e-5;
  bool run_epsilon_check = true;
  HomeSearchOptions home;
  /// Starting policy; zero policy when empty.
  std::optional<PolicyVector> start;
};

struct NashResult {
  PolicyVector policy;
  Stage2Equilibrium eq;
  Stage2Equilibrium lf;
  double dW1 = 0.0;
  double dW2 = 0.0;
  double dW = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Largest unilateral welfare gain found on the verification grids.
  double epsilon_check = 0.0;
  /// Stage-2 interior and home optimum unconstrained by feasibility.
  bool interior = false;
  std::string binding_constraint;
  std::optional<ErrorCode> failure;
  std::string failure_message;

  bool accepted() const { return !failure.has_value(); }
};

Stage2Equilibrium laissez_faire(const ModelParams& params, RndMode mode);

/// Largest gain either government can obtain by a unilateral deviation on
/// grids of `points` values per instrument (and the joint home grid).
double epsilon_equilibrium_gap(const ModelParams& params,
                               const PolicyVector& policy, int points,
                               const HomeBox& box = {});

/// Never throws for solver trouble; the outcome is recorded in `failure`.
NashResult solve_nash_report(const ModelParams& params, RndMode mode,
                             const NashOptions& options = {});

/// Throws kNoConvergence or kNonInteriorAtNash.
NashResult solve_nash(const ModelParams& params, RndMode mode,
                      const NashOptions& options = {});

}  // namespace netpolicy
