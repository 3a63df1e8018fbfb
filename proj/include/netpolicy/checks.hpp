#pragma once

// Invariant and property checks behind the `check` subcommand. Each check
// compares the library against an independent route (fixed-point iteration,
// finite differences, numeric maximisation, Cramer's rule) or an exact
// identity, and reports the worst deviation it saw.

#include <cstdint>
#include <string>
#include <vector>

#include "netpolicy/model.hpp"

namespace netpolicy {

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;      // largest deviation observed
  double tolerance = 0.0;
  int points = 0;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckResult> results;

  int passed() const;
  int failed() const;
};

/// Closed-form stage 2 vs the damped fixed-point iteration, max abs gap in
/// (q1, q2, k1, k2, r1, r2).
CheckResult check_stage2_oracle(RndMode mode, int n, std::uint64_t seed);

/// Closed-form Jacobian vs central finite differences, entrywise
/// |err| <= max(rel * |fd|, floor).
CheckResult check_jacobian_fd(RndMode mode, int n, std::uint64_t seed,
                              double rel = 1e-6, double floor = 1e-9);

/// Closed-form Jacobian vs Cramer's rule and vs the chain-rule R&D rows.
CheckResult check_jacobian_routes(RndMode mode, int n, std::uint64_t seed);

/// Sign clauses of the comparative-statics propositions. `independent`
/// draws m = 0 exactly.
CheckResult check_sign_propositions(int n, std::uint64_t seed, bool independent);

/// Foreign best response vs golden-section maximisation of W1.
CheckResult check_foreign_response_numeric(RndMode mode, int n, std::uint64_t seed);
/// W1 is stationary at the closed-form response for several taxes.
CheckResult check_foreign_response_tax_invariance(RndMode mode, int n,
                                                  std::uint64_t seed);
/// The numeric foreign optimum rises with the home subsidy when m != 0.
CheckResult check_foreign_response_monotone(RndMode mode, int n, std::uint64_t seed);

/// Home optimum at m = 0 vs 1/(1 + 2(1 - b2)) for b2 in {0, .1, .2, .3, .4}.
CheckResult check_home_subsidy_m0(RndMode mode);

/// Analytic home welfare gradient vs central differences of W2.
CheckResult check_home_gradient_fd(RndMode mode, int n, std::uint64_t seed);

/// Short and long forms of consumer surplus.
CheckResult check_cs_forms(int n, std::uint64_t seed);
/// W1 = pi1 - foreign subsidy cost, W2 = cs + pi2 + taxrev - home subsidy
/// cost, and W1 + W2 equal to total surplus with transfers netted out.
CheckResult check_welfare_decomposition(int n, std::uint64_t seed);
/// Mirror-image firms under symmetric policy get identical outcomes.
CheckResult check_symmetry(int n, std::uint64_t seed);
/// dW = dW1 + dW2 at Nash points.
CheckResult check_welfare_difference_identity(RndMode mode);

/// Everything above at the default sample sizes.
CheckReport run_check_suite(std::uint64_t seed);

}  // namespace netpolicy
