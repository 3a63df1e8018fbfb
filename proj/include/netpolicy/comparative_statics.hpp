#pragma once

// Comparative statics of the single-channel stage-2 equilibria.
//
// Rows are (q1, x1, q2, x2) with x = k under process R&D and x = r under
// product R&D. Columns are (t, foreign subsidy, home subsidy, b1, b2), where
// the subsidies are (s1, s2) or (sigma1, sigma2) depending on the mode.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "netpolicy/linalg.hpp"
#include "netpolicy/model.hpp"
#include "netpolicy/stage2.hpp"

namespace netpolicy {

struct Jacobian4 {
  enum Row : int { kQ1 = 0, kX1 = 1, kQ2 = 2, kX2 = 3 };
  enum Col : int { kTax = 0, kForeignSubsidy = 1, kHomeSubsidy = 2, kB1 = 3, kB2 = 4 };
  static constexpr int kRows = 4;
  static constexpr int kCols = 5;

  RndMode mode = RndMode::kProcessOnly;
  /// Columns not produced by a given routine stay NaN.
  std::array<std::array<double, kCols>, kRows> entries;

  Jacobian4();
  explicit Jacobian4(RndMode m);

  double operator()(Row r, Col c) const { return entries[r][c]; }
  double& at(Row r, Col c) { return entries[r][c]; }

  bool has_column(Col c) const;
  /// Copies the columns of `other` that are set.
  void merge(const Jacobian4& other);
};

std::string_view row_name(Jacobian4::Row row, RndMode mode);
std::string_view col_name(Jacobian4::Col col, RndMode mode);

// Closed-form derivatives transcribed from the total differentiation of the
// equilibrium systems. All require an interior equilibrium of the right mode
// and throw ModelError(kNonInterior) otherwise.
Jacobian4 policy_jacobian_process(const ModelParams& params,
                                  const PolicyVector& policy,
                                  const Stage2Equilibrium& eq);
Jacobian4 network_jacobian_process(const ModelParams& params,
                                   const PolicyVector& policy,
                                   const Stage2Equilibrium& eq);
Jacobian4 policy_jacobian_product(const ModelParams& params,
                                  const PolicyVector& policy,
                                  const Stage2Equilibrium& eq);
Jacobian4 network_jacobian_product(const ModelParams& params,
                                   const PolicyVector& policy,
                                   const Stage2Equilibrium& eq);

/// All five columns from the closed forms for eq.mode.
Jacobian4 analytic_jacobian(const ModelParams& params,
                            const PolicyVector& policy,
                            const Stage2Equilibrium& eq);

/// Same quantity derivatives, but the R&D rows rebuilt from the R&D rules
/// k_i(q_i) or r_i(q_i) by the chain rule.
Jacobian4 chain_rule_jacobian(const ModelParams& params,
                              const PolicyVector& policy,
                              const Stage2Equilibrium& eq);

/// Solves the 4x4 totally differentiated system column by column with
/// Cramer's rule.
Jacobian4 cramer_jacobian(const ModelParams& params, const PolicyVector& policy,
                          const Stage2Equilibrium& eq);

/// The coefficient matrix of the linear equilibrium system in (q1, x1, q2, x2).
Matrix4 equilibrium_system_matrix(const ModelParams& params,
                                  const PolicyVector& policy, RndMode mode);

/// Central differences of the stage-2 solution. Throws ModelError(kBoundary)
/// if the base point or any perturbed point is not interior.
Jacobian4 finite_difference_jacobian(const ModelParams& params,
                                     const PolicyVector& policy, RndMode mode,
                                     double step = 1e-6);

/// Parameter/policy neighbourhood used for randomised checks.
struct SamplerConfig {
  double a_lo = 0.8, a_hi = 1.2;
  double c_lo = 0.6, c_hi = 0.8;
  double eff_lo = 2.0, eff_hi = 3.0;  // phi and theta
  double b_lo = 0.0, b_hi = 0.4;
  double m_lo = 0.0, m_hi = 0.3;
  bool m_exclude_zero = true;  // draw from (m_lo, m_hi]
  double t_lo = -0.1, t_hi = 0.3;
  double subsidy_lo = 0.0, subsidy_hi = 0.4;
  bool symmetric = false;
  int max_attempts = 10000;
};

struct InteriorSample {
  ModelParams params;
  PolicyVector policy;
  Stage2Equilibrium eq;
};

/// Seeded rejection sampler for interior stage-2 points.
class InteriorSampler {
 public:
  InteriorSampler(SamplerConfig config, std::uint64_t seed);

  /// Throws ModelError(kNoInteriorPoint) if max_attempts draws all fail.
  InteriorSample next(RndMode mode);

  const SamplerConfig& config() const { return config_; }

 private:
  double uniform(double lo, double hi);

  SamplerConfig config_;
  std::mt19937_64 rng_;
};

struct SignWitness {
  ModelParams params;
  PolicyVector policy;
  double value = 0.0;
};

struct ClauseResult {
  std::string name;  // e.g. "process dq1/dt < 0"
  int evaluated = 0;
  int failures = 0;
  std::optional<SignWitness> witness;  // first failing point
};

struct SignReport {
  std::vector<ClauseResult> clauses;
  int samples = 0;

  int total_failures() const;
  bool all_pass() const { return total_failures() == 0; }
};

/// Evaluates every sign clause of the policy and network comparative-statics
/// propositions (process and product) at `n_samples` interior draws per mode.
/// Cross-effect clauses use the sign of m: they flip for complements and
/// must vanish exactly when m = 0.
SignReport verify_sign_propositions(InteriorSampler& sampler, int n_samples);

/// Same, with the Jacobian supplied by the caller (used to exercise the
/// failure path).
SignReport verify_sign_propositions(
    InteriorSampler& sampler, int n_samples,
    const std::function<Jacobian4(const InteriorSample&)>& jacobian);

}  // namespace netpolicy
