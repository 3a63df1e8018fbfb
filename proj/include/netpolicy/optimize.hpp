#pragma once

// Small derivative-free maximisers. Objectives may return -infinity to mark
// infeasible points; such points are never accepted as improvements.

#include <array>
#include <functional>

namespace netpolicy {

struct ScalarOptimum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search on [lo, hi]; assumes a unimodal objective.
ScalarOptimum golden_section_maximize(const std::function<double(double)>& f,
                                      double lo, double hi, double tol = 1e-12);

struct PatternSearchOptions {
  double initial_step = 0.025;
  double min_step = 1e-11;
  int max_evaluations = 200000;
};

struct PlanarOptimum {
  std::array<double, 2> x{};
  double value = 0.0;
  int evaluations = 0;
};

/// Hooke-Jeeves pattern search in a box, starting from `x0`.
PlanarOptimum hooke_jeeves_maximize(
    const std::function<double(const std::array<double, 2>&)>& f,
    std::array<double, 2> x0, const std::array<double, 2>& lo,
    const std::array<double, 2>& hi, const PatternSearchOptions& options = {});

}  // namespace netpolicy
