#include "netpolicy/optimize.hpp"

#include <algorithm>
#include <cmath>

namespace netpolicy {

ScalarOptimum golden_section_maximize(const std::function<double(double)>& f,
                                      double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? ScalarOptimum{x1, f1} : ScalarOptimum{x2, f2};
}

namespace {

using Point = std::array<double, 2>;

Point clamp_to_box(Point x, const Point& lo, const Point& hi) {
  for (int i = 0; i < 2; ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
  return x;
}

}  // namespace

PlanarOptimum hooke_jeeves_maximize(const std::function<double(const Point&)>& f,
                                    Point x0, const Point& lo, const Point& hi,
                                    const PatternSearchOptions& options) {
  PlanarOptimum best;
  best.x = clamp_to_box(x0, lo, hi);
  best.value = f(best.x);
  best.evaluations = 1;
  double step = options.initial_step;

  // Coordinate probes around `base`, keeping any improvement.
  auto explore = [&](Point base, double base_value) {
    for (int i = 0; i < 2; ++i) {
      for (const double dir : {1.0, -1.0}) {
        Point trial = base;
        trial[i] = std::clamp(trial[i] + dir * step, lo[i], hi[i]);
        if (trial[i] == base[i]) continue;
        const double v = f(trial);
        ++best.evaluations;
        if (v > base_value) {
          base = trial;
          base_value = v;
          break;
        }
      }
    }
    return std::pair{base, base_value};
  };

  while (step >= options.min_step && best.evaluations < options.max_evaluations) {
    auto [x, v] = explore(best.x, best.value);
    if (v > best.value) {
      // Pattern moves along the improving direction while they keep paying.
      Point prev = best.x;
      best.x = x;
      best.value = v;
      while (best.evaluations < options.max_evaluations) {
        Point jump = clamp_to_box({2.0 * best.x[0] - prev[0], 2.0 * best.x[1] - prev[1]},
                                  lo, hi);
        const double jump_value = f(jump);
        ++best.evaluations;
        auto [y, w] = explore(jump, jump_value);
        if (w > best.value) {
          prev = best.x;
          best.x = y;
          best.value = w;
        } else {
          break;
        }
      }
    } else {
      step *= 0.5;
    }
  }
  return best;
}

}  // namespace netpolicy
