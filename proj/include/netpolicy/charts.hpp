#pragma once

// Static SVG line charts of sweep results: welfare differences and policy
// instruments against b, one line per m. Only feasible rows are drawn.

#include <string>
#include <vector>

#include "netpolicy/sweep.hpp"

namespace netpolicy {

/// Three panels: dW1, dW2, dW.
std::string welfare_chart_svg(const std::vector<SweepRow>& rows);
/// Three panels: t*, foreign subsidy, home subsidy.
std::string policy_chart_svg(const std::vector<SweepRow>& rows);

struct ChartOutput {
  std::vector<std::string> files;
  std::vector<std::string> warnings;
};

/// Writes <dir>/<stem>_welfare.svg and <dir>/<stem>_policy.svg. With no
/// feasible rows both files are placeholders and a warning is returned.
ChartOutput render_charts(const std::vector<SweepRow>& rows, const std::string& dir,
                          const std::string& stem);

}  // namespace netpolicy
