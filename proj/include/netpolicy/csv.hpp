#pragma once

// Sweep rows as CSV. Floats are written with 17 significant digits so that
// reading a file back reproduces every value exactly.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "netpolicy/sweep.hpp"

namespace netpolicy {

inline constexpr std::string_view kSweepCsvHeader =
    "b,m,mode,t_star,s1_star,s2_star,sigma1_star,sigma2_star,q1,q2,W1_nash,W2_nash,"
    "W1_lf,W2_lf,dW1,dW2,dW,feasible,binding_constraint";

std::string format_double(double value);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Throws ModelError(kParseError) on a wrong header or malformed line.
std::vector<SweepRow> parse_sweep_csv(std::string_view text);

}  // namespace netpolicy
