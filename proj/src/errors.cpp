#include "netpolicy/errors.hpp"

namespace netpolicy {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTaxDegenerate: return "TAX_DEGENERATE";
    case ErrorCode::kNonInterior: return "NON_INTERIOR";
    case ErrorCode::kNoConvergence: return "NO_CONVERGENCE";
    case ErrorCode::kSocViolation: return "SOC_VIOLATION";
    case ErrorCode::kNoInteriorPoint: return "NO_INTERIOR_POINT";
    case ErrorCode::kNonInteriorAtNash: return "NON_INTERIOR_AT_NASH";
    case ErrorCode::kBoundary: return "BOUNDARY";
    case ErrorCode::kNeverFeasible: return "NEVER_FEASIBLE";
    case ErrorCode::kParseError: return "PARSE_ERROR";
    case ErrorCode::kValidationError: return "VALIDATION_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace netpolicy
