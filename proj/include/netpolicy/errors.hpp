#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace netpolicy {

enum class ErrorCode {
  kTaxDegenerate,
  kNonInterior,
  kNoConvergence,
  kSocViolation,
  kNoInteriorPoint,
  kNonInteriorAtNash,
  kBoundary,
  kNeverFeasible,
  kParseError,
  kValidationError,
};

std::string_view to_string(ErrorCode code);

class ModelError : public std::runtime_error {
 public:
  ModelError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace netpolicy
