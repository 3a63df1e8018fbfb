#pragma once

#include <iosfwd>
#include <string>

#include "netpolicy/config.hpp"

namespace netpolicy {

enum ExitCode : int {
  kExitOk = 0,
  kExitSolverFailure = 1,
  kExitValidation = 2,
  kExitSuiteFailure = 3,
};

/// Runs `stage2`, `nash`, `sweep` or `check`. Reports go to `out`,
/// diagnostics to `err`; files land in config.output_dir.
int run_command(const RunConfig& config, const std::string& subcommand, std::ostream& out,
                std::ostream& err);

}  // namespace netpolicy
