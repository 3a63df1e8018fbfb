#pragma once

// Run configuration: defaults, flat key=value files, and flag overrides.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "netpolicy/model.hpp"
#include "netpolicy/policy.hpp"

namespace netpolicy {

struct RunConfig {
  RndMode mode = RndMode::kProcessOnly;
  std::vector<double> m_values{0.05, 0.25};
  double b = 0.0;  // single point for `stage2` and `nash`
  double b_min = 0.0;
  double b_max = 0.6;
  double b_step = 0.01;

  double a = 1.0;
  double c1 = 0.7;
  double c2 = 0.7;
  double phi = 2.5;
  double theta = 2.5;

  // Policy evaluated by `stage2`.
  double t = 0.0;
  double foreign_subsidy = 0.0;
  double home_subsidy = 0.0;

  std::string output_dir = "out";
  bool emit_plots = false;

  double damping = 0.5;
  double tolerance = 1e-8;
  int max_rounds = 500;
  int epsilon_grid = 201;
  bool warm_start = true;

  std::uint64_t seed = 42;

  /// Parameters at the configured b and m.
  ModelParams params(double b_value, double m_value) const;
  std::vector<double> b_grid() const;
  NashOptions nash_options() const;

  /// Throws ModelError(kValidationError).
  void validate() const;
};

/// All keys accepted in files and as --key flags.
const std::vector<std::string>& config_keys();

/// Sets one key from its text value. Throws kParseError for unknown keys or
/// malformed values; `where` is prefixed to the message.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value,
                   const std::string& where = {});

/// Applies every `key = value` line; `#` starts a comment. Throws
/// kParseError naming the line.
void apply_config_text(RunConfig& config, std::string_view text,
                       const std::string& source = "config");
void apply_config_file(RunConfig& config, const std::string& path);

/// Environment variable that overrides the output directory from the file.
inline constexpr const char* kOutputDirEnv = "NETPOLICY_OUTPUT_DIR";

/// Defaults, then the optional file, then the environment, then flags.
/// Validates the result.
RunConfig resolve_config(const std::string& file_path,
                         const std::map<std::string, std::string>& flags);

}  // namespace netpolicy
