#include "netpolicy/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "netpolicy/errors.hpp"
#include "netpolicy/sweep.hpp"

namespace netpolicy {

ModelParams RunConfig::params(double b_value, double m_value) const {
  ModelParams p = ModelParams::baseline(b_value, m_value);
  p.a = a;
  p.c1 = c1;
  p.c2 = c2;
  p.phi1 = p.phi2 = phi;
  p.theta1 = p.theta2 = theta;
  return p;
}

std::vector<double> RunConfig::b_grid() const { return make_b_grid(b_min, b_max, b_step); }

NashOptions RunConfig::nash_options() const {
  NashOptions o;
  o.damping = damping;
  o.tolerance = tolerance;
  o.max_rounds = max_rounds;
  o.epsilon_grid_points = epsilon_grid;
  return o;
}

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ModelError(ErrorCode::kValidationError, message);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value,
                            const std::string& where, const char* expected) {
  std::string msg = where.empty() ? "" : where + ": ";
  msg += "key '" + std::string(key) + "' expects " + expected + ", got '" +
         std::string(value) + "'";
  throw ModelError(ErrorCode::kParseError, msg);
}

double to_double(std::string_view key, std::string_view value, const std::string& where) {
  const std::string text(trim(value));
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    bad_value(key, value, where, "a number");
  }
  return v;
}

template <typename Int>
Int to_int(std::string_view key, std::string_view value, const std::string& where) {
  const std::string_view text = trim(value);
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    bad_value(key, value, where, "an integer");
  }
  return v;
}

bool to_bool(std::string_view key, std::string_view value, const std::string& where) {
  const std::string_view text = trim(value);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  bad_value(key, value, where, "true or false");
}

std::vector<double> to_list(std::string_view key, std::string_view value,
                            const std::string& where) {
  std::vector<double> out;
  std::string_view rest = value;
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(to_double(key, rest.substr(0, comma), where));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

}  // namespace

void RunConfig::validate() const {
  require(!m_values.empty(), "m_values must not be empty");
  for (const double m : m_values) {
    require(m >= -1.0 && m <= 1.0, "m must lie in [-1, 1], got " + std::to_string(m));
  }
  require(b >= 0.0 && b < 1.0, "b must lie in [0, 1)");
  require(b_min >= 0.0 && b_max < 1.0 && b_min <= b_max, "need 0 <= b_min <= b_max < 1");
  require(b_step > 0.0, "b_step must be positive");
  require(a > 0.0, "a must be positive");
  require(c1 >= 0.0 && c2 >= 0.0, "costs must be non-negative");
  require(c1 < a && c2 < a, "costs must be below a");
  require(phi > 0.0 && theta > 0.0, "phi and theta must be positive");
  require(t > -1.0 && t < 1.0, "t must lie in (-1, 1)");
  require(foreign_subsidy < 1.0 && home_subsidy < 1.0, "subsidy rates must be below 1");
  require(damping > 0.0 && damping <= 1.0, "damping must lie in (0, 1]");
  require(tolerance > 0.0, "tolerance must be positive");
  require(max_rounds > 0, "max_rounds must be positive");
  require(epsilon_grid >= 2, "epsilon_grid needs at least 2 points");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "mode",     "m",         "m_values",    "b",           "b_min",
      "b_max",    "b_step",    "a",           "c1",          "c2",
      "phi",      "theta",     "t",           "foreign_subsidy", "home_subsidy",
      "output_dir", "emit_plots", "damping",  "tolerance",   "max_rounds",
      "epsilon_grid", "warm_start", "seed"};
  return keys;
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value,
                   const std::string& where) {
  auto num = [&] { return to_double(key, value, where); };
  if (key == "mode") {
    try {
      c.mode = parse_mode(trim(value));
    } catch (const ModelError&) {
      bad_value(key, value, where, "process, product or both");
    }
  } else if (key == "m" || key == "m_values") {
    c.m_values = to_list(key, value, where);
  } else if (key == "b") {
    c.b = num();
  } else if (key == "b_min") {
    c.b_min = num();
  } else if (key == "b_max") {
    c.b_max = num();
  } else if (key == "b_step") {
    c.b_step = num();
  } else if (key == "a") {
    c.a = num();
  } else if (key == "c1") {
    c.c1 = num();
  } else if (key == "c2") {
    c.c2 = num();
  } else if (key == "phi") {
    c.phi = num();
  } else if (key == "theta") {
    c.theta = num();
  } else if (key == "t") {
    c.t = num();
  } else if (key == "foreign_subsidy") {
    c.foreign_subsidy = num();
  } else if (key == "home_subsidy") {
    c.home_subsidy = num();
  } else if (key == "output_dir") {
    c.output_dir = std::string(trim(value));
  } else if (key == "emit_plots") {
    c.emit_plots = to_bool(key, value, where);
  } else if (key == "damping") {
    c.damping = num();
  } else if (key == "tolerance") {
    c.tolerance = num();
  } else if (key == "max_rounds") {
    c.max_rounds = to_int<int>(key, value, where);
  } else if (key == "epsilon_grid") {
    c.epsilon_grid = to_int<int>(key, value, where);
  } else if (key == "warm_start") {
    c.warm_start = to_bool(key, value, where);
  } else if (key == "seed") {
    c.seed = to_int<std::uint64_t>(key, value, where);
  } else {
    std::string msg = where.empty() ? "" : where + ": ";
    throw ModelError(ErrorCode::kParseError, msg + "unknown key '" + std::string(key) + "'");
  }
}

void apply_config_text(RunConfig& config, std::string_view text, const std::string& source) {
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ModelError(ErrorCode::kParseError,
                       where + ": expected key = value, got '" + std::string(line) + "'");
    }
    apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), where);
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError(ErrorCode::kParseError, "cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(config, buf.str(), path);
}

RunConfig resolve_config(const std::string& file_path,
                         const std::map<std::string, std::string>& flags) {
  RunConfig config;
  if (!file_path.empty()) apply_config_file(config, file_path);
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') {
    config.output_dir = env;
  }
  for (const auto& [key, value] : flags) apply_setting(config, key, value, "--" + key);
  config.validate();
  return config;
}

}  // namespace netpolicy
