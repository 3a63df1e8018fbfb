#include "netpolicy/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "netpolicy/errors.hpp"

namespace netpolicy {

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    const double values[] = {r.t_star, r.s1_star, r.s2_star, r.sigma1_star, r.sigma2_star,
                             r.q1,     r.q2,      r.W1_nash, r.W2_nash,     r.W1_lf,
                             r.W2_lf,  r.dW1,     r.dW2,     r.dW};
    out << format_double(r.b) << ',' << format_double(r.m) << ',' << to_string(r.mode);
    for (const double v : values) out << ',' << format_double(v);
    out << ',' << (r.feasible ? "true" : "false") << ',' << r.binding_constraint << '\n';
  }
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  write_sweep_csv(out, rows);
  return out.str();
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  while (true) {
    const auto comma = line.find(',');
    fields.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line = line.substr(comma + 1);
  }
  return fields;
}

}  // namespace

std::vector<SweepRow> parse_sweep_csv(std::string_view text) {
  std::vector<SweepRow> rows;
  int line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const std::string where = "csv line " + std::to_string(line_no);
    if (!header_seen) {
      if (line != kSweepCsvHeader) {
        throw ModelError(ErrorCode::kParseError, where + ": unexpected header");
      }
      header_seen = true;
      continue;
    }
    const auto f = split(line);
    if (f.size() != 19) {
      throw ModelError(ErrorCode::kParseError,
                       where + ": expected 19 fields, got " + std::to_string(f.size()));
    }
    auto num = [&](std::size_t i) {
      const std::string s(f[i]);
      char* end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      if (s.empty() || end != s.c_str() + s.size()) {
        throw ModelError(ErrorCode::kParseError, where + ": bad number '" + s + "'");
      }
      return v;
    };
    SweepRow r;
    r.b = num(0);
    r.m = num(1);
    try {
      r.mode = parse_mode(f[2]);
    } catch (const ModelError&) {
      throw ModelError(ErrorCode::kParseError, where + ": bad mode");
    }
    double* targets[] = {&r.t_star, &r.s1_star, &r.s2_star, &r.sigma1_star, &r.sigma2_star,
                         &r.q1,     &r.q2,      &r.W1_nash, &r.W2_nash,     &r.W1_lf,
                         &r.W2_lf,  &r.dW1,     &r.dW2,     &r.dW};
    for (std::size_t i = 0; i < std::size(targets); ++i) *targets[i] = num(3 + i);
    if (f[17] != "true" && f[17] != "false") {
      throw ModelError(ErrorCode::kParseError, where + ": feasible must be true or false");
    }
    r.feasible = f[17] == "true";
    r.binding_constraint = std::string(f[18]);
    rows.push_back(std::move(r));
  }
  if (!header_seen) throw ModelError(ErrorCode::kParseError, "csv: missing header");
  return rows;
}

}  // namespace netpolicy
