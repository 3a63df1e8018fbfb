#include "netpolicy/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "netpolicy/charts.hpp"
#include "netpolicy/checks.hpp"
#include "netpolicy/csv.hpp"
#include "netpolicy/errors.hpp"
#include "netpolicy/policy.hpp"
#include "netpolicy/stage2.hpp"
#include "netpolicy/sweep.hpp"

namespace netpolicy {

namespace {

std::string show(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void print_policy(std::ostream& out, const PolicyVector& p) {
  out << "t = " << show(p.t) << '\n'
      << "s1 = " << show(p.s1) << '\n'
      << "s2 = " << show(p.s2) << '\n'
      << "sigma1 = " << show(p.sigma1) << '\n'
      << "sigma2 = " << show(p.sigma2) << '\n';
}

int cmd_stage2(const RunConfig& cfg, std::ostream& out) {
  const ModelParams params = cfg.params(cfg.b, cfg.m_values.front());
  const PolicyVector policy =
      PolicyVector::from_instruments(cfg.mode, cfg.t, cfg.foreign_subsidy, cfg.home_subsidy);
  policy.validate();
  const Stage2Equilibrium eq = solve_stage2(params, policy);
  const MarketState& st = eq.state;
  const WelfareBreakdown& w = eq.welfare;
  out << "mode = " << to_string(cfg.mode) << '\n'
      << "b = " << show(cfg.b) << '\n'
      << "m = " << show(params.m) << '\n';
  print_policy(out, policy);
  const std::pair<const char*, double> fields[] = {
      {"q1", st.q1}, {"q2", st.q2},   {"k1", st.k1},         {"k2", st.k2},
      {"r1", st.r1}, {"r2", st.r2},   {"p1", w.p1},          {"p2", w.p2},
      {"pi1", w.pi1}, {"pi2", w.pi2}, {"cs", w.cs},          {"taxrev", w.taxrev},
      {"W1", w.W1},  {"W2", w.W2},    {"delta", eq.feasibility.delta}};
  for (const auto& [name, v] : fields) out << name << " = " << show(v) << '\n';
  out << "interior = " << (eq.feasibility.interior ? "true" : "false") << '\n';
  if (!eq.feasibility.interior) out << "violated = " << eq.feasibility.violated << '\n';
  return kExitOk;
}

int cmd_nash(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelParams params = cfg.params(cfg.b, cfg.m_values.front());
  const NashResult r = solve_nash_report(params, cfg.mode, cfg.nash_options());
  out << "mode = " << to_string(cfg.mode) << '\n'
      << "b = " << show(cfg.b) << '\n'
      << "m = " << show(params.m) << '\n';
  print_policy(out, r.policy);
  const std::pair<const char*, double> fields[] = {
      {"q1", r.eq.state.q1},         {"q2", r.eq.state.q2},
      {"W1_nash", r.eq.welfare.W1},  {"W2_nash", r.eq.welfare.W2},
      {"W1_lf", r.lf.welfare.W1},    {"W2_lf", r.lf.welfare.W2},
      {"dW1", r.dW1},                {"dW2", r.dW2},
      {"dW", r.dW},                  {"epsilon_check", r.epsilon_check}};
  for (const auto& [name, v] : fields) out << name << " = " << show(v) << '\n';
  out << "iterations = " << r.iterations << '\n'
      << "converged = " << (r.converged ? "true" : "false") << '\n'
      << "interior = " << (r.interior ? "true" : "false") << '\n';
  if (!r.binding_constraint.empty()) {
    out << "binding_constraint = " << r.binding_constraint << '\n';
  }
  if (r.failure) {
    err << "nash: " << r.failure_message << '\n';
    return kExitSolverFailure;
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.mode == RndMode::kBoth) {
    throw ModelError(ErrorCode::kValidationError, "sweep needs mode process or product");
  }
  SweepOptions options;
  options.nash = cfg.nash_options();
  options.warm_start = cfg.warm_start;
  const ModelParams tmpl = cfg.params(0.0, cfg.m_values.front());
  const std::vector<SweepRow> rows =
      sweep_b(tmpl, cfg.b_grid(), cfg.m_values, cfg.mode, options);

  std::filesystem::create_directories(cfg.output_dir);
  const std::string stem = "sweep_" + std::string(to_string(cfg.mode));
  const std::string csv_path =
      (std::filesystem::path(cfg.output_dir) / (stem + ".csv")).string();
  {
    std::ofstream f(csv_path);
    write_sweep_csv(f, rows);
    if (!f) throw std::runtime_error("cannot write " + csv_path);
  }
  out << "wrote " << csv_path << " (" << rows.size() << " rows)\n";

  for (const double m : cfg.m_values) {
    std::vector<SweepRow> sub;
    for (const SweepRow& r : rows) {
      if (r.m == m) sub.push_back(r);
    }
    int feasible = 0;
    double last_b = -1.0;
    std::string binding;
    for (const SweepRow& r : sub) {
      if (r.feasible) {
        ++feasible;
        last_b = r.b;
      } else if (binding.empty()) {
        binding = r.binding_constraint;
      }
    }
    out << "m = " << show(m) << ": " << feasible << " feasible rows";
    if (feasible > 0) out << ", last feasible b = " << show(last_b);
    if (!binding.empty()) out << ", first binding constraint " << binding;
    out << '\n';
    for (const char* column : {"dW", "dW1", "t_star"}) {
      for (const CrossingReport& c : detect_crossings(sub, column, tmpl, options)) {
        out << "  " << column << " crosses " << (c.direction > 0 ? "up" : "down")
            << " at b = " << show(c.b_cross) << " (bracket " << show(c.b_lo) << ".."
            << show(c.b_hi) << ")\n";
      }
    }
  }

  if (cfg.emit_plots) {
    const ChartOutput charts = render_charts(rows, cfg.output_dir, stem);
    for (const std::string& w : charts.warnings) err << "warning: " << w << '\n';
    for (const std::string& f : charts.files) out << "wrote " << f << '\n';
  }
  return kExitOk;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const CheckReport report = run_check_suite(cfg.seed);
  for (const CheckResult& r : report.results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << " worst=" << show(r.worst)
        << " tol=" << show(r.tolerance) << " n=" << r.points;
    if (!r.detail.empty()) out << " (" << r.detail << ")";
    out << '\n';
  }
  out << "checks passed: " << report.passed() << ", failed: " << report.failed() << '\n';
  return report.failed() == 0 ? kExitOk : kExitSuiteFailure;
}

}  // namespace

int run_command(const RunConfig& config, const std::string& subcommand, std::ostream& out,
                std::ostream& err) {
  try {
    config.validate();
    if (subcommand == "stage2") return cmd_stage2(config, out);
    if (subcommand == "nash") return cmd_nash(config, out, err);
    if (subcommand == "sweep") return cmd_sweep(config, out, err);
    if (subcommand == "check") return cmd_check(config, out);
    err << "unknown subcommand '" << subcommand << "'\n";
    return kExitValidation;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << '\n';
    const bool input = e.code() == ErrorCode::kParseError ||
                       e.code() == ErrorCode::kValidationError;
    return input ? kExitValidation : kExitSolverFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolverFailure;
  }
}

}  // namespace netpolicy
