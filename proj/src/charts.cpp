#include "netpolicy/charts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <stdexcept>

namespace netpolicy {

namespace {

constexpr double kPanelW = 320.0;
constexpr double kPanelH = 280.0;
constexpr double kLeft = 58.0;
constexpr double kRight = 12.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 40.0;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                               "#8c564b"};
const char* const kDashes[] = {"", "6,3", "2,2", "8,3,2,3", "1,3", "10,4"};

using Getter = std::function<double(const SweepRow&)>;

struct Panel {
  std::string title;
  Getter value;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string esc(const std::string& s) {
  std::string out;
  for (const char ch : s) {
    if (ch == '<') out += "&lt;";
    else if (ch == '>') out += "&gt;";
    else if (ch == '&') out += "&amp;";
    else out += ch;
  }
  return out;
}

// Roughly five round tick values covering [lo, hi].
std::vector<double> ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (const double k : {1.0, 2.0, 5.0, 10.0}) {
    step = k * mag;
    if (span / step <= 6.0) break;
  }
  std::vector<double> out;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step) {
    out.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
  }
  return out;
}

void draw_panel(std::ostringstream& svg, const Panel& panel, double x0,
                const std::map<double, std::vector<const SweepRow*>>& series,
                double b_lo, double b_hi) {
  double y_lo = HUGE_VAL;
  double y_hi = -HUGE_VAL;
  for (const auto& [m, rows] : series) {
    for (const SweepRow* r : rows) {
      y_lo = std::min(y_lo, panel.value(*r));
      y_hi = std::max(y_hi, panel.value(*r));
    }
  }
  y_lo = std::min(y_lo, 0.0);
  y_hi = std::max(y_hi, 0.0);
  if (y_hi - y_lo < 1e-12) {
    y_lo -= 1.0;
    y_hi += 1.0;
  }
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;

  const double w = kPanelW - kLeft - kRight;
  const double h = kPanelH - kTop - kBottom;
  auto sx = [&](double b) { return x0 + kLeft + (b - b_lo) / (b_hi - b_lo) * w; };
  auto sy = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * h; };

  svg << "<text x=\"" << x0 + kLeft + w / 2 << "\" y=\"18\" text-anchor=\"middle\" "
      << "font-size=\"13\">" << esc(panel.title) << "</text>\n";
  svg << "<rect x=\"" << x0 + kLeft << "\" y=\"" << kTop << "\" width=\"" << w
      << "\" height=\"" << h << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (const double y : ticks(y_lo, y_hi)) {
    svg << "<line x1=\"" << x0 + kLeft - 4 << "\" x2=\"" << x0 + kLeft << "\" y1=\"" << sy(y)
        << "\" y2=\"" << sy(y) << "\" stroke=\"#444\"/>"
        << "<text x=\"" << x0 + kLeft - 6 << "\" y=\"" << sy(y) + 4
        << "\" text-anchor=\"end\" font-size=\"10\">" << num(y) << "</text>\n";
  }
  for (const double b : ticks(b_lo, b_hi)) {
    svg << "<line x1=\"" << sx(b) << "\" x2=\"" << sx(b) << "\" y1=\"" << kTop + h
        << "\" y2=\"" << kTop + h + 4 << "\" stroke=\"#444\"/>"
        << "<text x=\"" << sx(b) << "\" y=\"" << kTop + h + 16
        << "\" text-anchor=\"middle\" font-size=\"10\">" << num(b) << "</text>\n";
  }
  svg << "<text x=\"" << x0 + kLeft + w / 2 << "\" y=\"" << kPanelH - 6
      << "\" text-anchor=\"middle\" font-size=\"11\">b</text>\n";
  svg << "<line x1=\"" << x0 + kLeft << "\" x2=\"" << x0 + kLeft + w << "\" y1=\"" << sy(0)
      << "\" y2=\"" << sy(0) << "\" stroke=\"#999\" stroke-dasharray=\"3,3\"/>\n";

  int k = 0;
  for (const auto& [m, rows] : series) {
    svg << "<polyline fill=\"none\" stroke-width=\"1.6\" stroke=\"" << kColors[k % 6] << "\"";
    if (*kDashes[k % 6] != '\0') svg << " stroke-dasharray=\"" << kDashes[k % 6] << "\"";
    svg << " points=\"";
    for (const SweepRow* r : rows) svg << sx(r->b) << ',' << sy(panel.value(*r)) << ' ';
    svg << "\"/>\n";
    ++k;
  }
}

std::string chart(const std::vector<SweepRow>& rows, const std::vector<Panel>& panels,
                  const std::string& heading) {
  // Feasible rows grouped by m, in b order.
  std::map<double, std::vector<const SweepRow*>> series;
  double b_lo = HUGE_VAL;
  double b_hi = -HUGE_VAL;
  for (const SweepRow& r : rows) {
    if (!r.feasible) continue;
    series[r.m].push_back(&r);
    b_lo = std::min(b_lo, r.b);
    b_hi = std::max(b_hi, r.b);
  }
  const double width = kPanelW * panels.size();
  const double height = kPanelH + 30.0;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" font-family=\"sans-serif\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (series.empty()) {
    svg << "<text x=\"" << width / 2 << "\" y=\"" << height / 2
        << "\" text-anchor=\"middle\" font-size=\"16\">" << esc(heading)
        << ": no feasible rows to plot</text>\n</svg>\n";
    return svg.str();
  }
  if (b_hi - b_lo < 1e-12) {
    b_lo -= 0.01;
    b_hi += 0.01;
  }
  for (std::size_t i = 0; i < panels.size(); ++i) {
    draw_panel(svg, panels[i], kPanelW * i, series, b_lo, b_hi);
  }
  // Legend along the bottom.
  int k = 0;
  double x = kLeft;
  for (const auto& [m, rows] : series) {
    const double y = kPanelH + 15.0;
    svg << "<line x1=\"" << x << "\" x2=\"" << x + 28 << "\" y1=\"" << y << "\" y2=\"" << y
        << "\" stroke-width=\"1.6\" stroke=\"" << kColors[k % 6] << "\"";
    if (*kDashes[k % 6] != '\0') svg << " stroke-dasharray=\"" << kDashes[k % 6] << "\"";
    svg << "/><text x=\"" << x + 34 << "\" y=\"" << y + 4 << "\" font-size=\"11\">m = "
        << num(m) << "</text>\n";
    x += 110;
    ++k;
  }
  svg << "<text x=\"" << width - 8 << "\" y=\"" << kPanelH + 19
      << "\" text-anchor=\"end\" font-size=\"11\">" << esc(heading) << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

std::string mode_heading(const std::vector<SweepRow>& rows) {
  return rows.empty() ? std::string("sweep")
                      : std::string(to_string(rows.front().mode)) + " R&D";
}

}  // namespace

std::string welfare_chart_svg(const std::vector<SweepRow>& rows) {
  return chart(rows,
               {{"foreign: W1 Nash - LF", [](const SweepRow& r) { return r.dW1; }},
                {"home: W2 Nash - LF", [](const SweepRow& r) { return r.dW2; }},
                {"joint: dW1 + dW2", [](const SweepRow& r) { return r.dW; }}},
               mode_heading(rows));
}

std::string policy_chart_svg(const std::vector<SweepRow>& rows) {
  return chart(rows,
               {{"tax t*", [](const SweepRow& r) { return r.t_star; }},
                {"foreign subsidy", [](const SweepRow& r) { return r.foreign_subsidy_star(); }},
                {"home subsidy", [](const SweepRow& r) { return r.home_subsidy_star(); }}},
               mode_heading(rows));
}

ChartOutput render_charts(const std::vector<SweepRow>& rows, const std::string& dir,
                          const std::string& stem) {
  ChartOutput out;
  const bool any = std::any_of(rows.begin(), rows.end(),
                               [](const SweepRow& r) { return r.feasible; });
  if (!any) out.warnings.push_back("no feasible rows; charts are empty placeholders");
  std::filesystem::create_directories(dir);
  const std::pair<std::string, std::string> files[] = {
      {stem + "_welfare.svg", welfare_chart_svg(rows)},
      {stem + "_policy.svg", policy_chart_svg(rows)},
  };
  for (const auto& [name, body] : files) {
    const std::string path = (std::filesystem::path(dir) / name).string();
    std::ofstream f(path);
    if (!(f << body)) {
      throw std::runtime_error("cannot write " + path);
    }
    out.files.push_back(path);
  }
  return out;
}

}  // namespace netpolicy
