#include "argus/tornado_render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "argus/numeric_format.hpp"
#include "argus/report_document.hpp"

namespace argus {

namespace {

std::string num(double x) { return shortest(round_significant(x, kReportDigits)); }

int column(double x) {
  return static_cast<int>(std::lround(std::clamp(x, 0.0, 1.0) * kTornadoColumns));
}

std::string xml_escaped(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_tornado_text(const TornadoReport& report, std::size_t top_k) {
  const std::size_t n = std::min(top_k, report.entries.size());
  std::size_t label_width = 0;
  for (std::size_t i = 0; i < n; ++i) {
    label_width = std::max(label_width, report.entries[i].variable.label.size());
  }
  std::string out = "target " + report.target + " baseline " +
                    num(report.baseline_target) + "\n";
  const int base = column(report.baseline_target);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = report.entries[i];
    std::string bar(kTornadoColumns + 1, '.');
    for (int c = column(e.low()); c <= column(e.high()); ++c) bar[c] = '=';
    bar[base] = '|';
    std::string label = e.variable.label;
    label.resize(label_width, ' ');
    out += label + " [" + num(e.value_at_min) + ", " + num(e.value_at_max) +
           "] " + bar + " width " + num(e.width) + "\n";
  }
  return out;
}

std::string render_tornado_svg(const TornadoReport& report, std::size_t top_k) {
  const std::size_t n = std::min(top_k, report.entries.size());
  constexpr int kLeft = 140, kPlot = 400, kRow = 28, kTop = 40;
  const int height = kTop + static_cast<int>(n) * kRow + 40;
  const int width = kLeft + kPlot + 40;
  auto x_of = [&](double g) {
    return fixed(kLeft + std::clamp(g, 0.0, 1.0) * kPlot, 1);
  };

  std::string out =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
      std::to_string(width) + "\" height=\"" + std::to_string(height) +
      "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "  <text x=\"" + std::to_string(kLeft) + "\" y=\"20\">Tornado on " +
         xml_escaped(report.target) + " (baseline " +
         num(report.baseline_target) + ")</text>\n";
  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = report.entries[i];
    const int y = kTop + static_cast<int>(i) * kRow;
    out += "  <text x=\"" + std::to_string(kLeft - 8) + "\" y=\"" +
           std::to_string(y + 17) + "\" text-anchor=\"end\">" +
           xml_escaped(e.variable.label) + "</text>\n";
    // Left of baseline: loss; right: gain.
    const double lo = e.low(), hi = e.high(), b = report.baseline_target;
    if (lo < b) {
      out += "  <rect x=\"" + x_of(lo) + "\" y=\"" + std::to_string(y + 4) +
             "\" width=\"" + fixed((std::min(hi, b) - lo) * kPlot, 1) +
             "\" height=\"18\" fill=\"#d9534f\"/>\n";
    }
    if (hi > b) {
      const double from = std::max(lo, b);
      out += "  <rect x=\"" + x_of(from) + "\" y=\"" + std::to_string(y + 4) +
             "\" width=\"" + fixed((hi - from) * kPlot, 1) +
             "\" height=\"18\" fill=\"#5cb85c\"/>\n";
    }
    out += "  <text x=\"" + std::to_string(kLeft + kPlot + 4) + "\" y=\"" +
           std::to_string(y + 17) + "\">[" + num(e.value_at_min) + ", " +
           num(e.value_at_max) + "]</text>\n";
  }
  const int axis_y = kTop + static_cast<int>(n) * kRow + 6;
  out += "  <line x1=\"" + x_of(0) + "\" y1=\"" + std::to_string(axis_y) +
         "\" x2=\"" + x_of(1) + "\" y2=\"" + std::to_string(axis_y) +
         "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double g = t / 4.0;
    out += "  <text x=\"" + x_of(g) + "\" y=\"" + std::to_string(axis_y + 16) +
           "\" text-anchor=\"middle\">" + num(g) + "</text>\n";
  }
  out += "  <line x1=\"" + x_of(report.baseline_target) + "\" y1=\"" +
         std::to_string(kTop) + "\" x2=\"" + x_of(report.baseline_target) +
         "\" y2=\"" + std::to_string(axis_y) +
         "\" stroke=\"black\" stroke-dasharray=\"4 2\"/>\n";
  return out + "</svg>\n";
}

}  // namespace argus
