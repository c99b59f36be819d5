#include "potent/output.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace potent {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 640.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 445.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  if (name == "svg") return OutputFormat::svg;
  throw std::invalid_argument("unknown output format: " + name);
}

std::string format_number(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

void validate_output_spec(const OutputSpec& spec) {
  if (spec.precision < 4 || spec.precision > 17) {
    throw std::invalid_argument("output precision must be in [4, 17]");
  }
}

void write_text_atomic(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(static_cast<long>(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string render_svg_lines(const std::string& x_label, const std::string& y_label,
                             const std::vector<SvgSeries>& series, bool log_x, bool log_y,
                             int precision) {
  auto tx = [log_x](double v) { return log_x ? std::log10(v) : v; };
  auto ty = [log_y](double v) { return log_y ? std::log10(v) : v; };
  auto usable = [&](double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) return false;
    if (log_x && !(x > 0.0)) return false;
    if (log_y && !(y > 0.0)) return false;
    return true;
  };

  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  bool first = true;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!usable(x, y)) continue;
      const double xv = tx(x), yv = ty(y);
      if (first) {
        xmin = xmax = xv;
        ymin = ymax = yv;
        first = false;
      } else {
        xmin = std::min(xmin, xv);
        xmax = std::max(xmax, xv);
        ymin = std::min(ymin, yv);
        ymax = std::max(ymax, yv);
      }
    }
  }
  if (xmax - xmin < 1e-300) xmax = xmin + 1.0;
  if (ymax - ymin < 1e-300) ymax = ymin + 1.0;

  auto px = [&](double v) { return kLeft + (tx(v) - xmin) / (xmax - xmin) * (kRight - kLeft); };
  auto py = [&](double v) { return kBottom - (ty(v) - ymin) / (ymax - ymin) * (kBottom - kTop); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\" "
         "font-family=\"sans-serif\" font-size=\"13\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
  // axes
  svg += "<line x1=\"" + fixed2(kLeft) + "\" y1=\"" + fixed2(kBottom) + "\" x2=\"" +
         fixed2(kRight) + "\" y2=\"" + fixed2(kBottom) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fixed2(kLeft) + "\" y1=\"" + fixed2(kTop) + "\" x2=\"" +
         fixed2(kLeft) + "\" y2=\"" + fixed2(kBottom) + "\" stroke=\"black\"/>\n";

  const int tick_precision = std::min(precision, 6);
  for (int i = 0; i <= 5; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 5.0;
    const double fy = ymin + (ymax - ymin) * i / 5.0;
    const double gx = kLeft + (kRight - kLeft) * i / 5.0;
    const double gy = kBottom - (kBottom - kTop) * i / 5.0;
    const double vx = log_x ? std::pow(10.0, fx) : fx;
    const double vy = log_y ? std::pow(10.0, fy) : fy;
    svg += "<line x1=\"" + fixed2(gx) + "\" y1=\"" + fixed2(kBottom) + "\" x2=\"" + fixed2(gx) +
           "\" y2=\"" + fixed2(kBottom + 5.0) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fixed2(gx) + "\" y=\"" + fixed2(kBottom + 20.0) +
           "\" text-anchor=\"middle\">" + format_number(vx, tick_precision) + "</text>\n";
    svg += "<line x1=\"" + fixed2(kLeft - 5.0) + "\" y1=\"" + fixed2(gy) + "\" x2=\"" +
           fixed2(kLeft) + "\" y2=\"" + fixed2(gy) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fixed2(kLeft - 8.0) + "\" y=\"" + fixed2(gy + 4.0) +
           "\" text-anchor=\"end\">" + format_number(vy, tick_precision) + "</text>\n";
  }
  svg += "<text x=\"" + fixed2(0.5 * (kLeft + kRight)) + "\" y=\"" + fixed2(kHeight - 15.0) +
         "\" text-anchor=\"middle\">" + x_label + (log_x ? " (log)" : "") + "</text>\n";
  svg += "<text x=\"18\" y=\"" + fixed2(0.5 * (kTop + kBottom)) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         fixed2(0.5 * (kTop + kBottom)) + ")\">" + y_label + (log_y ? " (log)" : "") +
         "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
    std::string pts;
    for (const auto& [x, y] : series[s].points) {
      if (!usable(x, y)) continue;
      if (!pts.empty()) pts += ' ';
      pts += fixed2(px(x)) + "," + fixed2(py(y));
    }
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    const double ly = kTop + 18.0 * static_cast<double>(s);
    svg += "<line x1=\"655\" y1=\"" + fixed2(ly) + "\" x2=\"675\" y2=\"" + fixed2(ly) +
           "\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"680\" y=\"" + fixed2(ly + 4.0) + "\">" + series[s].label + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace potent
