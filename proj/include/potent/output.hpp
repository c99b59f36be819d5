#ifndef POTENT_OUTPUT_HPP
#define POTENT_OUTPUT_HPP

#include <string>
#include <utility>
#include <vector>

namespace potent {

enum class OutputFormat { csv, json, svg };

/// Where and how a command writes. path "-" means stdout. precision is the
/// number of significant digits used for CSV/SVG text rendering, in [4, 17].
struct OutputSpec {
  OutputFormat format{OutputFormat::csv};
  std::string path{"-"};
  int precision{10};
};

OutputFormat parse_format(const std::string& name);

/// %.Ng rendering; "inf"/"nan" for non-finite values. Deterministic.
std::string format_number(double v, int precision);

/// Writes via a temp file in the same directory plus rename, so readers
/// never observe a partial file. path "-" streams to stdout instead.
void write_text_atomic(const std::string& path, const std::string& content);

void validate_output_spec(const OutputSpec& spec);

struct SvgSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

/// Self-contained SVG line plot, 800x500 viewBox, one polyline per series.
/// Axes and ticks are drawn with line/text elements only. Log axes drop
/// nonpositive points.
std::string render_svg_lines(const std::string& x_label, const std::string& y_label,
                             const std::vector<SvgSeries>& series, bool log_x, bool log_y,
                             int precision);

}  // namespace potent

#endif  // POTENT_OUTPUT_HPP
