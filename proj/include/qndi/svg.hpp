#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qndi::svg {

struct Series {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;
};

struct PlotOptions {
  int width = 720;
  int height = 420;
  bool log_x = false;
  std::string x_label;
  std::string y_label;
  std::string title;
};

/// Self-contained SVG line chart (no external process, no dependencies).
/// Points with non-finite coordinates are skipped, breaking the polyline.
std::string render_line_chart(const std::vector<Series>& series,
                              const PlotOptions& options);

}  // namespace qndi::svg
