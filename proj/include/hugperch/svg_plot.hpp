#pragma once

#include <string>
#include <vector>

namespace hugperch {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  bool markers = false;  // draw points instead of lines
};

struct BarGroup {
  std::string name;
  std::vector<double> values;  // one per category
};

struct BarChart {
  std::string title;
  std::string y_label;
  std::vector<std::string> categories;
  std::vector<BarGroup> groups;
};

/// Standalone SVG documents; byte-identical for identical input.
std::string render_svg(const LinePlot& plot);
std::string render_svg(const BarChart& chart);

}  // namespace hugperch
