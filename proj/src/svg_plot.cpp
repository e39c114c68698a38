#include "hugperch/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "hugperch/error.hpp"

namespace hugperch {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  if (std::abs(v) < 1e-12) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
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

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  void finish() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12) {
      const double pad = std::abs(lo) > 0.0 ? 0.05 * std::abs(lo) : 1.0;
      lo -= pad;
      hi += pad;
    }
  }
};

// Round step (1, 2, 5 x 10^k) giving about five intervals.
double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  return (r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0) * mag;
}

void header(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
     << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
     << "</text>\n";
}

void y_axis(std::ostringstream& os, const Range& y, const std::string& label) {
  const double plot_h = kHeight - kTop - kBottom;
  const double step = nice_step(y.hi - y.lo);
  for (double v = std::ceil(y.lo / step) * step; v <= y.hi + 1e-9 * step; v += step) {
    const double py = kTop + plot_h * (1.0 - (v - y.lo) / (y.hi - y.lo));
    os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(py) << "\" x2=\"" << num(kWidth - kRight) << "\" y2=\""
       << num(py) << "\" stroke=\"#dddddd\"/>\n";
    os << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py + 4) << "\" text-anchor=\"end\">" << tick_label(v)
       << "</text>\n";
  }
  os << "<text x=\"16\" y=\"" << num(kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << num(kTop + plot_h / 2) << ")\">" << escape(label) << "</text>\n";
}

void frame(std::ostringstream& os) {
  os << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(kWidth - kLeft - kRight)
     << "\" height=\"" << num(kHeight - kTop - kBottom) << "\" fill=\"none\" stroke=\"black\"/>\n";
}

void legend(std::ostringstream& os, const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    const double y = kTop + 10 + 18.0 * static_cast<double>(i);
    const double x = kWidth - kRight + 12;
    os << "<rect x=\"" << num(x) << "\" y=\"" << num(y - 8) << "\" width=\"12\" height=\"10\" fill=\""
       << kPalette[i % 10] << "\"/>\n";
    os << "<text x=\"" << num(x + 18) << "\" y=\"" << num(y + 1) << "\">" << escape(names[i]) << "</text>\n";
  }
}

}  // namespace

std::string render_svg(const LinePlot& plot) {
  Range x, y;
  for (const auto& s : plot.series) {
    if (s.x.size() != s.y.size()) throw Error(ErrorKind::DomainError, "series '" + s.name + "' has mismatched x/y");
    for (double v : s.x) x.add(v);
    for (double v : s.y) y.add(v);
  }
  x.finish();
  y.finish();
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + plot_w * (v - x.lo) / (x.hi - x.lo); };
  auto py = [&](double v) { return kTop + plot_h * (1.0 - (v - y.lo) / (y.hi - y.lo)); };

  std::ostringstream os;
  header(os, plot.title);
  y_axis(os, y, plot.y_label);
  const double step = nice_step(x.hi - x.lo);
  for (double v = std::ceil(x.lo / step) * step; v <= x.hi + 1e-9 * step; v += step) {
    os << "<text x=\"" << num(px(v)) << "\" y=\"" << num(kHeight - kBottom + 16) << "\" text-anchor=\"middle\">"
       << tick_label(v) << "</text>\n";
  }
  os << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 14) << "\" text-anchor=\"middle\">"
     << escape(plot.x_label) << "</text>\n";
  frame(os);

  std::vector<std::string> names;
  for (std::size_t i = 0; i < plot.series.size(); ++i) {
    const auto& s = plot.series[i];
    const char* color = kPalette[i % 10];
    names.push_back(s.name);
    if (plot.markers) {
      for (std::size_t k = 0; k < s.x.size(); ++k) {
        if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
        os << "<circle cx=\"" << num(px(s.x[k])) << "\" cy=\"" << num(py(s.y[k])) << "\" r=\"3\" fill=\"" << color
           << "\"/>\n";
      }
      continue;
    }
    // Non-finite values break the line into pieces.
    std::string points;
    auto flush = [&]() {
      if (!points.empty()) {
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << points
           << "\"/>\n";
      }
      points.clear();
    };
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += num(px(s.x[k])) + "," + num(py(s.y[k]));
    }
    flush();
  }
  legend(os, names);
  os << "</svg>\n";
  return os.str();
}

std::string render_svg(const BarChart& chart) {
  Range y;
  y.add(0.0);
  for (const auto& g : chart.groups) {
    if (g.values.size() != chart.categories.size()) {
      throw Error(ErrorKind::DomainError, "bar group '" + g.name + "' does not match the categories");
    }
    for (double v : g.values) y.add(v);
  }
  y.finish();
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto py = [&](double v) { return kTop + plot_h * (1.0 - (v - y.lo) / (y.hi - y.lo)); };

  std::ostringstream os;
  header(os, chart.title);
  y_axis(os, y, chart.y_label);
  const std::size_t nc = std::max<std::size_t>(chart.categories.size(), 1);
  const std::size_t ng = std::max<std::size_t>(chart.groups.size(), 1);
  const double slot = plot_w / static_cast<double>(nc);
  const double bar = 0.8 * slot / static_cast<double>(ng);
  for (std::size_t c = 0; c < chart.categories.size(); ++c) {
    const double x0 = kLeft + slot * static_cast<double>(c) + 0.1 * slot;
    for (std::size_t g = 0; g < chart.groups.size(); ++g) {
      const double v = chart.groups[g].values[c];
      if (!std::isfinite(v)) continue;
      const double top = py(std::max(v, 0.0));
      const double base = py(std::min(v, 0.0));
      os << "<rect x=\"" << num(x0 + bar * static_cast<double>(g)) << "\" y=\"" << num(top) << "\" width=\""
         << num(bar) << "\" height=\"" << num(base - top) << "\" fill=\"" << kPalette[g % 10] << "\"/>\n";
    }
    os << "<text x=\"" << num(kLeft + slot * (static_cast<double>(c) + 0.5)) << "\" y=\""
       << num(kHeight - kBottom + 16) << "\" text-anchor=\"middle\">" << escape(chart.categories[c]) << "</text>\n";
  }
  frame(os);
  std::vector<std::string> names;
  for (const auto& g : chart.groups) names.push_back(g.name);
  legend(os, names);
  os << "</svg>\n";
  return os.str();
}

}  // namespace hugperch
