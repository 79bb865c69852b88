#include "qndi/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace qndi::svg {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string render_line_chart(const std::vector<Series>& series,
                              const PlotOptions& opt) {
  const double ml = 64, mr = 16, mt = opt.title.empty() ? 16 : 36, mb = 48;
  const double pw = opt.width - ml - mr;
  const double ph = opt.height - mt - mb;

  auto tx = [&](double x) { return opt.log_x ? std::log10(x) : x; };

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (opt.log_x && x <= 0.0) continue;
      xmin = std::min(xmin, tx(x));
      xmax = std::max(xmax, tx(x));
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!(xmin < xmax)) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (!(ymin < ymax)) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  auto px = [&](double x) { return ml + (tx(x) - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return mt + (ymax - y) / (ymax - ymin) * ph; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width
      << "\" height=\"" << opt.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opt.title.empty())
    out << "<text x=\"" << opt.width / 2.0
        << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << opt.title
        << "</text>\n";

  // frame + ticks
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#444\"/>\n";
  const int nticks = 5;
  for (int i = 0; i <= nticks; ++i) {
    const double fx = xmin + (xmax - xmin) * i / nticks;
    const double gx = ml + pw * i / nticks;
    const double label = opt.log_x ? std::pow(10.0, fx) : fx;
    out << "<line x1=\"" << gx << "\" y1=\"" << mt + ph << "\" x2=\"" << gx
        << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"#444\"/>\n";
    out << "<text x=\"" << gx << "\" y=\"" << mt + ph + 18
        << "\" text-anchor=\"middle\" font-size=\"10\">" << fmt(label)
        << "</text>\n";
    const double fy = ymin + (ymax - ymin) * i / nticks;
    const double gy = mt + ph - ph * i / nticks;
    out << "<line x1=\"" << ml - 5 << "\" y1=\"" << gy << "\" x2=\"" << ml
        << "\" y2=\"" << gy << "\" stroke=\"#444\"/>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << gy + 3
        << "\" text-anchor=\"end\" font-size=\"10\">" << fmt(fy)
        << "</text>\n";
  }
  if (!opt.x_label.empty())
    out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << opt.height - 10
        << "\" text-anchor=\"middle\" font-size=\"12\">" << opt.x_label
        << "</text>\n";
  if (!opt.y_label.empty())
    out << "<text x=\"14\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 "
           "14 "
        << mt + ph / 2 << ")\">" << opt.y_label << "</text>\n";

  int legend_y = static_cast<int>(mt) + 14;
  for (const auto& s : series) {
    std::ostringstream pts;
    bool open = false;
    auto flush = [&]() {
      if (open)
        out << "<polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
      pts.str("");
      open = false;
    };
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y) || (opt.log_x && x <= 0.0)) {
        flush();
        continue;
      }
      pts << fmt(px(x)) << "," << fmt(py(y)) << " ";
      open = true;
    }
    flush();
    out << "<line x1=\"" << ml + pw - 130 << "\" y1=\"" << legend_y
        << "\" x2=\"" << ml + pw - 110 << "\" y2=\"" << legend_y
        << "\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << ml + pw - 104 << "\" y=\"" << legend_y + 3
        << "\" font-size=\"11\">" << s.label << "</text>\n";
    legend_y += 16;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace qndi::svg
