#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace wpb {

// Minimal static SVG line plots: fixed geometry, no timestamps, output is
// a pure function of the data.
struct SvgSeries {
  std::string label;
  std::vector<double> ys;
  std::string color = "#1f77b4";
  bool dashed = false;
};

inline std::string render_svg_plot(const std::string& title,
                                   const std::vector<double>& xs,
                                   const std::vector<SvgSeries>& series) {
  const double width = 900.0, height = 500.0;
  const double ml = 70.0, mr = 20.0, mt = 40.0, mb = 50.0;
  const double pw = width - ml - mr, ph = height - mt - mb;

  double x_lo = xs.empty() ? 0.0 : xs.front();
  double x_hi = xs.empty() ? 1.0 : xs.back();
  double y_lo = 1e300, y_hi = -1e300;
  for (const auto& s : series) {
    for (double y : s.ys) {
      if (!std::isfinite(y)) continue;
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (y_lo > y_hi) {
    y_lo = 0.0;
    y_hi = 1.0;
  }
  if (y_hi - y_lo < 1e-12) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;

  const auto px = [&](double x) {
    return ml + (x - x_lo) / (x_hi - x_lo) * pw;
  };
  const auto py = [&](double y) {
    return mt + (y_hi - y) / (y_hi - y_lo) * ph;
  };
  const auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"500\" "
         "viewBox=\"0 0 900 500\">\n";
  svg += "<rect width=\"900\" height=\"500\" fill=\"white\"/>\n";
  svg += "<text x=\"450\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + title + "</text>\n";

  // Axes and tick labels.
  svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt + ph) + "\" x2=\"" +
         num(ml + pw) + "\" y2=\"" + num(mt + ph) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(ml) +
         "\" y2=\"" + num(mt + ph) + "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x_lo + (x_hi - x_lo) * i / 4.0;
    const double yv = y_lo + (y_hi - y_lo) * i / 4.0;
    svg += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(mt + ph + 18.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           num(xv) + "</text>\n";
    svg += "<text x=\"" + num(ml - 8.0) + "\" y=\"" + num(py(yv) + 4.0) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           num(yv) + "</text>\n";
  }

  // Series and legend.
  double legend_y = mt + 14.0;
  for (const auto& s : series) {
    std::string pts;
    const std::size_t n = std::min(xs.size(), s.ys.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(s.ys[i])) continue;
      pts += num(px(xs[i])) + "," + num(py(s.ys[i])) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"";
    if (s.dashed) svg += " stroke-dasharray=\"6,4\"";
    svg += " points=\"" + pts + "\"/>\n";
    svg += "<line x1=\"" + num(ml + pw - 150.0) + "\" y1=\"" + num(legend_y) +
           "\" x2=\"" + num(ml + pw - 120.0) + "\" y2=\"" + num(legend_y) +
           "\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"" +
           (s.dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
    svg += "<text x=\"" + num(ml + pw - 114.0) + "\" y=\"" + num(legend_y + 4.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + s.label + "</text>\n";
    legend_y += 18.0;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace wpb
