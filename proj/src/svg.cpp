/*
 * This file is part of rindler-corr.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "rindler/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace rindler::svg {

namespace {

std::string fmt(double v) {
  // Fixed short form keeps coordinates stable across platforms.
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
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

/** Largest "nice" step (1, 2, 2.5, 5 x 10^k) giving at most max_ticks. */
double nice_step(double span, int max_ticks) {
  if (!(span > 0.0)) return 1.0;
  const double raw = span / max_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

std::string dash_for(Stroke s) {
  switch (s) {
    case Stroke::Dashed: return "9,5";
    case Stroke::Dotted: return "2,4";
    default: return "";
  }
}

}  // namespace

std::string render(const Chart& chart) {
  if (chart.series.empty()) {
    throw std::invalid_argument("chart needs at least one series");
  }
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  bool first = true;
  for (const Series& s : chart.series) {
    if (s.x.size() != s.y.size() || s.x.empty()) {
      throw std::invalid_argument("series '" + s.label + "' is empty or ragged");
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        throw std::invalid_argument("series '" + s.label + "' contains non-finite samples");
      }
      if (first) {
        xmin = xmax = s.x[i];
        ymin = ymax = s.y[i];
        first = false;
      } else {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        ymin = std::min(ymin, s.y[i]);
        ymax = std::max(ymax, s.y[i]);
      }
    }
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;
  // A little headroom keeps curves off the frame.
  const double ypad = 0.06 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const double ml = 64.0, mr = 16.0, mt = chart.title.empty() ? 16.0 : 40.0, mb = 52.0;
  const double pw = chart.width - ml - mr;
  const double ph = chart.height - mt - mb;
  const auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  const auto py = [&](double y) { return mt + (ymax - y) / (ymax - ymin) * ph; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(chart.width) + "\" height=\"" + std::to_string(chart.height) +
         "\" viewBox=\"0 0 " + std::to_string(chart.width) + " " + std::to_string(chart.height) +
         "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  if (!chart.title.empty()) {
    out += "<text x=\"" + fmt(ml + pw / 2) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
           escape(chart.title) + "</text>\n";
  }

  // Grid lines and ticks.
  const double xstep = nice_step(xmax - xmin, 7);
  const double ystep = nice_step(ymax - ymin, 6);
  out += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
  for (double t = std::ceil(xmin / xstep) * xstep; t <= xmax + 1e-9 * xstep; t += xstep) {
    const double gx = px(t);
    out += "<line x1=\"" + fmt(gx) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(gx) + "\" y2=\"" +
           fmt(mt + ph) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + fmt(gx) + "\" y=\"" + fmt(mt + ph + 16) +
           "\" text-anchor=\"middle\">" + fmt_tick(std::abs(t) < 1e-12 ? 0.0 : t) + "</text>\n";
  }
  for (double t = std::ceil(ymin / ystep) * ystep; t <= ymax + 1e-9 * ystep; t += ystep) {
    const double gy = py(t);
    out += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(gy) + "\" x2=\"" + fmt(ml + pw) +
           "\" y2=\"" + fmt(gy) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + fmt(ml - 6) + "\" y=\"" + fmt(gy + 4) + "\" text-anchor=\"end\">" +
           fmt_tick(std::abs(t) < 1e-12 ? 0.0 : t) + "</text>\n";
  }
  out += "</g>\n";

  // Frame and axis labels.
  out += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(mt) + "\" width=\"" + fmt(pw) +
         "\" height=\"" + fmt(ph) + "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  out += "<text x=\"" + fmt(ml + pw / 2) + "\" y=\"" + fmt(mt + ph + 40) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         escape(chart.x_label) + "</text>\n";
  out += "<text x=\"16\" y=\"" + fmt(mt + ph / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 " +
         fmt(mt + ph / 2) + ")\">" + escape(chart.y_label) + "</text>\n";

  // Curves.
  for (const Series& s : chart.series) {
    out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"" +
           fmt(s.width) + "\"";
    const std::string dash = dash_for(s.stroke);
    if (!dash.empty()) out += " stroke-dasharray=\"" + dash + "\"";
    out += " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) out += " ";
      out += fmt(px(s.x[i])) + "," + fmt(py(s.y[i]));
    }
    out += "\"/>\n";
  }

  // Legend, top-right inside the frame.
  const double lx = ml + pw - 208.0;
  double ly = mt + 12.0;
  out += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect x=\"" + fmt(lx - 8) + "\" y=\"" + fmt(ly - 10) + "\" width=\"208\" height=\"" +
         fmt(18.0 * chart.series.size() + 8.0) +
         "\" fill=\"#ffffff\" fill-opacity=\"0.85\" stroke=\"#cccccc\"/>\n";
  for (const Series& s : chart.series) {
    out += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(ly) + "\" x2=\"" + fmt(lx + 28) +
           "\" y2=\"" + fmt(ly) + "\" stroke=\"" + s.color + "\" stroke-width=\"" + fmt(s.width) +
           "\"";
    const std::string dash = dash_for(s.stroke);
    if (!dash.empty()) out += " stroke-dasharray=\"" + dash + "\"";
    out += "/>\n";
    out += "<text x=\"" + fmt(lx + 34) + "\" y=\"" + fmt(ly + 4) + "\">" + escape(s.label) +
           "</text>\n";
    ly += 18.0;
  }
  out += "</g>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace rindler::svg
