/*
 * This file is part of rindler-corr.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef RINDLER_SVG_HPP
#define RINDLER_SVG_HPP

#include <string>
#include <vector>

namespace rindler::svg {

/**
 * Minimal deterministic line-chart renderer emitting standalone SVG 1.1.
 * No external assets, no timestamps: identical input yields identical bytes.
 */

enum class Stroke { Solid, Dashed, Dotted };

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  Stroke stroke = Stroke::Solid;
  double width = 2.0;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  int width = 720;
  int height = 480;
};

/** Render the chart to an SVG document string. */
std::string render(const Chart& chart);

}  // namespace rindler::svg

#endif  // RINDLER_SVG_HPP
