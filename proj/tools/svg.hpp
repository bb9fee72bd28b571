#pragma once

// Standalone SVG documents for line, scatter and bar plots. Axes are linear;
// callers transform data (e.g. log10) before plotting and say so in the labels.

#include <cstdint>
#include <string>
#include <vector>

namespace riesz::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool markers_only = false;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::vector<double> reference_lines;  // horizontal, dashed
};

std::string render_plot(const Plot& plot);

std::string render_histogram(const std::string& title, const std::string& x_label, double lo,
                             double hi, const std::vector<std::uint64_t>& counts);

}  // namespace riesz::cli
