#pragma once

// Self-contained SVG line plots.

#include <string>
#include <vector>

namespace fracinv::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

/// Throws std::invalid_argument when there is nothing to draw.
std::string render_svg(const Plot& plot);
void write_svg(const std::string& path, const Plot& plot);

}  // namespace fracinv::cli
