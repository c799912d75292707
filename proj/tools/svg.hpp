#pragma once

#include <string>
#include <vector>

namespace polybarrier::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Static line chart (polyline + text elements). With log_y, non-positive and
/// non-finite points are dropped.
std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series, bool log_y);

}  // namespace polybarrier::cli
