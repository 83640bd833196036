#pragma once

#include <string>
#include <utility>
#include <vector>

namespace moralnet::svg {

struct BarSeries {
  std::string name;
  std::vector<double> values;  // one per category
};

/// Grouped vertical bars, one group per category.
std::string bar_chart(const std::string& title, const std::vector<std::string>& categories,
                      const std::vector<BarSeries>& series, const std::string& y_label);

struct Arrow {
  std::string name;
  double x;
  double y;
};

/// Points plus labelled arrows from the origin, as in a biplot. Arrows are
/// rescaled to the point cloud.
std::string scatter(const std::string& title, const std::string& x_label, const std::string& y_label,
                    const std::vector<std::pair<double, double>>& points, const std::vector<Arrow>& arrows);

}  // namespace moralnet::svg
