#pragma once

#include <string>
#include <vector>

namespace planpred {

// One bar per group for this series; values are expected in [0, 1].
struct ChartSeries {
    std::string label;
    std::string color;  // SVG fill
    std::vector<double> values;
};

// Static grouped bar chart with a 0..1 y axis, per-group x labels, and a
// legend. Output text is deterministic for identical inputs.
std::string grouped_bar_chart_svg(const std::string& title,
                                  const std::vector<std::string>& group_labels,
                                  const std::vector<ChartSeries>& series);

}  // namespace planpred
