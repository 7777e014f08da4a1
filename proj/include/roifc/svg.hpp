#pragma once

#include <array>
#include <string>
#include <vector>

namespace roifc {

/// One bar of a bar chart. `whisker` is the half-length of a symmetric error
/// bar (0 draws none); `star` draws a significance marker above the bar.
struct BarDatum {
    std::string label;
    double value = 0.0;
    double whisker = 0.0;
    bool star = false;
    std::string color = "#1f77b4";
};

/// One point class of a scatter plot: a name for the legend, a fill color,
/// and the coordinates of its points.
struct ScatterSeries {
    std::string name;
    std::string color = "#1f77b4";
    std::vector<std::array<double, 2>> points;
};

/// Self-contained SVG scatter plot with a frame, class legend, and one
/// circle per point. Deterministic byte stream: fixed-precision coordinate
/// formatting, no timestamps, no randomness.
std::string svg_scatter(const std::vector<ScatterSeries>& series,
                        const std::string& title);

/// Self-contained SVG bar chart with a zero baseline, optional error
/// whiskers, per-bar value labels, and significance stars. Deterministic as
/// above.
std::string svg_bars(const std::vector<BarDatum>& bars, const std::string& title,
                     const std::string& y_label);

}  // namespace roifc
