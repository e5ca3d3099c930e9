#pragma once

#include <optional>
#include <string>
#include <vector>

namespace windnet {

/// One polyline of a chart.
struct SvgSeries {
    std::string label;
    std::string color;
    std::vector<double> x;
    std::vector<double> y;
};

struct SvgOptions {
    int width = 960;
    int height = 420;
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    /// Draws a red vertical marker at this x position when set.
    std::optional<double> marker_x;
};

/// Renders a static line chart as a well-formed standalone SVG document.
std::string render_line_chart(const std::vector<SvgSeries>& series, const SvgOptions& options);

}  // namespace windnet
