#pragma once

/// @file plot.hpp
/// @brief Self-contained SVG line charts of metric curves.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace ephemera {

struct PlotSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;  // (x, y)
};

struct PlotLabels {
    std::string title;
    std::string x_label = "iteration";
    std::string y_label;
};

/// Linear axes with "nice" ticks covering the data (the y axis always
/// includes 0), one polyline per series and a legend. Output depends only
/// on the input. Throws std::invalid_argument on empty input or an empty series.
std::string render_svg(const std::vector<PlotSeries>& series, const PlotLabels& labels);

void render_plot(const std::vector<PlotSeries>& series, const PlotLabels& labels, const std::filesystem::path& path);

}  // namespace ephemera
