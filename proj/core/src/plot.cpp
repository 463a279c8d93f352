#include "ephemera/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace ephemera {
namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 500;
constexpr double kLeft = 70;
constexpr double kRight = 170;
constexpr double kTop = 50;
constexpr double kBottom = 60;

constexpr std::array<const char*, 11> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
                                               "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#000000"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

double nice_step(double span) {
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    const double nice = frac <= 1.0 ? 1.0 : frac <= 2.0 ? 2.0 : frac <= 5.0 ? 5.0 : 10.0;
    return nice * mag;
}

struct Axis {
    double lo;
    double hi;
    double step;
};

Axis make_axis(double lo, double hi) {
    if (hi <= lo) hi = lo + 1.0;
    const double step = nice_step(hi - lo);
    return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& series, const PlotLabels& labels) {
    if (series.empty()) throw std::invalid_argument("render_svg: no series");
    double x_lo = series.front().points.empty() ? 0 : series.front().points.front().first;
    double x_hi = x_lo;
    double y_lo = 0.0;
    double y_hi = 0.0;
    for (const auto& s : series) {
        if (s.points.empty()) throw std::invalid_argument("render_svg: series '" + s.name + "' is empty");
        for (const auto& [x, y] : s.points) {
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
    }
    const Axis xa = make_axis(x_lo, x_hi);
    const Axis ya = make_axis(y_lo, y_hi);

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xa.lo) / (xa.hi - xa.lo) * plot_w; };
    auto py = [&](double y) { return kTop + plot_h - (y - ya.lo) / (ya.hi - ya.lo) * plot_h; };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
           "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\" font-family=\"sans-serif\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) + "\" fill=\"white\"/>\n";
    svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kTop / 2 + 6) +
           "\" text-anchor=\"middle\" font-size=\"16\">" + escape(labels.title) + "</text>\n";

    svg += "<g class=\"grid\" stroke=\"#dddddd\" stroke-width=\"1\">\n";
    const int y_ticks = static_cast<int>(std::lround((ya.hi - ya.lo) / ya.step));
    for (int i = 0; i <= y_ticks; ++i) {
        const double y = py(ya.lo + i * ya.step);
        svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft + plot_w) + "\" y2=\"" +
               num(y) + "\"/>\n";
    }
    const int x_ticks = static_cast<int>(std::lround((xa.hi - xa.lo) / xa.step));
    for (int i = 0; i <= x_ticks; ++i) {
        const double x = px(xa.lo + i * xa.step);
        svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(x) + "\" y2=\"" +
               num(kTop + plot_h) + "\"/>\n";
    }
    svg += "</g>\n";

    svg += "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop + plot_h) + "\" x2=\"" + num(kLeft + plot_w) +
           "\" y2=\"" + num(kTop + plot_h) + "\"/>\n";
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) + "\" y2=\"" +
           num(kTop + plot_h) + "\"/>\n";
    svg += "</g>\n";

    svg += "<g class=\"ticks\" font-size=\"11\">\n";
    for (int i = 0; i <= y_ticks; ++i) {
        const double v = ya.lo + i * ya.step;
        svg += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(py(v) + 4) + "\" text-anchor=\"end\">" + label(v) +
               "</text>\n";
    }
    for (int i = 0; i <= x_ticks; ++i) {
        const double v = xa.lo + i * xa.step;
        svg += "<text x=\"" + num(px(v)) + "\" y=\"" + num(kTop + plot_h + 16) + "\" text-anchor=\"middle\">" +
               label(v) + "</text>\n";
    }
    svg += "</g>\n";

    svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 15) +
           "\" text-anchor=\"middle\" font-size=\"13\">" + escape(labels.x_label) + "</text>\n";
    svg += "<text x=\"18\" y=\"" + num(kTop + plot_h / 2) + "\" text-anchor=\"middle\" font-size=\"13\" " +
           "transform=\"rotate(-90 18 " + num(kTop + plot_h / 2) + ")\">" + escape(labels.y_label) + "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % kPalette.size()];
        svg += "<polyline class=\"series\" fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < series[i].points.size(); ++k) {
            if (k > 0) svg += ' ';
            svg += num(px(series[i].points[k].first)) + "," + num(py(series[i].points[k].second));
        }
        svg += "\"/>\n";
    }

    svg += "<g class=\"legend\" font-size=\"12\">\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double y = kTop + 10 + static_cast<double>(i) * 20;
        const double x = kLeft + plot_w + 15;
        svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(y) + "\" x2=\"" + num(x + 24) + "\" y2=\"" + num(y) +
               "\" stroke=\"" + kPalette[i % kPalette.size()] + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + num(x + 30) + "\" y=\"" + num(y + 4) + "\">" + escape(series[i].name) + "</text>\n";
    }
    svg += "</g>\n</svg>\n";
    return svg;
}

void render_plot(const std::vector<PlotSeries>& series, const PlotLabels& labels, const std::filesystem::path& path) {
    const auto svg = render_svg(series, labels);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::system_error(errno, std::generic_category(), "cannot open " + path.string() + " for writing");
    out << svg;
    out.flush();
    if (!out) throw std::system_error(errno, std::generic_category(), "write failed for " + path.string());
}

}  // namespace ephemera
