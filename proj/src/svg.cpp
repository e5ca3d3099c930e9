#include "windnet/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "windnet/errors.hpp"

namespace windnet {

namespace {

std::string escape_xml(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Extent {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    void pad() {
        if (!(lo < hi)) {
            lo -= 1.0;
            hi += 1.0;
        } else {
            const double margin = 0.02 * (hi - lo);
            lo -= margin;
            hi += margin;
        }
    }
};

}  // namespace

std::string render_line_chart(const std::vector<SvgSeries>& series, const SvgOptions& options) {
    const double margin_left = 70, margin_right = 20, margin_top = 36, margin_bottom = 52;
    const double plot_w = options.width - margin_left - margin_right;
    const double plot_h = options.height - margin_top - margin_bottom;

    auto tx = [&](double x) { return options.log_x ? std::log10(std::max(x, 1e-300)) : x; };

    Extent ex, ey;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) {
            throw ShapeError("svg series '" + s.label + "': x/y length mismatch");
        }
        for (double v : s.x) ex.add(tx(v));
        for (double v : s.y) ey.add(v);
    }
    if (options.marker_x.has_value()) ex.add(tx(*options.marker_x));
    ex.pad();
    ey.pad();

    auto px = [&](double x) {
        return margin_left + (tx(x) - ex.lo) / (ex.hi - ex.lo) * plot_w;
    };
    auto py = [&](double y) {
        return margin_top + (ey.hi - y) / (ey.hi - ey.lo) * plot_h;
    };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(options.width) +
           "\" height=\"" + std::to_string(options.height) + "\" viewBox=\"0 0 " +
           std::to_string(options.width) + " " + std::to_string(options.height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!options.title.empty()) {
        svg += "<text x=\"" + num(options.width / 2.0) +
               "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
               escape_xml(options.title) + "</text>\n";
    }

    // Frame and ticks.
    svg += "<rect x=\"" + num(margin_left) + "\" y=\"" + num(margin_top) + "\" width=\"" +
           num(plot_w) + "\" height=\"" + num(plot_h) +
           "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    const int ticks = 5;
    for (int t = 0; t <= ticks; ++t) {
        const double fx = ex.lo + (ex.hi - ex.lo) * t / ticks;
        const double xpos = margin_left + plot_w * t / ticks;
        const double label = options.log_x ? std::pow(10.0, fx) : fx;
        svg += "<line x1=\"" + num(xpos) + "\" y1=\"" + num(margin_top + plot_h) + "\" x2=\"" +
               num(xpos) + "\" y2=\"" + num(margin_top + plot_h + 5) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(xpos) + "\" y=\"" + num(margin_top + plot_h + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               num(label) + "</text>\n";

        const double fy = ey.lo + (ey.hi - ey.lo) * t / ticks;
        const double ypos = margin_top + plot_h - plot_h * t / ticks;
        svg += "<line x1=\"" + num(margin_left - 5) + "\" y1=\"" + num(ypos) + "\" x2=\"" +
               num(margin_left) + "\" y2=\"" + num(ypos) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(margin_left - 8) + "\" y=\"" + num(ypos + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + num(fy) +
               "</text>\n";
    }
    if (!options.x_label.empty()) {
        svg += "<text x=\"" + num(margin_left + plot_w / 2) + "\" y=\"" +
               num(options.height - 12.0) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
               escape_xml(options.x_label) + "</text>\n";
    }
    if (!options.y_label.empty()) {
        svg += "<text x=\"16\" y=\"" + num(margin_top + plot_h / 2) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
               "transform=\"rotate(-90 16 " +
               num(margin_top + plot_h / 2) + ")\">" + escape_xml(options.y_label) + "</text>\n";
    }

    if (options.marker_x.has_value()) {
        const double xpos = px(*options.marker_x);
        svg += "<line x1=\"" + num(xpos) + "\" y1=\"" + num(margin_top) + "\" x2=\"" + num(xpos) +
               "\" y2=\"" + num(margin_top + plot_h) +
               "\" stroke=\"red\" stroke-width=\"1.5\" stroke-dasharray=\"4 3\"/>\n";
    }

    for (const auto& s : series) {
        if (s.x.empty()) continue;
        std::string points;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!points.empty()) points += ' ';
            points += num(px(s.x[i])) + "," + num(py(s.y[i]));
        }
        svg += "<polyline fill=\"none\" stroke=\"" + escape_xml(s.color) +
               "\" stroke-width=\"1.2\" points=\"" + points + "\"/>\n";
    }

    // Legend, top-right inside the frame.
    double ly = margin_top + 14;
    for (const auto& s : series) {
        if (s.label.empty()) continue;
        const double lx = margin_left + plot_w - 150;
        svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(lx + 22) +
               "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + escape_xml(s.color) +
               "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + num(lx + 28) + "\" y=\"" + num(ly) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + escape_xml(s.label) +
               "</text>\n";
        ly += 15;
    }

    svg += "</svg>\n";
    return svg;
}

}  // namespace windnet
