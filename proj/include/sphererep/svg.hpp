#pragma once

#include <cstdio>
#include <string>

#include "sphererep/graph.hpp"
#include "sphererep/matrix.hpp"
#include "sphererep/representation.hpp"

namespace sphererep {

/// Fixed-viewport drawing style. These are format constants, not parameters
/// of the underlying math.
struct RenderStyle {
    int width = 800;
    int height = 800;
    double margin_fraction = 0.05;
    double vertex_radius = 6.0;
    double edge_width = 1.5;
    std::string vertex_fill = "#1f77b4";
    std::string edge_stroke = "#4d4d4d";
    std::string background = "#ffffff";
};

namespace detail {

inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace detail

/// Render a 2-row layout as SVG 1.1: one circle per vertex, one straight
/// line per edge, isotropically scaled into the viewport with the margin of
/// the style. Byte output is deterministic for identical inputs.
inline std::string render_svg(const Graph& g, const Matrix& layout, const RenderStyle& style = {}) {
    if (layout.rows() != 2)
        throw WrongDimension("render_svg: layout must have exactly 2 rows, got " +
                             std::to_string(layout.rows()));
    check_representation(g, layout);

    const int n = g.vertex_count();
    double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
    for (int v = 0; v < n; ++v) {
        const double x = layout(0, v);
        const double y = layout(1, v);
        if (v == 0 || x < min_x) min_x = x;
        if (v == 0 || x > max_x) max_x = x;
        if (v == 0 || y < min_y) min_y = y;
        if (v == 0 || y > max_y) max_y = y;
    }
    const double cx = 0.5 * (min_x + max_x);
    const double cy = 0.5 * (min_y + max_y);
    const double span = std::max(max_x - min_x, max_y - min_y);
    const double usable = 1.0 - 2.0 * style.margin_fraction;
    const double scale = span > 1e-12 ? usable * std::min(style.width, style.height) / span : 1.0;

    auto px = [&](int v) { return 0.5 * style.width + scale * (layout(0, v) - cx); };
    auto py = [&](int v) { return 0.5 * style.height - scale * (layout(1, v) - cy); };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           std::to_string(style.width) + "\" height=\"" + std::to_string(style.height) +
           "\" viewBox=\"0 0 " + std::to_string(style.width) + " " + std::to_string(style.height) +
           "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"" + style.background + "\"/>\n";
    for (const auto& [u, v] : g.edges()) {
        out += "<line x1=\"" + detail::fmt(px(u)) + "\" y1=\"" + detail::fmt(py(u)) + "\" x2=\"" +
               detail::fmt(px(v)) + "\" y2=\"" + detail::fmt(py(v)) + "\" stroke=\"" +
               style.edge_stroke + "\" stroke-width=\"" + detail::fmt(style.edge_width) + "\"/>\n";
    }
    for (int v = 0; v < n; ++v) {
        out += "<circle cx=\"" + detail::fmt(px(v)) + "\" cy=\"" + detail::fmt(py(v)) + "\" r=\"" +
               detail::fmt(style.vertex_radius) + "\" fill=\"" + style.vertex_fill + "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace sphererep
