#pragma once

#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "lamination.hpp"

namespace lamlab {

struct RenderStyle {
    bool geodesic = false;
    std::string p_color = "#1f4e9c";
    std::string q_color = "#b8321e";
    int size = 600;
};

struct RenderLayer {
    std::set<Leaf> leaves;
    std::vector<Polygon> polygons;
};

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s(buf);
    if (s == "-0.000") s = "0.000";
    return s;
}

struct Pt {
    double x, y;
};

// Floating point is confined to drawing.
inline double to_turns(const Angle& a) {
    return static_cast<double>(a.num()) / static_cast<double>(a.den());
}

inline Pt on_circle(const Angle& a, double c, double r) {
    const double t = 2.0 * M_PI * to_turns(a);
    return {c + r * std::cos(t), c - r * std::sin(t)};
}

inline std::string leaf_element(const Leaf& l, const RenderStyle& st, const std::string& color, double c, double r) {
    Pt p1 = on_circle(l.a(), c, r), p2 = on_circle(l.b(), c, r);
    std::string common = " stroke=\"" + color + "\" stroke-width=\"1\" fill=\"none\"/>\n";
    double sep = 2.0 * M_PI * (to_turns(l.b()) - to_turns(l.a()));
    if (sep > M_PI) sep = 2.0 * M_PI - sep;
    if (!st.geodesic || std::fabs(sep - M_PI) < 1e-9)
        return "<line x1=\"" + fmt(p1.x) + "\" y1=\"" + fmt(p1.y) + "\" x2=\"" + fmt(p2.x) + "\" y2=\"" + fmt(p2.y) + "\"" +
               common;
    // Circle orthogonal to the boundary through both endpoints.
    double rad = r * std::tan(sep / 2.0);
    double mx = (p1.x + p2.x) / 2 - c, my = (p1.y + p2.y) / 2 - c;
    double ml = std::hypot(mx, my);
    double d = r / std::cos(sep / 2.0);
    double ox = c + mx / ml * d, oy = c + my / ml * d;
    double qx = ox - mx / ml * rad, qy = oy - my / ml * rad;  // arc point nearest the centre
    double cross = (qx - p1.x) * (p2.y - qy) - (qy - p1.y) * (p2.x - qx);
    int sweep = cross > 0 ? 1 : 0;
    return "<path d=\"M " + fmt(p1.x) + " " + fmt(p1.y) + " A " + fmt(rad) + " " + fmt(rad) + " 0 0 " +
           std::to_string(sweep) + " " + fmt(p2.x) + " " + fmt(p2.y) + "\"" + common;
}

}  // namespace detail

// Chord diagram: the unit circle, one element per leaf, tinted polygons.
inline std::string render_svg(const RenderLayer& p_side, const RenderLayer* q_side, const RenderStyle& st = {}) {
    const double c = st.size / 2.0, r = st.size * 0.45;
    std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(st.size) + "\" height=\"" +
         std::to_string(st.size) + "\" viewBox=\"0 0 " + std::to_string(st.size) + " " + std::to_string(st.size) + "\">\n";
    s += "<circle cx=\"" + detail::fmt(c) + "\" cy=\"" + detail::fmt(c) + "\" r=\"" + detail::fmt(r) +
         "\" stroke=\"#000000\" stroke-width=\"1\" fill=\"none\"/>\n";
    auto layer = [&](const RenderLayer& L, const std::string& color, const char* cls) {
        s += "<g class=\"" + std::string(cls) + "\">\n";
        for (const auto& pg : L.polygons) {
            s += "<polygon points=\"";
            for (std::size_t i = 0; i < pg.vertices.size(); ++i) {
                auto pt = detail::on_circle(pg.vertices[i], c, r);
                if (i) s += " ";
                s += detail::fmt(pt.x) + "," + detail::fmt(pt.y);
            }
            s += "\" fill=\"" + color + "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
        }
        for (const auto& l : L.leaves) s += detail::leaf_element(l, st, color, c, r);
        s += "</g>\n";
    };
    layer(p_side, st.p_color, "p");
    if (q_side) layer(*q_side, st.q_color, "q");
    s += "</svg>\n";
    return s;
}

}  // namespace lamlab
