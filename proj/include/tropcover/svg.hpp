#pragma once

/**
 * @file svg.hpp
 * @brief Deterministic SVG rendering of polyhedral complexes in R^2, and
 *        planar slices of higher-dimensional complexes.
 */

#include "tropcover/polyhedra.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropcover {

struct SvgLayer {
    PolyhedralComplex complex;
    std::string stroke = "#222222";
    std::vector<std::string> fills;  // cycled over 2-dimensional cells; empty = no fill
    std::map<std::string, std::string> fill_by_label;  // takes precedence over fills
    double stroke_width = 2.0;
    bool show_labels = true;
};

struct SvgPanel {
    std::string title;
    std::vector<SvgLayer> layers;
    Rational extent = Rational(5);  // the window is [-extent, extent]^2
};

namespace detail {

/// Vertices of p clipped to the window, in counter-clockwise order.
inline std::vector<QPoint> clipped_vertices(const Polyhedron& p, const Rational& r) {
    Polyhedron q = p;
    for (std::size_t k = 0; k < 2; ++k) {
        QVector e(2, Rational(0));
        e[k] = 1;
        q.add(LinConstraint::le(e, r));
        q.add(LinConstraint::ge(e, -r));
    }
    const auto& cs = q.constraints();
    std::vector<QPoint> pts;
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            const auto &a = cs[i].normal, &b = cs[j].normal;
            Rational det = a[0] * b[1] - a[1] * b[0];
            if (det.is_zero()) continue;
            QPoint x{(cs[i].offset * b[1] - cs[j].offset * a[1]) / det, (a[0] * cs[j].offset - b[0] * cs[i].offset) / det};
            if (q.contains(x) && std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(std::move(x));
        }
    if (pts.size() < 3) return pts;
    QPoint c{Rational(0), Rational(0)};
    for (const auto& x : pts) {
        c[0] += x[0];
        c[1] += x[1];
    }
    c[0] = c[0] / Rational(static_cast<long>(pts.size()));
    c[1] = c[1] / Rational(static_cast<long>(pts.size()));
    auto half = [&](const QPoint& x) {
        Rational dx = x[0] - c[0], dy = x[1] - c[1];
        return dy.sign() > 0 || (dy.is_zero() && dx.sign() > 0) ? 0 : 1;
    };
    std::sort(pts.begin(), pts.end(), [&](const QPoint& a, const QPoint& b) {
        int ha = half(a), hb = half(b);
        if (ha != hb) return ha < hb;
        Rational cross = (a[0] - c[0]) * (b[1] - c[1]) - (a[1] - c[1]) * (b[0] - c[0]);
        return cross.sign() > 0;
    });
    return pts;
}

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    return s == "-0.00" ? "0.00" : s;
}

inline std::string escape_xml(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace detail

inline std::string render_svg(const std::vector<SvgPanel>& panels) {
    const double size = 360, margin = 30, top = 30;
    const double width = margin + panels.size() * (size + margin);
    const double height = top + size + margin;
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt(width) + "\" height=\"" +
                      detail::fmt(height) + "\" viewBox=\"0 0 " + detail::fmt(width) + " " + detail::fmt(height) +
                      "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t pi = 0; pi < panels.size(); ++pi) {
        const auto& panel = panels[pi];
        for (const auto& layer : panel.layers)
            if (layer.complex.ambient_dim != 2) throw std::invalid_argument("render_svg: complexes must live in R^2");
        const double x0 = margin + pi * (size + margin), y0 = top;
        const double r = panel.extent.to_double();
        auto px = [&](const Rational& x) { return detail::fmt(x0 + (x.to_double() + r) / (2 * r) * size); };
        auto py = [&](const Rational& y) { return detail::fmt(y0 + (r - y.to_double()) / (2 * r) * size); };
        out += "<g>\n<text x=\"" + detail::fmt(x0) + "\" y=\"" + detail::fmt(y0 - 10) + "\">" +
               detail::escape_xml(panel.title) + "</text>\n";
        out += "<rect x=\"" + detail::fmt(x0) + "\" y=\"" + detail::fmt(y0) + "\" width=\"" + detail::fmt(size) +
               "\" height=\"" + detail::fmt(size) + "\" fill=\"none\" stroke=\"#999999\"/>\n";
        out += "<line x1=\"" + px(-panel.extent) + "\" y1=\"" + py(Rational(0)) + "\" x2=\"" + px(panel.extent) +
               "\" y2=\"" + py(Rational(0)) + "\" stroke=\"#dddddd\"/>\n";
        out += "<line x1=\"" + px(Rational(0)) + "\" y1=\"" + py(-panel.extent) + "\" x2=\"" + px(Rational(0)) +
               "\" y2=\"" + py(panel.extent) + "\" stroke=\"#dddddd\"/>\n";
        for (const auto& layer : panel.layers) {
            std::size_t fill_idx = 0;
            for (std::size_t ci = 0; ci < layer.complex.cells.size(); ++ci) {
                auto pts = detail::clipped_vertices(layer.complex.cells[ci], panel.extent);
                if (pts.empty()) continue;
                const std::string& label = layer.complex.labels[ci];
                QPoint c{Rational(0), Rational(0)};
                for (const auto& x : pts) {
                    c[0] += x[0];
                    c[1] += x[1];
                }
                c[0] = c[0] / Rational(static_cast<long>(pts.size()));
                c[1] = c[1] / Rational(static_cast<long>(pts.size()));
                if (pts.size() >= 3) {
                    std::string fill = layer.fills.empty() ? "none" : layer.fills[fill_idx++ % layer.fills.size()];
                    if (auto it = layer.fill_by_label.find(label); it != layer.fill_by_label.end()) fill = it->second;
                    out += "<polygon points=\"";
                    for (std::size_t k = 0; k < pts.size(); ++k) out += (k ? " " : "") + px(pts[k][0]) + "," + py(pts[k][1]);
                    out += "\" fill=\"" + fill + "\" fill-opacity=\"0.45\" stroke=\"" + layer.stroke +
                           "\" stroke-width=\"" + detail::fmt(layer.stroke_width / 2) + "\"/>\n";
                } else if (pts.size() == 2) {
                    out += "<line x1=\"" + px(pts[0][0]) + "\" y1=\"" + py(pts[0][1]) + "\" x2=\"" + px(pts[1][0]) +
                           "\" y2=\"" + py(pts[1][1]) + "\" stroke=\"" + layer.stroke + "\" stroke-width=\"" +
                           detail::fmt(layer.stroke_width) + "\"/>\n";
                } else {
                    out += "<circle cx=\"" + px(pts[0][0]) + "\" cy=\"" + py(pts[0][1]) + "\" r=\"" +
                           detail::fmt(layer.stroke_width * 1.5) + "\" fill=\"" + layer.stroke + "\"/>\n";
                }
                if (layer.show_labels && !label.empty())
                    out += "<text x=\"" + px(c[0]) + "\" y=\"" + py(c[1]) + "\" text-anchor=\"middle\">" +
                           detail::escape_xml(label) + "</text>\n";
            }
        }
        out += "</g>\n";
    }
    return out + "</svg>\n";
}

/// One panel, default styling.
inline std::string render_svg(const std::vector<PolyhedralComplex>& complexes) {
    static const char* strokes[] = {"#222222", "#c0392b", "#2471a3", "#229954"};
    SvgPanel panel;
    for (std::size_t i = 0; i < complexes.size(); ++i) {
        SvgLayer l;
        l.complex = complexes[i];
        l.stroke = strokes[i % 4];
        l.fills = {"#f5b041", "#85c1e9", "#82e0aa", "#d7bde2", "#f1948a"};
        panel.layers.push_back(std::move(l));
    }
    return render_svg(std::vector<SvgPanel>{panel});
}

/// Pulls p back along the affine plane s -> base + s_0 b_0 + s_1 b_1.
inline Polyhedron plane_slice(const Polyhedron& p, const QPoint& base, const QMatrix& basis) {
    if (basis.size() != 2) throw std::invalid_argument("plane_slice: need two basis vectors");
    Polyhedron out(2);
    for (const auto& c : p.constraints()) {
        QVector n{dot(c.normal, basis[0]), dot(c.normal, basis[1])};
        Rational b = c.offset - dot(c.normal, base);
        out.add(c.rel == Relation::le ? LinConstraint::le(n, b) : LinConstraint::eq(n, b));
    }
    return out;
}

inline PolyhedralComplex plane_slice(const PolyhedralComplex& c, const QPoint& base, const QMatrix& basis) {
    PolyhedralComplex out(2);
    for (std::size_t i = 0; i < c.cells.size(); ++i) {
        Polyhedron s = plane_slice(c.cells[i], base, basis);
        if (!is_empty(s)) out.add(std::move(s), c.labels[i]);
    }
    return out;
}

}  // namespace tropcover
