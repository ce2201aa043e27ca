#pragma once

// SVG 1.1 figure of an instance: one element per point and per range, chosen
// ranges marked with the "chosen" class. Geometry is clipped exactly and only
// converted to floating point when printed.

#include <algorithm>
#include <cstdio>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "mmgsc/instance.hpp"
#include "mmgsc/report.hpp"

namespace mmgsc {

namespace svg_detail {

struct Linear {
    Scalar a, b, c;  // a*x + b*y + c >= 0
    Scalar at(const Point& p) const { return a * p.x + b * p.y + c; }
};

// Sutherland-Hodgman against one closed halfplane.
inline std::vector<Point> clip(const std::vector<Point>& poly, const Linear& f) {
    std::vector<Point> out;
    for (std::size_t k = 0; k < poly.size(); ++k) {
        const Point& u = poly[k];
        const Point& v = poly[(k + 1) % poly.size()];
        const Scalar fu = f.at(u), fv = f.at(v);
        if (sign(fu) >= 0) out.push_back(u);
        if ((sign(fu) < 0 && sign(fv) > 0) || (sign(fu) > 0 && sign(fv) < 0)) {
            const Scalar t = fu / (fu - fv);
            out.push_back(u + t * (v - u));
        }
    }
    return out;
}

inline std::string num(const Scalar& v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v.get_d());
    return buf;
}

struct View {
    Scalar x0, y0, x1, y1;

    void include(const Point& p) {
        x0 = std::min(x0, p.x);
        y0 = std::min(y0, p.y);
        x1 = std::max(x1, p.x);
        y1 = std::max(y1, p.y);
    }
    Scalar span() const { return std::max(Scalar(x1 - x0), Scalar(y1 - y0)); }
    std::vector<Point> corners() const { return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}; }
};

// Points, squares and, for halfplanes, the foot of each boundary line from
// the origin, so every strip shows up; then a margin of one unit.
inline View view_of(const InstanceDoc& doc) {
    View v{0, 0, 0, 0};
    for (const auto& p : doc.s) v.include(p);
    for (const auto& p : doc.sprime) v.include(p);
    for (const auto& q : doc.squares) {
        v.include(q.tr);
        v.include({q.left(), q.bottom()});
    }
    for (const auto& h : doc.halfplanes) {
        const Scalar n2 = Scalar(h.a) * h.a + Scalar(h.b) * h.b;
        v.include({Scalar(-h.c) * h.a / n2, Scalar(-h.c) * h.b / n2});
    }
    v.x0 -= 1;
    v.y0 -= 1;
    v.x1 += 1;
    v.y1 += 1;
    return v;
}

inline std::string points_attr(const std::vector<Point>& poly) {
    std::string out;
    for (const auto& p : poly) {
        if (!out.empty()) out += ' ';
        out += num(p.x) + "," + num(-p.y);
    }
    return out;
}

}  // namespace svg_detail

// Halfplanes are drawn as the strip 0 <= h(x) <= w * max(|a|, |b|) inside the
// view, w a small fraction of the view size.
inline std::string render_svg(const InstanceDoc& doc, std::span<const RangeId> cover = {}) {
    using namespace svg_detail;
    const View v = view_of(doc);
    const Scalar span = v.span();
    const Scalar r = span / 150;
    auto chosen = [&](RangeId id) { return std::find(cover.begin(), cover.end(), id) != cover.end(); };
    auto cls = [&](RangeId id) { return chosen(id) ? "range chosen" : "range"; };

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" viewBox=\"" << num(v.x0)
      << " " << num(-v.y1) << " " << num(v.x1 - v.x0) << " " << num(v.y1 - v.y0) << "\">\n"
      << "<title>" << kind_name(doc.kind) << " instance " << instance_digest(doc) << "</title>\n"
      << "<style type=\"text/css\"><![CDATA[\n"
      << ".range { fill: #4a7ab5; fill-opacity: 0.08; stroke: #4a7ab5; stroke-width: " << num(span / 800) << "; }\n"
      << ".chosen { fill: #d9822b; fill-opacity: 0.25; stroke: #b5561d; stroke-width: " << num(span / 300) << "; }\n"
      << ".s { fill: #1b1b1b; }\n"
      << ".sprime { fill: #ffffff; stroke: #c0392b; stroke-width: " << num(span / 600) << "; }\n"
      << "]]></style>\n";

    o << "<g id=\"ranges\">\n";
    if (doc.kind == RangeKind::Squares) {
        for (const auto& q : doc.squares) {
            o << "<rect id=\"range-" << q.id << "\" class=\"" << cls(q.id) << "\" x=\"" << num(q.left()) << "\" y=\""
              << num(-q.top()) << "\" width=\"1\" height=\"1\"/>\n";
        }
    } else {
        for (const auto& h : doc.halfplanes) {
            const Scalar scale = std::max(Scalar(h.a < 0 ? -h.a : h.a), Scalar(h.b < 0 ? -h.b : h.b));
            const Scalar w = span / 25 * scale;
            auto poly = clip(v.corners(), {Scalar(h.a), Scalar(h.b), Scalar(h.c)});
            poly = clip(poly, {Scalar(-h.a), Scalar(-h.b), Scalar(w - h.c)});
            o << "<polygon id=\"range-" << h.id << "\" class=\"" << cls(h.id) << "\" points=\"" << points_attr(poly)
              << "\"/>\n";
        }
    }
    o << "</g>\n<g id=\"S\">\n";
    for (std::size_t k = 0; k < doc.s.size(); ++k) {
        o << "<circle id=\"s-" << k << "\" class=\"s\" cx=\"" << num(doc.s[k].x) << "\" cy=\"" << num(-doc.s[k].y)
          << "\" r=\"" << num(r) << "\"/>\n";
    }
    o << "</g>\n<g id=\"Sprime\">\n";
    for (std::size_t k = 0; k < doc.sprime.size(); ++k) {
        o << "<circle id=\"sprime-" << k << "\" class=\"sprime\" cx=\"" << num(doc.sprime[k].x) << "\" cy=\""
          << num(-doc.sprime[k].y) << "\" r=\"" << num(r) << "\"/>\n";
    }
    o << "</g>\n</svg>\n";
    return o.str();
}

}  // namespace mmgsc
