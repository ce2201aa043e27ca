#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "mmgsc/geometry.hpp"

namespace mmgsc {

// Intersection of the boundary lines of two halfplanes; empty when parallel.
inline std::optional<Point> line_intersection(const Halfplane& g, const Halfplane& h) {
    const std::int64_t det = g.a * h.b - h.a * g.b;
    if (det == 0) return std::nullopt;
    const Scalar d(det);
    return Point{(Scalar(g.b) * h.c - Scalar(h.b) * g.c) / d, (Scalar(h.a) * g.c - Scalar(g.a) * h.c) / d};
}

inline bool on_line(const Halfplane& h, const Point& p) { return sign(h.eval(p)) == 0; }

// Side of every line: +1, 0 or -1.
inline std::vector<int> sign_vector(std::span<const Halfplane> lines, const Point& p) {
    std::vector<int> out;
    out.reserve(lines.size());
    for (const auto& l : lines) out.push_back(sign(l.eval(p)));
    return out;
}

namespace detail {

inline void sort_unique(std::vector<Scalar>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Midpoints of consecutive distinct values, padded by one sentinel below the
// minimum and one above the maximum. An empty input yields {0}.
inline std::vector<Scalar> gap_midpoints(std::vector<Scalar> values) {
    sort_unique(values);
    if (values.empty()) return {Scalar(0)};
    std::vector<Scalar> out;
    out.reserve(values.size() + 1);
    out.push_back(values.front() - 1);
    for (std::size_t k = 0; k + 1 < values.size(); ++k) out.push_back((values[k] + values[k + 1]) / 2);
    out.push_back(values.back() + 1);
    return out;
}

}  // namespace detail

// A point in the interior of every face of the arrangement of the boundary
// lines. Vertical slabs are cut at every intersection abscissa and every
// vertical line; within a slab the non-vertical lines are totally ordered, so
// one probe per gap on the slab's middle vertical hits every face.
inline std::vector<Point> face_sample_points(std::span<const Halfplane> lines) {
    std::vector<Scalar> xs;
    for (std::size_t u = 0; u < lines.size(); ++u) {
        if (lines[u].b == 0) xs.push_back(Scalar(-lines[u].c) / Scalar(lines[u].a));
        for (std::size_t v = u + 1; v < lines.size(); ++v) {
            if (auto p = line_intersection(lines[u], lines[v])) xs.push_back(p->x);
        }
    }
    std::vector<Point> out;
    for (const Scalar& x : detail::gap_midpoints(std::move(xs))) {
        std::vector<Scalar> ys;
        for (const auto& l : lines) {
            if (l.b == 0) continue;
            ys.push_back(-(Scalar(l.a) * x + Scalar(l.c)) / Scalar(l.b));
        }
        for (Scalar& y : detail::gap_midpoints(std::move(ys))) out.emplace_back(x, std::move(y));
    }
    return out;
}

}  // namespace mmgsc
