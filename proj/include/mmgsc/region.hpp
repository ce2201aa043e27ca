#pragma once

// Convex regions given as intersections of closed halfplanes, and the
// complement region of a union of halfplanes.

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "mmgsc/geometry.hpp"

namespace mmgsc {

// One non-redundant constraint of a region, with the part of its boundary line
// that lies on the region. The boundary is parametrized as base + t * (-b, a);
// `from` / `to` are the finite ends, absent when the edge runs to infinity.
struct Facet {
    Halfplane constraint;
    Point base;
    std::optional<Point> from;
    std::optional<Point> to;
};

// Closed convex region. `empty` means the interior is empty, which is the only
// notion of emptiness a closure of an open complement can have. When not
// empty, `facets` is the irreducible bounding list.
struct ConvexRegion {
    std::vector<Facet> facets;
    bool empty = false;
    bool bounded = false;

    std::vector<Halfplane> halfplanes() const {
        std::vector<Halfplane> out;
        out.reserve(facets.size());
        for (const auto& f : facets) out.push_back(f.constraint);
        return out;
    }

    bool contains(const Point& p) const {
        if (empty) return false;
        return std::all_of(facets.begin(), facets.end(),
                           [&](const Facet& f) { return halfplane_contains(f.constraint, p); });
    }

    bool contains_in_interior(const Point& p) const {
        if (empty) return false;
        return std::all_of(facets.begin(), facets.end(), [&](const Facet& f) { return sign(f.constraint.eval(p)) > 0; });
    }
};

namespace detail {

struct Direction {
    std::int64_t a;
    std::int64_t b;
    friend bool operator==(const Direction&, const Direction&) = default;
};

inline std::int64_t gcd64(std::int64_t x, std::int64_t y) { return std::gcd(x < 0 ? -x : x, y < 0 ? -y : y); }

inline Direction primitive(const Halfplane& h) {
    const std::int64_t g = gcd64(h.a, h.b);
    return {h.a / g, h.b / g};
}

// c normalized by the primitive scale, so that parallel same-direction
// constraints compare by tightness: smaller means tighter.
inline Scalar normalized_offset(const Halfplane& h) { return Scalar(h.c) / Scalar(gcd64(h.a, h.b)); }

inline Point point_on_line(const Halfplane& h) {
    if (h.b != 0) return {Scalar(0), Scalar(-h.c) / Scalar(h.b)};
    return {Scalar(-h.c) / Scalar(h.a), Scalar(0)};
}

inline Point along(const Halfplane& h) { return {Scalar(-h.b), Scalar(h.a)}; }

}  // namespace detail

// Exact intersection of closed halfplanes (constraint >= 0). Duplicate and
// dominated parallel constraints are dropped first (ties keep the lowest id);
// a remaining constraint is a facet iff the part of its line satisfying all
// others has positive length.
inline ConvexRegion intersect_halfplanes(std::span<const Halfplane> constraints) {
    std::vector<Halfplane> kept;
    for (const auto& h : constraints) {
        const auto dir = detail::primitive(h);
        const Scalar off = detail::normalized_offset(h);
        bool dominated = false;
        for (auto& k : kept) {
            if (detail::primitive(k) != dir) continue;
            const Scalar koff = detail::normalized_offset(k);
            if (off < koff || (off == koff && h.id < k.id)) {
                k = h;
            }
            dominated = true;
            break;
        }
        if (!dominated) kept.push_back(h);
    }

    ConvexRegion region;
    for (std::size_t u = 0; u < kept.size(); ++u) {
        const auto du = detail::primitive(kept[u]);
        for (std::size_t v = u + 1; v < kept.size(); ++v) {
            const auto dv = detail::primitive(kept[v]);
            if (du.a == -dv.a && du.b == -dv.b &&
                sign(detail::normalized_offset(kept[u]) + detail::normalized_offset(kept[v])) <= 0) {
                region.empty = true;
                return region;
            }
        }
    }

    for (std::size_t u = 0; u < kept.size(); ++u) {
        const Halfplane& h = kept[u];
        const Point base = detail::point_on_line(h);
        const Point d = detail::along(h);
        std::optional<Scalar> lo, hi;
        bool dead = false;
        for (std::size_t v = 0; v < kept.size() && !dead; ++v) {
            if (v == u) continue;
            const Halfplane& g = kept[v];
            const Scalar val = g.eval(base);
            const Scalar slope = Scalar(g.a) * d.x + Scalar(g.b) * d.y;
            const int s = sign(slope);
            if (s == 0) {
                if (sign(val) < 0) dead = true;
                continue;
            }
            const Scalar t = -val / slope;
            if (s > 0) {
                if (!lo || t > *lo) lo = t;
            } else {
                if (!hi || t < *hi) hi = t;
            }
        }
        if (dead) continue;
        if (lo && hi && *lo >= *hi) continue;
        Facet f{h, base, std::nullopt, std::nullopt};
        if (lo) f.from = base + *lo * d;
        if (hi) f.to = base + *hi * d;
        region.facets.push_back(std::move(f));
    }

    if (!kept.empty() && region.facets.empty()) {
        region.empty = true;
        return region;
    }
    region.bounded = !region.facets.empty() &&
                     std::all_of(region.facets.begin(), region.facets.end(),
                                 [](const Facet& f) { return f.from.has_value() && f.to.has_value(); });
    return region;
}

// Closure of the plane minus the union of Z.
inline ConvexRegion complement_region(std::span<const Halfplane> zs) {
    std::vector<Halfplane> comps;
    comps.reserve(zs.size());
    for (const auto& h : zs) comps.push_back(h.complement());
    return intersect_halfplanes(comps);
}

inline bool covers_plane(std::span<const Halfplane> zs) { return complement_region(zs).empty; }

// inner is a subset of outer. Uses the representation inner = conv(V) + cone(D)
// with V the finite facet ends (or a point per facet line when it has none)
// and D the extreme rays of the recession cone.
inline bool region_subset(const ConvexRegion& inner, const ConvexRegion& outer) {
    if (inner.empty) return true;
    if (outer.empty) return false;
    if (outer.facets.empty()) return true;

    std::vector<Point> generators;
    for (const auto& f : inner.facets) {
        if (f.from) generators.push_back(*f.from);
        if (f.to) generators.push_back(*f.to);
        if (!f.from && !f.to) generators.push_back(f.base);
    }
    if (inner.facets.empty()) generators.emplace_back(Scalar(0), Scalar(0));

    std::vector<Point> candidates = {{Scalar(1), Scalar(0)}, {Scalar(-1), Scalar(0)}, {Scalar(0), Scalar(1)},
                                     {Scalar(0), Scalar(-1)}};
    for (const auto& f : inner.facets) {
        const Point d = detail::along(f.constraint);
        candidates.push_back(d);
        candidates.push_back(Scalar(-1) * d);
        candidates.push_back(f.constraint.normal());
    }
    std::vector<Point> rays;
    for (const auto& d : candidates) {
        const bool recedes = std::all_of(inner.facets.begin(), inner.facets.end(),
                                         [&](const Facet& f) { return sign(dot(f.constraint.normal(), d)) >= 0; });
        if (recedes) rays.push_back(d);
    }

    for (const auto& f : outer.facets) {
        for (const auto& v : generators) {
            if (sign(f.constraint.eval(v)) < 0) return false;
        }
        for (const auto& d : rays) {
            if (sign(dot(f.constraint.normal(), d)) < 0) return false;
        }
    }
    return true;
}

enum class UnionOrder { Equal, Subset, Superset, Incomparable };

// Classifies the union of Z against the union of Z2. `Subset` is strict.
inline UnionOrder union_compare(std::span<const Halfplane> z, std::span<const Halfplane> z2) {
    const ConvexRegion cz = complement_region(z);
    const ConvexRegion cz2 = complement_region(z2);
    const bool z_in_z2 = region_subset(cz2, cz);
    const bool z2_in_z = region_subset(cz, cz2);
    if (z_in_z2 && z2_in_z) return UnionOrder::Equal;
    if (z_in_z2) return UnionOrder::Subset;
    if (z2_in_z) return UnionOrder::Superset;
    return UnionOrder::Incomparable;
}

// No member can be dropped without shrinking the union.
inline bool is_irreducible(std::span<const Halfplane> zs) {
    for (std::size_t k = 0; k < zs.size(); ++k) {
        std::vector<Halfplane> rest;
        for (std::size_t j = 0; j < zs.size(); ++j) {
            if (j != k) rest.push_back(zs[j]);
        }
        if (union_compare(rest, zs) != UnionOrder::Subset) return false;
    }
    return true;
}

}  // namespace mmgsc
