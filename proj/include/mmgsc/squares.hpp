#pragma once

// Constant-factor minimum-membership cover with unit squares: grid cells,
// LP corner split, one-corner staircase covers.

#include <algorithm>
#include <array>
#include <optional>
#include <span>
#include <vector>

#include "mmgsc/cover.hpp"
#include "mmgsc/cover_lp.hpp"
#include "mmgsc/grid.hpp"

namespace mmgsc {

enum class Corner { BottomLeft = 1, BottomRight = 2, TopRight = 3, TopLeft = 4 };

inline constexpr std::array<Corner, 4> kCorners = {Corner::BottomLeft, Corner::BottomRight, Corner::TopRight,
                                                   Corner::TopLeft};

inline std::size_t corner_index(Corner c) { return static_cast<std::size_t>(c) - 1; }

inline Point corner_point(const GridCell& cell, Corner c) {
    const Scalar i(cell.i), j(cell.j);
    switch (c) {
        case Corner::BottomLeft: return {i, j};
        case Corner::BottomRight: return {i + 1, j};
        case Corner::TopRight: return {i + 1, j + 1};
        case Corner::TopLeft: return {i, j + 1};
    }
    return {i, j};
}

// Square reduced to its top-right corner in the frame where the designated
// cell corner is the origin and the cell is [0, 1]^2. Coordinates are not
// clipped: X, Y lie in [0, 2].
struct Quadrant {
    RangeId id = 0;
    Scalar x;
    Scalar y;
};

// Reflection taking `corner` of `cell` to the bottom-left corner at the origin.
struct LocalFrame {
    GridCell cell;
    Corner corner = Corner::BottomLeft;

    bool flip_x() const { return corner == Corner::BottomRight || corner == Corner::TopRight; }
    bool flip_y() const { return corner == Corner::TopRight || corner == Corner::TopLeft; }

    Point point(const Point& p) const {
        const Scalar i(cell.i), j(cell.j);
        return {flip_x() ? Scalar(i + 1 - p.x) : Scalar(p.x - i), flip_y() ? Scalar(j + 1 - p.y) : Scalar(p.y - j)};
    }

    Quadrant quadrant(const UnitSquare& q) const {
        const Scalar i(cell.i), j(cell.j);
        return {q.id, flip_x() ? Scalar(i + 2 - q.tr.x) : Scalar(q.tr.x - i),
                flip_y() ? Scalar(j + 2 - q.tr.y) : Scalar(q.tr.y - j)};
    }
};

inline bool quadrant_contains(const Quadrant& q, const Point& u) {
    return q.x - 1 <= u.x && u.x <= q.x && q.y - 1 <= u.y && u.y <= q.y;
}

struct CornerBucket {
    std::vector<Point> points;
    std::vector<std::size_t> point_index;  // positions in the cell's point list
    std::vector<UnitSquare> squares;
    std::vector<Scalar> delta;  // per point, the LP weight this bucket puts on it
};

struct CornerPartition {
    GridCell cell;
    std::array<CornerBucket, 4> buckets;
    FractionalCover weights;
};

// Each square goes to the first corner (in kCorners order) it contains; each
// point to the bucket with the largest LP weight on it, ties to the lowest.
inline CornerPartition corner_partition(std::span<const Point> s, std::span<const UnitSquare> squares,
                                        const GridCell& cell, const FractionalCover& x) {
    CornerPartition out;
    out.cell = cell;
    out.weights = x;
    for (const auto& q : squares) {
        bool placed = false;
        for (Corner c : kCorners) {
            if (square_contains(q, corner_point(cell, c))) {
                out.buckets[corner_index(c)].squares.push_back(q);
                placed = true;
                break;
            }
        }
        if (!placed) throw SquareWithoutCorner(q.id);
    }
    for (std::size_t k = 0; k < s.size(); ++k) {
        std::array<Scalar, 4> delta;
        for (std::size_t b = 0; b < 4; ++b) {
            for (const auto& q : out.buckets[b].squares) {
                if (!square_contains(q, s[k])) continue;
                if (auto it = x.find(q.id); it != x.end()) delta[b] += it->second;
            }
        }
        std::size_t best = 0;
        for (std::size_t b = 1; b < 4; ++b) {
            if (delta[b] > delta[best]) best = b;
        }
        auto& bucket = out.buckets[best];
        bucket.points.push_back(s[k]);
        bucket.point_index.push_back(k);
        bucket.delta.push_back(delta[best]);
    }
    return out;
}

// Squares not dominated by another square in the corner frame; of exact
// duplicates the lowest id survives. Order follows the input.
inline std::vector<UnitSquare> maximal_squares(std::span<const UnitSquare> squares, const GridCell& cell,
                                               Corner corner) {
    const LocalFrame frame{cell, corner};
    std::vector<Quadrant> local;
    local.reserve(squares.size());
    for (const auto& q : squares) local.push_back(frame.quadrant(q));
    std::vector<UnitSquare> out;
    for (std::size_t u = 0; u < local.size(); ++u) {
        bool dominated = false;
        for (std::size_t v = 0; v < local.size() && !dominated; ++v) {
            if (u == v) continue;
            const auto& a = local[u];
            const auto& b = local[v];
            if (a.x <= b.x && a.y <= b.y) {
                const bool same = a.x == b.x && a.y == b.y;
                dominated = !same || b.id < a.id;
            }
        }
        if (!dominated) out.push_back(squares[u]);
    }
    return out;
}

// Minimum-size cover of `points` by quadrants sharing the origin corner.
// Throws Uncoverable with the index into `points`.
inline std::vector<RangeId> quadrant_greedy_cover(std::span<const Point> points, std::span<const Quadrant> quads) {
    std::vector<bool> covered(points.size(), false);
    std::vector<RangeId> out;
    for (;;) {
        std::optional<std::size_t> pick;
        for (std::size_t k = 0; k < points.size(); ++k) {
            if (covered[k]) continue;
            if (!pick || points[k].x > points[*pick].x ||
                (points[k].x == points[*pick].x && points[k].y > points[*pick].y)) {
                pick = k;
            }
        }
        if (!pick) break;
        const Quadrant* best = nullptr;
        for (const auto& q : quads) {
            if (!quadrant_contains(q, points[*pick])) continue;
            if (!best || q.y > best->y || (q.y == best->y && (q.x > best->x || (q.x == best->x && q.id < best->id)))) {
                best = &q;
            }
        }
        if (!best) throw Uncoverable(*pick);
        out.push_back(best->id);
        for (std::size_t k = 0; k < points.size(); ++k) {
            if (!covered[k] && quadrant_contains(*best, points[k])) covered[k] = true;
        }
    }
    normalize_ids(out);
    return out;
}

inline std::vector<RangeId> quadrant_greedy_cover(std::span<const Point> s, std::span<const UnitSquare> squares,
                                                  const GridCell& cell, Corner corner) {
    const LocalFrame frame{cell, corner};
    std::vector<Point> pts;
    pts.reserve(s.size());
    for (const auto& p : s) pts.push_back(frame.point(p));
    std::vector<Quadrant> quads;
    quads.reserve(squares.size());
    for (const auto& q : squares) quads.push_back(frame.quadrant(q));
    return quadrant_greedy_cover(std::span<const Point>(pts), std::span<const Quadrant>(quads));
}

// Minimum-size cover of S by maximal squares; every square must contain
// `corner` of `cell` and S must lie in the cell.
inline CoverSolution solve_one_corner(std::span<const Point> s, std::span<const Point> sprime,
                                      std::span<const UnitSquare> squares, const GridCell& cell, Corner corner) {
    const auto qmax = maximal_squares(squares, cell, corner);
    auto ids = quadrant_greedy_cover(s, std::span<const UnitSquare>(qmax), cell, corner);
    return make_solution(std::move(ids), sprime, squares);
}

struct BucketTrace {
    Corner corner = Corner::BottomLeft;
    CoverSolution cover;
    Scalar fractional_memb;  // membership of S' under min(1, 4 x*) on the bucket's squares
};

struct CellSolution {
    GridCell cell;
    CoverSolution cover;
    bool zero_membership = false;  // solved by the squares that avoid S'
    std::optional<Scalar> y_star;
    std::optional<CornerPartition> partition;
    std::vector<BucketTrace> buckets;
};

namespace detail {

inline std::vector<Point> points_in_any(std::span<const Point> pts, std::span<const UnitSquare> squares) {
    std::vector<Point> out;
    for (const auto& p : pts) {
        if (std::any_of(squares.begin(), squares.end(), [&](const UnitSquare& q) { return square_contains(q, p); })) {
            out.push_back(p);
        }
    }
    return out;
}

}  // namespace detail

// S inside `cell`, every square meeting the closed cell.
inline CellSolution solve_cell(std::span<const Point> s, std::span<const Point> sprime,
                               std::span<const UnitSquare> squares, const GridCell& cell) {
    require_coverable(s, squares);
    CellSolution out;
    out.cell = cell;

    std::vector<UnitSquare> free;
    for (const auto& q : squares) {
        if (std::none_of(sprime.begin(), sprime.end(), [&](const Point& p) { return square_contains(q, p); })) {
            free.push_back(q);
        }
    }
    if (!first_uncovered(s, std::span<const UnitSquare>(free))) {
        std::vector<RangeId> ids;
        for (const auto& q : free) ids.push_back(q.id);
        out.cover = make_solution(std::move(ids), sprime, squares);
        out.zero_membership = true;
        return out;
    }

    const auto relevant = detail::points_in_any(sprime, squares);
    const auto lp = build_membership_lp(s, std::span<const Point>(relevant), squares);
    const auto sol = solve_lp(lp);
    if (!sol.optimal()) throw std::logic_error("membership LP of a coverable cell is not optimal");
    out.y_star = sol.value;
    const FractionalCover x = fractional_from(sol, squares);
    out.partition = corner_partition(s, squares, cell, x);

    std::vector<RangeId> ids;
    for (Corner c : kCorners) {
        const auto& bucket = out.partition->buckets[corner_index(c)];
        if (bucket.points.empty()) continue;
        BucketTrace trace;
        trace.corner = c;
        trace.cover = solve_one_corner(bucket.points, sprime, bucket.squares, cell, c);
        FractionalCover scaled;
        for (const auto& q : bucket.squares) scaled[q.id] = std::min(Scalar(1), Scalar(4 * x.at(q.id)));
        trace.fractional_memb =
            membership_of_fractional(sprime, scaled, std::span<const UnitSquare>(bucket.squares));
        ids.insert(ids.end(), trace.cover.ids.begin(), trace.cover.ids.end());
        out.buckets.push_back(std::move(trace));
    }
    out.cover = make_solution(std::move(ids), sprime, squares);
    return out;
}

inline CoverSolution solve_mmgsc_squares(std::span<const Point> s, std::span<const Point> sprime,
                                         std::span<const UnitSquare> squares,
                                         std::vector<CellSolution>* trace = nullptr) {
    require_coverable(s, squares);
    std::vector<RangeId> ids;
    for (const auto& inst : grid_partition(s, squares)) {
        auto cell = solve_cell(inst.points, sprime, inst.ranges, inst.cell);
        ids.insert(ids.end(), cell.cover.ids.begin(), cell.cover.ids.end());
        if (trace) trace->push_back(std::move(cell));
    }
    return make_solution(std::move(ids), sprime, squares);
}

}  // namespace mmgsc
