#pragma once

// Minimum-ply cover with unit squares: per-cell small covers on the unit grid.

#include <algorithm>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mmgsc/squares.hpp"

namespace mmgsc {

struct PlyReport {
    std::size_t ply = 0;
    std::optional<Point> witness;
    std::vector<std::pair<GridCell, std::size_t>> cell_sizes;  // filled by solve_mpgsc
};

// Abscissas and ordinates of all square edges, sorted and distinct. For closed
// boxes the deepest point can be taken on this grid.
inline std::pair<std::vector<Scalar>, std::vector<Scalar>> edge_grid(std::span<const UnitSquare> squares) {
    std::vector<Scalar> xs, ys;
    for (const auto& q : squares) {
        xs.push_back(q.left());
        xs.push_back(q.right());
        ys.push_back(q.bottom());
        ys.push_back(q.top());
    }
    for (auto* v : {&xs, &ys}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    return {std::move(xs), std::move(ys)};
}

// Maximum depth over the plane; the witness is the first deepest grid point
// in (x, y) order.
inline PlyReport ply(std::span<const UnitSquare> squares) {
    PlyReport out;
    if (squares.empty()) return out;
    const auto [xs, ys] = edge_grid(squares);
    for (const auto& x : xs) {
        std::vector<const UnitSquare*> column;
        for (const auto& q : squares) {
            if (q.left() <= x && x <= q.right()) column.push_back(&q);
        }
        if (column.size() <= out.ply) continue;
        for (const auto& y : ys) {
            std::size_t d = 0;
            for (const auto* q : column) d += (q->bottom() <= y && y <= q->top()) ? 1 : 0;
            if (d > out.ply) {
                out.ply = d;
                out.witness = Point{x, y};
            }
        }
    }
    return out;
}

// Small cover of a cell's points: size LP, corner split, exact staircase cover
// per corner. Size is at most 4 times the LP value.
inline CoverSolution min_size_cell_cover_approx(std::span<const Point> s, std::span<const UnitSquare> squares,
                                                const GridCell& cell, Scalar* lp_value = nullptr) {
    require_coverable(s, squares);
    if (s.empty()) {
        if (lp_value) *lp_value = 0;
        return {};
    }
    const auto sol = solve_lp(build_size_lp(s, squares));
    if (!sol.optimal()) throw std::logic_error("size LP of a coverable cell is not optimal");
    if (lp_value) *lp_value = sol.value;
    const auto part = corner_partition(s, squares, cell, fractional_from(sol, squares));
    std::vector<RangeId> ids;
    for (Corner c : kCorners) {
        const auto& bucket = part.buckets[corner_index(c)];
        if (bucket.points.empty()) continue;
        const auto qmax = maximal_squares(bucket.squares, cell, c);
        const auto chosen = quadrant_greedy_cover(bucket.points, std::span<const UnitSquare>(qmax), cell, c);
        ids.insert(ids.end(), chosen.begin(), chosen.end());
    }
    normalize_ids(ids);
    return {std::move(ids), 0};
}

struct MpgscSolution {
    CoverSolution cover;  // memb stays 0: no S' in this problem
    PlyReport report;
};

inline MpgscSolution solve_mpgsc(std::span<const Point> s, std::span<const UnitSquare> squares) {
    require_coverable(s, squares);
    MpgscSolution out;
    std::vector<RangeId> ids;
    std::vector<std::pair<GridCell, std::size_t>> sizes;
    for (const auto& inst : grid_partition(s, squares)) {
        const auto cell = min_size_cell_cover_approx(inst.points, inst.ranges, inst.cell);
        sizes.emplace_back(inst.cell, cell.ids.size());
        ids.insert(ids.end(), cell.ids.begin(), cell.ids.end());
    }
    normalize_ids(ids);
    const auto chosen = select_ranges(squares, std::span<const RangeId>(ids));
    out.report = ply(std::span<const UnitSquare>(chosen));
    out.report.cell_sizes = std::move(sizes);
    out.cover.ids = std::move(ids);
    return out;
}

}  // namespace mmgsc
