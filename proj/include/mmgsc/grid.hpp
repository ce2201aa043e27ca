#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "mmgsc/geometry.hpp"

namespace mmgsc {

// Grid cell [i, i+1) x [j, j+1) for point assignment; the closed cell
// [i, i+1] x [j, j+1] for range intersection.
struct GridCell {
    std::int64_t i = 0;
    std::int64_t j = 0;

    friend auto operator<=>(const GridCell&, const GridCell&) = default;
};

struct Box {
    Point lo;
    Point hi;
};

inline Box extent(const UnitSquare& q) { return {{q.left(), q.bottom()}, q.tr}; }

inline GridCell cell_of(const Point& p) {
    return {floor_of(p.x).get_si(), floor_of(p.y).get_si()};
}

inline bool closed_cell_meets(const GridCell& cell, const Box& box) {
    const Scalar i(cell.i), j(cell.j);
    return i <= box.hi.x && box.lo.x <= i + 1 && j <= box.hi.y && box.lo.y <= j + 1;
}

template <class Range>
struct CellInstance {
    GridCell cell;
    std::vector<Point> points;
    std::vector<std::size_t> point_index;  // positions in the partitioned point list
    std::vector<Range> ranges;
};

// Splits S over the unit grid. Every point lands in exactly one cell; every
// range is listed in each nonempty cell its closed extent meets. Cells are
// returned in (i, j) order.
template <class Range, class ExtentFn>
std::vector<CellInstance<Range>> grid_partition(std::span<const Point> points, std::span<const Range> ranges,
                                                ExtentFn&& extent_of) {
    std::map<GridCell, CellInstance<Range>> cells;
    for (std::size_t k = 0; k < points.size(); ++k) {
        const GridCell c = cell_of(points[k]);
        auto& inst = cells[c];
        inst.cell = c;
        inst.points.push_back(points[k]);
        inst.point_index.push_back(k);
    }
    for (const auto& r : ranges) {
        const Box box = extent_of(r);
        for (auto& [cell, inst] : cells) {
            if (closed_cell_meets(cell, box)) inst.ranges.push_back(r);
        }
    }
    std::vector<CellInstance<Range>> out;
    out.reserve(cells.size());
    for (auto& [cell, inst] : cells) out.push_back(std::move(inst));
    return out;
}

inline std::vector<CellInstance<UnitSquare>> grid_partition(std::span<const Point> points,
                                                            std::span<const UnitSquare> squares) {
    return grid_partition<UnitSquare>(points, squares, [](const UnitSquare& q) { return extent(q); });
}

}  // namespace mmgsc
