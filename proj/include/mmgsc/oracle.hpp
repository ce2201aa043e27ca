#pragma once

// Exhaustive ground truth. Everything works on 64-bit range masks built
// straight from the containment predicates, sharing no code with the solvers.

#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mmgsc/geometry.hpp"

namespace mmgsc {

struct OracleBudget {
    std::size_t max_ranges = 24;
    std::chrono::milliseconds time_cap{60'000};
};

struct OracleResult {
    std::size_t value = 0;
    std::vector<RangeId> ids;  // witness, ascending
};

template <RangeList C>
bool verify_cover(std::span<const Point> s, std::span<const RangeId> ids, const C& ranges) {
    for (const auto& p : s) {
        bool hit = false;
        for (const auto& r : ranges) {
            if (!contains(r, p)) continue;
            for (RangeId id : ids) hit = hit || id == r.id;
            if (hit) break;
        }
        if (!hit) return false;
    }
    return true;
}

template <RangeList C>
std::size_t memb_eval(std::span<const Point> sprime, std::span<const RangeId> ids, const C& ranges) {
    std::size_t best = 0;
    for (const auto& p : sprime) {
        std::size_t n = 0;
        for (const auto& r : ranges) {
            if (!contains(r, p)) continue;
            for (RangeId id : ids) n += id == r.id ? 1 : 0;
        }
        best = std::max(best, n);
    }
    return best;
}

namespace oracle_detail {

using Mask = std::uint64_t;

class Clock {
public:
    explicit Clock(const OracleBudget& b) : cap_(b.time_cap), start_(std::chrono::steady_clock::now()) {}
    void tick() {
        if ((++n_ & 0xFFF) == 0 && std::chrono::steady_clock::now() - start_ > cap_) {
            throw BudgetExceeded("oracle time cap exceeded");
        }
    }

private:
    std::chrono::milliseconds cap_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t n_ = 0;
};

template <RangeList C>
std::vector<Mask> point_masks(std::span<const Point> pts, const C& ranges) {
    std::vector<Mask> out;
    out.reserve(pts.size());
    for (const auto& p : pts) {
        Mask m = 0;
        for (std::size_t j = 0; j < ranges.size(); ++j) {
            if (contains(ranges[j], p)) m |= Mask{1} << j;
        }
        out.push_back(m);
    }
    return out;
}

template <RangeList C>
void check_budget(const C& ranges, const OracleBudget& budget) {
    if (ranges.size() > budget.max_ranges || ranges.size() > 63) {
        throw BudgetExceeded("instance has " + std::to_string(ranges.size()) + " ranges, budget allows " +
                             std::to_string(std::min<std::size_t>(budget.max_ranges, 63)));
    }
}

inline void require_cover(const std::vector<Mask>& cover) {
    for (std::size_t k = 0; k < cover.size(); ++k) {
        if (cover[k] == 0) throw Uncoverable(k);
    }
}

inline bool covers(const std::vector<Mask>& cover, Mask z) {
    for (Mask m : cover) {
        if ((m & z) == 0) return false;
    }
    return true;
}

inline std::size_t load(const std::vector<Mask>& loads, Mask z) {
    std::size_t best = 0;
    for (Mask m : loads) best = std::max<std::size_t>(best, static_cast<std::size_t>(std::popcount(m & z)));
    return best;
}

// Visits subsets in (size, lexicographic) order, skipping any subset whose
// load already exceeds `cap`; stops at the first covering subset.
inline std::optional<Mask> first_cover(std::size_t m, const std::vector<Mask>& cover, const std::vector<Mask>& loads,
                                       std::size_t cap, Clock& clock) {
    std::vector<std::size_t> pick;
    std::optional<Mask> found;
    auto rec = [&](auto&& self, std::size_t next, std::size_t left, Mask z) -> bool {
        clock.tick();
        if (load(loads, z) > cap) return false;
        if (left == 0) {
            if (covers(cover, z)) {
                found = z;
                return true;
            }
            return false;
        }
        for (std::size_t j = next; j + left <= m; ++j) {
            if (self(self, j + 1, left - 1, z | (Mask{1} << j))) return true;
        }
        return false;
    };
    for (std::size_t size = 0; size <= m; ++size) {
        if (rec(rec, 0, size, 0)) return found;
    }
    return std::nullopt;
}

template <RangeList C>
std::vector<RangeId> ids_of(Mask z, const C& ranges) {
    std::vector<RangeId> out;
    for (std::size_t j = 0; j < ranges.size(); ++j) {
        if (z & (Mask{1} << j)) out.push_back(ranges[j].id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Grid points where some edge abscissa meets some edge ordinate, as masks of
// the squares containing them.
inline std::vector<Mask> ply_masks(std::span<const UnitSquare> squares) {
    std::vector<Scalar> xs, ys;
    for (const auto& q : squares) {
        xs.push_back(q.tr.x - 1);
        xs.push_back(q.tr.x);
        ys.push_back(q.tr.y - 1);
        ys.push_back(q.tr.y);
    }
    std::vector<Mask> out;
    for (const auto& x : xs) {
        for (const auto& y : ys) {
            Mask m = 0;
            for (std::size_t j = 0; j < squares.size(); ++j) {
                if (square_contains(squares[j], Point{x, y})) m |= Mask{1} << j;
            }
            out.push_back(m);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline OracleResult sweep_by_cap(std::size_t m, const std::vector<Mask>& cover, const std::vector<Mask>& loads,
                                 Clock& clock, auto&& ids) {
    for (std::size_t cap = 0;; ++cap) {
        if (auto z = first_cover(m, cover, loads, cap, clock)) return {cap, ids(*z)};
    }
}

inline OracleResult scan_all(std::size_t m, const std::vector<Mask>& cover, const std::vector<Mask>& loads,
                             Clock& clock, auto&& ids) {
    std::optional<Mask> best;
    std::size_t best_value = 0;
    for (Mask z = 0; z < (Mask{1} << m); ++z) {
        clock.tick();
        if (!covers(cover, z)) continue;
        const std::size_t v = load(loads, z);
        if (!best || v < best_value) {
            best = z;
            best_value = v;
        }
    }
    return {best_value, ids(*best)};
}

}  // namespace oracle_detail

// Minimum membership of S' over all covers of S, by raising the allowed
// membership from 0 and enumerating subsets in (size, lexicographic) order.
template <RangeList C>
OracleResult exact_mmgsc_bruteforce(std::span<const Point> s, std::span<const Point> sprime, const C& ranges,
                                    const OracleBudget& budget = {}) {
    using namespace oracle_detail;
    check_budget(ranges, budget);
    const auto cover = point_masks(s, ranges);
    require_cover(cover);
    Clock clock(budget);
    return sweep_by_cap(ranges.size(), cover, point_masks(sprime, ranges), clock,
                        [&](Mask z) { return ids_of(z, ranges); });
}

// Same optimum by a plain binary-counting scan of every subset.
template <RangeList C>
OracleResult exact_mmgsc_bruteforce_scan(std::span<const Point> s, std::span<const Point> sprime,
                                         const C& ranges, const OracleBudget& budget = {}) {
    using namespace oracle_detail;
    check_budget(ranges, budget);
    const auto cover = point_masks(s, ranges);
    require_cover(cover);
    Clock clock(budget);
    return scan_all(ranges.size(), cover, point_masks(sprime, ranges), clock,
                    [&](Mask z) { return ids_of(z, ranges); });
}

template <RangeList C>
OracleResult exact_minsize_bruteforce(std::span<const Point> s, const C& ranges,
                                      const OracleBudget& budget = {}) {
    using namespace oracle_detail;
    check_budget(ranges, budget);
    const auto cover = point_masks(s, ranges);
    require_cover(cover);
    Clock clock(budget);
    const Mask all = ranges.empty() ? 0 : (~Mask{0} >> (64 - ranges.size()));
    const auto z = first_cover(ranges.size(), cover, {all}, ranges.size(), clock);
    auto ids = ids_of(*z, ranges);
    return {ids.size(), std::move(ids)};
}

template <RangeList C>
OracleResult exact_minsize_bruteforce_scan(std::span<const Point> s, const C& ranges,
                                           const OracleBudget& budget = {}) {
    using namespace oracle_detail;
    check_budget(ranges, budget);
    const auto cover = point_masks(s, ranges);
    require_cover(cover);
    Clock clock(budget);
    const Mask all = ranges.empty() ? 0 : (~Mask{0} >> (64 - ranges.size()));
    return scan_all(ranges.size(), cover, {all}, clock, [&](Mask z) { return ids_of(z, ranges); });
}

inline OracleResult exact_mpgsc_bruteforce(std::span<const Point> s, std::span<const UnitSquare> squares,
                                           const OracleBudget& budget = {}) {
    using namespace oracle_detail;
    check_budget(std::span<const UnitSquare>(squares), budget);
    const auto cover = point_masks(s, squares);
    require_cover(cover);
    Clock clock(budget);
    return sweep_by_cap(squares.size(), cover, ply_masks(squares), clock,
                        [&](Mask z) { return ids_of(z, squares); });
}

inline OracleResult exact_mpgsc_bruteforce_scan(std::span<const Point> s, std::span<const UnitSquare> squares,
                                                const OracleBudget& budget = {}) {
    using namespace oracle_detail;
    check_budget(std::span<const UnitSquare>(squares), budget);
    const auto cover = point_masks(s, squares);
    require_cover(cover);
    Clock clock(budget);
    return scan_all(squares.size(), cover, ply_masks(squares), clock, [&](Mask z) { return ids_of(z, squares); });
}

}  // namespace mmgsc
