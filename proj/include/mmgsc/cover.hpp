#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mmgsc/geometry.hpp"

namespace mmgsc {

// Chosen range ids, kept sorted and duplicate-free, plus the membership of S'
// with respect to them.
struct CoverSolution {
    std::vector<RangeId> ids;
    std::size_t memb = 0;

    friend bool operator==(const CoverSolution&, const CoverSolution&) = default;
};

inline void normalize_ids(std::vector<RangeId>& ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

template <RangeList C>
const range_of_t<C>* find_range(const C& ranges, RangeId id) {
    for (const auto& r : ranges) {
        if (r.id == id) return &r;
    }
    return nullptr;
}

template <RangeList C>
std::vector<range_of_t<C>> select_ranges(const C& ranges, std::span<const RangeId> ids) {
    std::vector<range_of_t<C>> out;
    out.reserve(ids.size());
    for (RangeId id : ids) {
        if (const auto* r = find_range(ranges, id)) out.push_back(*r);
    }
    return out;
}

// max over S' of the number of ranges containing the point; 0 when empty.
template <RangeList C>
std::size_t membership(std::span<const Point> sprime, const C& chosen) {
    std::size_t best = 0;
    for (const auto& p : sprime) best = std::max(best, depth(chosen, p));
    return best;
}

template <RangeList C>
std::size_t membership_of_ids(std::span<const Point> sprime, const C& ranges, std::span<const RangeId> ids) {
    return membership(sprime, select_ranges(ranges, ids));
}

// Index of the first point of S that no chosen range contains.
template <RangeList C>
std::optional<std::size_t> first_uncovered(std::span<const Point> s, const C& chosen) {
    for (std::size_t k = 0; k < s.size(); ++k) {
        const bool hit = std::any_of(chosen.begin(), chosen.end(), [&](const auto& r) { return contains(r, s[k]); });
        if (!hit) return k;
    }
    return std::nullopt;
}

template <RangeList C>
void require_coverable(std::span<const Point> s, const C& ranges) {
    if (auto k = first_uncovered(s, ranges)) throw Uncoverable(*k);
}

template <RangeList C>
CoverSolution make_solution(std::vector<RangeId> ids, std::span<const Point> sprime, const C& ranges) {
    normalize_ids(ids);
    CoverSolution out;
    out.memb = membership_of_ids(sprime, ranges, std::span<const RangeId>(ids));
    out.ids = std::move(ids);
    return out;
}

// Weight per range id, each in [0, 1].
using FractionalCover = std::map<RangeId, Scalar>;

template <RangeList C>
Scalar membership_of_fractional(std::span<const Point> sprime, const FractionalCover& w, const C& ranges) {
    Scalar best = 0;
    for (const auto& p : sprime) {
        Scalar load = 0;
        for (const auto& r : ranges) {
            if (!contains(r, p)) continue;
            if (auto it = w.find(r.id); it != w.end()) load += it->second;
        }
        if (load > best) best = load;
    }
    return best;
}

}  // namespace mmgsc
