#pragma once

// The fractional set-cover programs: minimum membership (variables x_0 ..
// x_{m-1} for the ranges in list order, then y) and minimum size.

#include <span>

#include "mmgsc/cover.hpp"
#include "mmgsc/lp.hpp"

namespace mmgsc {

namespace detail {

template <RangeList C>
LinearProgram cover_rows(std::span<const Point> s, const C& ranges, std::size_t extra) {
    const std::size_t m = ranges.size();
    LinearProgram lp;
    lp.num_variables = m + extra;
    lp.objective.assign(lp.num_variables, Scalar(0));
    lp.bounds.assign(lp.num_variables, VariableBounds{});
    for (std::size_t j = 0; j < m; ++j) lp.bounds[j].upper = Scalar(1);
    for (const auto& p : s) {
        LinearConstraint row{std::vector<Scalar>(lp.num_variables), Relation::GreaterEqual, Scalar(1)};
        for (std::size_t j = 0; j < m; ++j) {
            if (contains(ranges[j], p)) row.coefficients[j] = 1;
        }
        lp.constraints.push_back(std::move(row));
    }
    return lp;
}

}  // namespace detail

template <RangeList C>
LinearProgram build_membership_lp(std::span<const Point> s, std::span<const Point> sprime, const C& ranges) {
    const std::size_t m = ranges.size();
    LinearProgram lp = detail::cover_rows(s, ranges, 1);
    lp.objective[m] = 1;
    for (const auto& p : sprime) {
        LinearConstraint row{std::vector<Scalar>(lp.num_variables), Relation::LessEqual, Scalar(0)};
        for (std::size_t j = 0; j < m; ++j) {
            if (contains(ranges[j], p)) row.coefficients[j] = 1;
        }
        row.coefficients[m] = -1;
        lp.constraints.push_back(std::move(row));
    }
    return lp;
}

template <RangeList C>
LinearProgram build_size_lp(std::span<const Point> s, const C& ranges) {
    LinearProgram lp = detail::cover_rows(s, ranges, 0);
    for (auto& c : lp.objective) c = 1;
    return lp;
}

// Range weights of an optimal solution of either program.
template <RangeList C>
FractionalCover fractional_from(const LPSolution& sol, const C& ranges) {
    FractionalCover w;
    for (std::size_t j = 0; j < ranges.size(); ++j) w[ranges[j].id] = sol.assignment.at(j);
    return w;
}

}  // namespace mmgsc
