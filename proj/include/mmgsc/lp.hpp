#pragma once

// Exact rational linear programming: dense two-phase primal simplex with
// Bland's rule. Minimization only.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mmgsc/geometry.hpp"

namespace mmgsc {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct LinearConstraint {
    std::vector<Scalar> coefficients;  // one per variable
    Relation relation = Relation::GreaterEqual;
    Scalar rhs;
};

struct VariableBounds {
    Scalar lower = 0;
    std::optional<Scalar> upper;
};

struct LinearProgram {
    std::size_t num_variables = 0;
    std::vector<Scalar> objective;  // minimized
    std::vector<LinearConstraint> constraints;
    std::vector<VariableBounds> bounds;  // empty means every variable is >= 0
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPSolution {
    LPStatus status = LPStatus::Infeasible;
    Scalar value;
    std::vector<Scalar> assignment;

    bool optimal() const { return status == LPStatus::Optimal; }
};

namespace detail {

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows, std::vector<Scalar>(cols + 1)) {}

    Scalar& at(std::size_t r, std::size_t c) { return a_[r][c]; }
    Scalar& rhs(std::size_t r) { return a_[r][cols_]; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::vector<std::size_t>& basis() { return basis_; }

    void pivot(std::size_t r, std::size_t c) {
        const Scalar p = a_[r][c];
        for (auto& v : a_[r]) v /= p;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || sign(a_[i][c]) == 0) continue;
            const Scalar f = a_[i][c];
            for (std::size_t j = 0; j <= cols_; ++j) {
                if (sign(a_[r][j]) != 0) a_[i][j] -= f * a_[r][j];
            }
        }
        basis_[r] = c;
    }

    void drop_row(std::size_t r) {
        a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        --rows_;
    }

    // Minimizes cost . x over columns with allowed[c]. Returns false when
    // unbounded. Entering: lowest index with negative reduced cost. Leaving:
    // minimum ratio, ties to the lowest basic variable index.
    bool optimize(const std::vector<Scalar>& cost, const std::vector<bool>& allowed) {
        for (;;) {
            std::optional<std::size_t> entering;
            for (std::size_t c = 0; c < cols_ && !entering; ++c) {
                if (!allowed[c] || is_basic(c)) continue;
                Scalar reduced = cost[c];
                for (std::size_t r = 0; r < rows_; ++r) {
                    if (sign(a_[r][c]) != 0) reduced -= cost[basis_[r]] * a_[r][c];
                }
                if (sign(reduced) < 0) entering = c;
            }
            if (!entering) return true;
            std::optional<std::size_t> leaving;
            Scalar best;
            for (std::size_t r = 0; r < rows_; ++r) {
                if (sign(a_[r][*entering]) <= 0) continue;
                const Scalar ratio = a_[r][cols_] / a_[r][*entering];
                if (!leaving || ratio < best || (ratio == best && basis_[r] < basis_[*leaving])) {
                    leaving = r;
                    best = ratio;
                }
            }
            if (!leaving) return false;
            pivot(*leaving, *entering);
        }
    }

    bool is_basic(std::size_t c) const {
        for (auto b : basis_) {
            if (b == c) return true;
        }
        return false;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::vector<Scalar>> a_;
    std::vector<std::size_t> basis_;
};

}  // namespace detail

inline LPSolution solve_lp(const LinearProgram& lp) {
    const std::size_t n = lp.num_variables;
    if (lp.objective.size() != n) throw std::invalid_argument("objective length does not match variable count");
    if (!lp.bounds.empty() && lp.bounds.size() != n) throw std::invalid_argument("bounds length does not match variable count");

    auto lower = [&](std::size_t j) { return lp.bounds.empty() ? Scalar(0) : lp.bounds[j].lower; };

    // Shift to x = lower + x', x' >= 0, and turn upper bounds into rows.
    struct Row {
        std::vector<Scalar> coef;
        Relation rel;
        Scalar rhs;
    };
    std::vector<Row> rows;
    for (const auto& c : lp.constraints) {
        if (c.coefficients.size() != n) throw std::invalid_argument("constraint length does not match variable count");
        Row row{c.coefficients, c.relation, c.rhs};
        for (std::size_t j = 0; j < n; ++j) row.rhs -= c.coefficients[j] * lower(j);
        rows.push_back(std::move(row));
    }
    if (!lp.bounds.empty()) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!lp.bounds[j].upper) continue;
            Row row{std::vector<Scalar>(n), Relation::LessEqual, *lp.bounds[j].upper - lp.bounds[j].lower};
            row.coef[j] = 1;
            rows.push_back(std::move(row));
        }
    }
    for (auto& row : rows) {
        if (sign(row.rhs) < 0) {
            for (auto& v : row.coef) v = -v;
            row.rhs = -row.rhs;
            if (row.rel == Relation::LessEqual) row.rel = Relation::GreaterEqual;
            else if (row.rel == Relation::GreaterEqual) row.rel = Relation::LessEqual;
        }
    }

    // Columns: structural | slack or surplus per inequality row | artificial.
    const std::size_t m = rows.size();
    std::size_t slack_count = 0, art_count = 0;
    for (const auto& row : rows) {
        if (row.rel != Relation::Equal) ++slack_count;
        if (row.rel != Relation::LessEqual) ++art_count;
    }
    const std::size_t total = n + slack_count + art_count;
    detail::Tableau t(m, total);
    t.basis().assign(m, 0);
    std::vector<bool> artificial(total, false);
    {
        std::size_t s = n, a = n + slack_count;
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t j = 0; j < n; ++j) t.at(r, j) = rows[r].coef[j];
            t.rhs(r) = rows[r].rhs;
            if (rows[r].rel == Relation::LessEqual) {
                t.at(r, s) = 1;
                t.basis()[r] = s++;
            } else {
                if (rows[r].rel == Relation::GreaterEqual) t.at(r, s++) = -1;
                t.at(r, a) = 1;
                artificial[a] = true;
                t.basis()[r] = a++;
            }
        }
    }

    LPSolution out;
    if (art_count > 0) {
        std::vector<Scalar> phase1(total);
        for (std::size_t c = 0; c < total; ++c) phase1[c] = artificial[c] ? 1 : 0;
        t.optimize(phase1, std::vector<bool>(total, true));
        Scalar infeasibility = 0;
        for (std::size_t r = 0; r < t.rows(); ++r) {
            if (artificial[t.basis()[r]]) infeasibility += t.rhs(r);
        }
        if (sign(infeasibility) > 0) {
            out.status = LPStatus::Infeasible;
            return out;
        }
        // Drive zero-valued artificials out of the basis; rows with no
        // non-artificial entry are redundant.
        for (std::size_t r = 0; r < t.rows();) {
            if (!artificial[t.basis()[r]]) {
                ++r;
                continue;
            }
            std::optional<std::size_t> col;
            for (std::size_t c = 0; c < total && !col; ++c) {
                if (!artificial[c] && sign(t.at(r, c)) != 0) col = c;
            }
            if (col) {
                t.pivot(r, *col);
                ++r;
            } else {
                t.drop_row(r);
            }
        }
    }

    std::vector<Scalar> cost(total);
    for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j];
    std::vector<bool> allowed(total);
    for (std::size_t c = 0; c < total; ++c) allowed[c] = !artificial[c];
    if (!t.optimize(cost, allowed)) {
        out.status = LPStatus::Unbounded;
        return out;
    }

    out.status = LPStatus::Optimal;
    out.assignment.assign(n, Scalar(0));
    for (std::size_t r = 0; r < t.rows(); ++r) {
        if (t.basis()[r] < n) out.assignment[t.basis()[r]] = t.rhs(r);
    }
    out.value = 0;
    for (std::size_t j = 0; j < n; ++j) {
        out.assignment[j] += lower(j);
        out.value += lp.objective[j] * out.assignment[j];
    }
    return out;
}

// True iff `x` satisfies every row and bound of `lp` exactly.
inline bool satisfies(const LinearProgram& lp, const std::vector<Scalar>& x) {
    if (x.size() != lp.num_variables) return false;
    for (const auto& c : lp.constraints) {
        Scalar lhs = 0;
        for (std::size_t j = 0; j < x.size(); ++j) lhs += c.coefficients[j] * x[j];
        const bool ok = c.relation == Relation::LessEqual      ? lhs <= c.rhs
                        : c.relation == Relation::GreaterEqual ? lhs >= c.rhs
                                                               : lhs == c.rhs;
        if (!ok) return false;
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        const Scalar lo = lp.bounds.empty() ? Scalar(0) : lp.bounds[j].lower;
        if (x[j] < lo) return false;
        if (!lp.bounds.empty() && lp.bounds[j].upper && x[j] > *lp.bounds[j].upper) return false;
    }
    return true;
}

}  // namespace mmgsc
