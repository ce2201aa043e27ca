#pragma once

// Named solvers over instance documents and their run reports.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmgsc/halfplanes.hpp"
#include "mmgsc/io.hpp"
#include "mmgsc/oracle.hpp"
#include "mmgsc/ply.hpp"

namespace mmgsc {

enum class Objective { Membership, Ply };

inline const char* objective_name(Objective o) { return o == Objective::Membership ? "membership" : "ply"; }

inline std::optional<Objective> objective_from_name(const std::string& s) {
    if (s == "membership") return Objective::Membership;
    if (s == "ply") return Objective::Ply;
    return std::nullopt;
}

// 64-bit FNV-1a of the canonical serialization, as 16 hex digits.
inline std::string instance_digest(const InstanceDoc& doc) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize_instance(doc)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct RunReport {
    std::string solver;
    RangeKind kind = RangeKind::Squares;
    Objective objective = Objective::Membership;
    std::string digest;
    std::vector<RangeId> cover;
    std::optional<std::size_t> memb;
    std::optional<std::size_t> ply;
    std::optional<Scalar> lp_value;
    std::optional<std::size_t> oracle_value;
    double millis = 0;
    json details = json::object();

    std::size_t size() const { return cover.size(); }
    std::size_t value() const { return objective == Objective::Membership ? memb.value_or(0) : ply.value_or(0); }
};

struct SolveOptions {
    Scalar eps{1, 2};
    bool with_oracle = false;
    OracleBudget budget;
};

// solver -> (kind, objective). "oracle" runs for any pairing.
inline const std::vector<std::string>& solver_names() {
    static const std::vector<std::string> names = {"cells", "mpgsc", "exact", "additive", "ptas", "oracle"};
    return names;
}

inline std::optional<std::string> default_solver(RangeKind kind, Objective objective) {
    if (kind == RangeKind::Squares) return objective == Objective::Membership ? "cells" : "mpgsc";
    if (objective == Objective::Membership) return "ptas";
    return std::nullopt;
}

inline bool solver_supports(const std::string& solver, RangeKind kind, Objective objective) {
    if (solver == "oracle") return kind == RangeKind::Squares || objective == Objective::Membership;
    if (solver == "cells") return kind == RangeKind::Squares && objective == Objective::Membership;
    if (solver == "mpgsc") return kind == RangeKind::Squares && objective == Objective::Ply;
    if (solver == "exact" || solver == "additive" || solver == "ptas") {
        return kind == RangeKind::Halfplanes && objective == Objective::Membership;
    }
    return false;
}

namespace report_detail {

template <class F>
auto timed(double& millis, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    auto out = f();
    millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

inline std::optional<Scalar> membership_lp_value(const InstanceDoc& doc) {
    const auto lp = doc.kind == RangeKind::Squares ? build_membership_lp(doc.s, doc.sprime, doc.squares)
                                                   : build_membership_lp(doc.s, doc.sprime, doc.halfplanes);
    const auto sol = solve_lp(lp);
    if (!sol.optimal()) return std::nullopt;
    return sol.value;
}

inline std::optional<std::size_t> oracle_value(const InstanceDoc& doc, Objective objective, const OracleBudget& budget,
                                               json& details) {
    try {
        if (objective == Objective::Ply) return exact_mpgsc_bruteforce(doc.s, doc.squares, budget).value;
        return doc.kind == RangeKind::Squares ? exact_mmgsc_bruteforce(doc.s, doc.sprime, doc.squares, budget).value
                                              : exact_mmgsc_bruteforce(doc.s, doc.sprime, doc.halfplanes, budget).value;
    } catch (const BudgetExceeded& e) {
        details["oracle"] = e.what();
        return std::nullopt;
    }
}

}  // namespace report_detail

// Throws Uncoverable, BudgetExceeded (solver "oracle" only) and
// std::invalid_argument for a solver that does not fit the document.
inline RunReport run_solver(const InstanceDoc& doc, const std::string& solver, Objective objective,
                            const SolveOptions& opt = {}) {
    using namespace report_detail;
    if (!solver_supports(solver, doc.kind, objective)) {
        throw std::invalid_argument("solver '" + solver + "' does not handle " + kind_name(doc.kind) + " with objective " +
                                    objective_name(objective));
    }
    RunReport r;
    r.solver = solver;
    r.kind = doc.kind;
    r.objective = objective;
    r.digest = instance_digest(doc);
    const auto& s = doc.s;
    const auto& sp = doc.sprime;
    if (solver == "cells") {
        std::vector<CellSolution> cells;
        const auto sol = timed(r.millis, [&] { return solve_mmgsc_squares(s, sp, doc.squares, &cells); });
        r.cover = sol.ids;
        r.memb = sol.memb;
        Scalar best = 0;
        std::size_t zero = 0;
        for (const auto& c : cells) {
            if (c.y_star && *c.y_star > best) best = *c.y_star;
            zero += c.zero_membership ? 1 : 0;
        }
        r.lp_value = best;
        r.details["cells"] = cells.size();
        r.details["zero_membership_cells"] = zero;
    } else if (solver == "mpgsc") {
        const auto sol = timed(r.millis, [&] { return solve_mpgsc(s, doc.squares); });
        r.cover = sol.cover.ids;
        r.ply = sol.report.ply;
        std::size_t largest = 0;
        for (const auto& [cell, n] : sol.report.cell_sizes) largest = std::max(largest, n);
        r.details["cells"] = sol.report.cell_sizes.size();
        r.details["largest_cell_cover"] = largest;
    } else if (solver == "exact") {
        MembershipDecision trace;
        const auto sol = timed(r.millis, [&] { return exact_mmgsc_halfplanes(s, sp, doc.halfplanes, &trace); });
        r.cover = sol.ids;
        r.memb = sol.memb;
        r.details["witness_edges"] = trace.witness ? trace.witness->edges.size() : 0;
    } else if (solver == "additive") {
        AdditiveTrace trace;
        const auto sol = timed(r.millis, [&] { return additive_error_cover(s, sp, doc.halfplanes, &trace); });
        r.cover = sol.ids;
        r.memb = sol.memb;
        r.details["branch"] = branch_name(trace.branch);
    } else if (solver == "ptas") {
        PtasTrace trace;
        const auto sol = timed(r.millis, [&] { return ptas(s, sp, doc.halfplanes, opt.eps, &trace); });
        r.cover = sol.ids;
        r.memb = sol.memb;
        r.details["eps"] = to_string(opt.eps);
        r.details["threshold"] = to_string(trace.threshold);
        r.details["branch"] = trace.branch == PtasBranch::Exact ? "exact" : "additive";
    } else {
        const auto res = timed(r.millis, [&] {
            if (objective == Objective::Ply) return exact_mpgsc_bruteforce(s, doc.squares, opt.budget);
            return doc.kind == RangeKind::Squares ? exact_mmgsc_bruteforce(s, sp, doc.squares, opt.budget)
                                                  : exact_mmgsc_bruteforce(s, sp, doc.halfplanes, opt.budget);
        });
        r.cover = res.ids;
        if (objective == Objective::Ply) {
            r.ply = res.value;
        } else {
            r.memb = res.value;
        }
        r.oracle_value = res.value;
    }
    if (doc.kind == RangeKind::Halfplanes && solver != "oracle") r.lp_value = membership_lp_value(doc);
    if (opt.with_oracle && !r.oracle_value) r.oracle_value = oracle_value(doc, objective, opt.budget, r.details);
    return r;
}

// Serializes a report. Membership, ply and size are recomputed from the cover
// ids against `doc`; a disagreement with the stored values is a logic error.
inline json report_to_json(const RunReport& r, const InstanceDoc& doc) {
    const std::span<const RangeId> ids(r.cover);
    const bool squares = doc.kind == RangeKind::Squares;
    const bool covered = squares ? verify_cover(doc.s, ids, doc.squares) : verify_cover(doc.s, ids, doc.halfplanes);
    const std::size_t memb = squares ? memb_eval(doc.sprime, ids, doc.squares) : memb_eval(doc.sprime, ids, doc.halfplanes);
    if (r.memb && *r.memb != memb) throw std::logic_error("report membership disagrees with its cover");
    json out = json::object();
    out["solver"] = r.solver;
    out["kind"] = kind_name(r.kind);
    out["objective"] = objective_name(r.objective);
    out["instance_digest"] = r.digest;
    out["cover"] = r.cover;
    out["size"] = r.cover.size();
    out["covered"] = covered;
    out["memb"] = memb;
    if (squares) {
        const std::size_t p = ply(std::span<const UnitSquare>(select_ranges(doc.squares, ids))).ply;
        if (r.ply && *r.ply != p) throw std::logic_error("report ply disagrees with its cover");
        out["ply"] = p;
    }
    out["value"] = r.objective == Objective::Membership ? memb : out.value("ply", std::size_t{0});
    out["lp_value"] = r.lp_value ? json(to_string(*r.lp_value)) : json(nullptr);
    out["oracle_value"] = r.oracle_value ? json(*r.oracle_value) : json(nullptr);
    out["millis"] = r.millis;
    out["details"] = r.details;
    return out;
}

}  // namespace mmgsc
