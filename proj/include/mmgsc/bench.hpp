#pragma once

// Seed-matrix benchmark. One instance per (seed, kind), every solver of that
// kind on it, one CSV row per (instance, solver). Columns:
//
//   seed          generator seed
//   kind          squares | halfplanes
//   solver        cells, mpgsc (squares); exact, additive, ptas-1, ptas-0.5 (halfplanes)
//   n_points      |S|
//   n_ranges      number of ranges
//   value         membership of S' (ply for mpgsc); empty when S is uncoverable
//   oracle_value  brute-force optimum of the same objective; empty when skipped
//   lp_value      exact LP lower bound as a rational; empty when not computed
//   size          number of chosen ranges
//   millis        solver wall time
//
// Rows come out ordered by (seed, kind, solver) whatever the thread count.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "mmgsc/generate.hpp"
#include "mmgsc/report.hpp"

namespace mmgsc {

inline constexpr int kBenchCsvSchema = 1;

inline const std::string& bench_csv_header() {
    static const std::string h = "seed,kind,solver,n_points,n_ranges,value,oracle_value,lp_value,size,millis";
    return h;
}

struct BenchParams {
    std::size_t seeds = 100;
    std::uint64_t first_seed = 0;
    std::size_t max_ranges = 10;
    std::size_t n_points = 8;
    std::size_t n_sprime = 8;
    std::int64_t square_extent = 3;
    std::int64_t halfplane_extent = 4;
    std::vector<RangeKind> kinds = {RangeKind::Squares, RangeKind::Halfplanes};
    std::size_t oracle_max_ranges = 12;
    unsigned threads = 1;
};

struct BenchSolver {
    std::string label;
    std::string solver;
    Objective objective;
    std::optional<Scalar> eps;
};

inline std::vector<BenchSolver> bench_solvers(RangeKind kind) {
    if (kind == RangeKind::Squares) {
        return {{"cells", "cells", Objective::Membership, {}}, {"mpgsc", "mpgsc", Objective::Ply, {}}};
    }
    return {{"exact", "exact", Objective::Membership, {}},
            {"additive", "additive", Objective::Membership, {}},
            {"ptas-1", "ptas", Objective::Membership, Scalar(1)},
            {"ptas-0.5", "ptas", Objective::Membership, Scalar(1, 2)}};
}

struct BenchRow {
    std::uint64_t seed = 0;
    RangeKind kind = RangeKind::Squares;
    std::string solver;
    std::size_t n_points = 0;
    std::size_t n_ranges = 0;
    std::optional<std::size_t> value;
    std::optional<std::size_t> oracle_value;
    std::optional<Scalar> lp_value;
    std::optional<std::size_t> size;
    double millis = 0;
};

// Everything but the timing: identical across reruns of the same matrix.
inline std::string bench_value_columns(const BenchRow& r) {
    auto opt = [](const auto& v) { return v ? std::to_string(*v) : std::string(); };
    return std::to_string(r.seed) + "," + kind_name(r.kind) + "," + r.solver + "," + std::to_string(r.n_points) + "," +
           std::to_string(r.n_ranges) + "," + opt(r.value) + "," + opt(r.oracle_value) + "," +
           (r.lp_value ? to_string(*r.lp_value) : std::string()) + "," + opt(r.size);
}

inline std::string bench_csv_row(const BenchRow& r) {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", r.millis);
    return bench_value_columns(r) + "," + ms;
}

// Range count for a seed: spread over [max/2, max].
inline std::size_t bench_range_count(std::uint64_t seed, std::size_t max_ranges) {
    const std::size_t lo = std::max<std::size_t>(1, max_ranges / 2);
    if (max_ranges <= lo) return max_ranges;
    return lo + static_cast<std::size_t>(seed % (max_ranges - lo + 1));
}

inline InstanceDoc bench_instance(const BenchParams& p, std::uint64_t seed, RangeKind kind) {
    GenParams g;
    g.n_points = p.n_points;
    g.n_sprime = p.n_sprime;
    g.n_ranges = bench_range_count(seed, p.max_ranges);
    g.extent = kind == RangeKind::Squares ? p.square_extent : p.halfplane_extent;
    g.seed = seed;
    return generate(kind, g);
}

inline std::vector<BenchRow> bench_instance_rows(const BenchParams& p, std::uint64_t seed, RangeKind kind) {
    const auto doc = bench_instance(p, seed, kind);
    std::vector<BenchRow> rows;
    std::map<Objective, std::optional<std::size_t>> oracle;
    OracleBudget budget;
    budget.max_ranges = p.oracle_max_ranges;
    for (const auto& solver : bench_solvers(kind)) {
        BenchRow row;
        row.seed = seed;
        row.kind = kind;
        row.solver = solver.label;
        row.n_points = doc.s.size();
        row.n_ranges = doc.range_count();
        SolveOptions opt;
        if (solver.eps) opt.eps = *solver.eps;
        try {
            const auto rep = run_solver(doc, solver.solver, solver.objective, opt);
            row.value = rep.value();
            row.lp_value = rep.lp_value;
            row.size = rep.size();
            row.millis = rep.millis;
        } catch (const Uncoverable&) {
            // value and size stay empty
        }
        if (row.value && doc.range_count() <= p.oracle_max_ranges) {
            if (!oracle.count(solver.objective)) {
                json ignored;
                oracle[solver.objective] = report_detail::oracle_value(doc, solver.objective, budget, ignored);
            }
            row.oracle_value = oracle[solver.objective];
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// MMGSC_THREADS, else 1.
inline unsigned bench_threads_from_env() {
    if (const char* v = std::getenv("MMGSC_THREADS")) {
        char* end = nullptr;
        const unsigned long n = std::strtoul(v, &end, 10);
        if (end != v && *end == '\0' && n > 0) return static_cast<unsigned>(n);
    }
    return 1;
}

inline std::vector<BenchRow> run_bench(const BenchParams& p) {
    struct Job {
        std::uint64_t seed;
        RangeKind kind;
    };
    std::vector<Job> jobs;
    for (std::size_t k = 0; k < p.seeds; ++k) {
        for (RangeKind kind : p.kinds) jobs.push_back({p.first_seed + k, kind});
    }
    std::vector<std::vector<BenchRow>> results(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) {
            try {
                results[j] = bench_instance_rows(p, jobs[j].seed, jobs[j].kind);
            } catch (...) {
                errors[j] = std::current_exception();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(p.threads, static_cast<unsigned>(jobs.size())));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
        work();
    }
    std::vector<BenchRow> rows;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (errors[j]) std::rethrow_exception(errors[j]);
        rows.insert(rows.end(), results[j].begin(), results[j].end());
    }
    return rows;
}

// Appending requires the existing file to start with the same header.
inline void write_bench_csv(const std::filesystem::path& path, const std::vector<BenchRow>& rows, bool append) {
    bool header = true;
    if (append && std::filesystem::exists(path) && std::filesystem::file_size(path) > 0) {
        std::ifstream in(path);
        std::string first;
        std::getline(in, first);
        if (first != bench_csv_header()) throw std::runtime_error("existing CSV has a different header: " + path.string());
        header = false;
    }
    std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    if (header) out << bench_csv_header() << "\n";
    for (const auto& r : rows) out << bench_csv_row(r) << "\n";
}

namespace bench_detail {

// Guarantee each solver is checked against, as a function of the optimum.
inline std::optional<Scalar> bound_for(const std::string& label, std::size_t opt) {
    const Scalar o(static_cast<long>(opt));
    if (label == "exact") return o;
    if (label == "additive") return o + static_cast<long>(kAdditiveError);
    if (label == "ptas-1") return 2 * o;
    if (label == "ptas-0.5") return Scalar(3, 2) * o;
    if (label == "mpgsc") return 576 * o;
    return std::nullopt;
}

inline json bound_label(const std::string& label) {
    if (label == "exact") return "opt";
    if (label == "additive") return "opt + 2";
    if (label == "ptas-1") return "2 opt";
    if (label == "ptas-0.5") return "3/2 opt";
    if (label == "mpgsc") return "576 opt";
    return nullptr;
}

}  // namespace bench_detail

// Per solver: rows, rows with an oracle value, worst value/opt ratio (opt > 0),
// nonzero values at opt = 0, bound violations, total time.
inline json bench_summary(const std::vector<BenchRow>& rows, const BenchParams& p) {
    json out = json::object();
    out["csv_schema"] = kBenchCsvSchema;
    out["columns"] = bench_csv_header();
    out["seeds"] = p.seeds;
    out["first_seed"] = p.first_seed;
    out["max_ranges"] = p.max_ranges;
    out["rows"] = rows.size();
    json solvers = json::object();
    std::map<std::string, Scalar> worst;
    for (const auto& r : rows) {
        json& s = solvers[r.solver];
        if (s.is_null()) {
            s = {{"kind", kind_name(r.kind)}, {"bound", bench_detail::bound_label(r.solver)}, {"rows", 0}, {"with_oracle", 0}, {"uncoverable", 0},
                 {"zero_opt_nonzero_value", 0}, {"violations", 0}, {"max_ratio", nullptr}, {"total_millis", 0.0}};
        }
        s["rows"] = s["rows"].get<std::size_t>() + 1;
        s["total_millis"] = s["total_millis"].get<double>() + r.millis;
        if (!r.value) {
            s["uncoverable"] = s["uncoverable"].get<std::size_t>() + 1;
            continue;
        }
        if (!r.oracle_value) continue;
        s["with_oracle"] = s["with_oracle"].get<std::size_t>() + 1;
        const std::size_t opt = *r.oracle_value;
        if (const auto b = bench_detail::bound_for(r.solver, opt); b && Scalar(static_cast<long>(*r.value)) > *b) {
            s["violations"] = s["violations"].get<std::size_t>() + 1;
        }
        if (opt == 0) {
            if (*r.value != 0) s["zero_opt_nonzero_value"] = s["zero_opt_nonzero_value"].get<std::size_t>() + 1;
            continue;
        }
        const Scalar ratio = Scalar(static_cast<long>(*r.value)) / Scalar(static_cast<long>(opt));
        auto it = worst.find(r.solver);
        if (it == worst.end() || ratio > it->second) {
            worst[r.solver] = ratio;
            s["max_ratio"] = to_string(ratio);
        }
    }
    out["solvers"] = solvers;
    return out;
}

}  // namespace mmgsc
