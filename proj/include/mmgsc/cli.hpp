#pragma once

// Command-line front end: gen, solve, exact, verify, bench, plot.
// Exit codes: 0 success, 2 uncoverable input, 1 usage or parse errors.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mmgsc/bench.hpp"
#include "mmgsc/generate.hpp"
#include "mmgsc/io.hpp"
#include "mmgsc/report.hpp"
#include "mmgsc/svg.hpp"

namespace mmgsc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitUncoverable = 2;

namespace cli_detail {

// "-" reads standard input.
inline std::string read_text(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    return {std::istreambuf_iterator<char>(in), {}};
}

// Empty path or "-" writes to `out`.
inline void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

inline InstanceDoc load_instance(const std::string& path, const std::string& kind) {
    auto doc = parse_instance(read_text(path));
    if (!kind.empty() && kind != kind_name(doc.kind)) {
        throw std::invalid_argument("--kind " + kind + " does not match the document kind " + kind_name(doc.kind));
    }
    return doc;
}

inline void check_cover_ids(const InstanceDoc& doc, const std::vector<RangeId>& ids) {
    for (std::size_t k = 0; k < ids.size(); ++k) {
        if (ids[k] >= doc.range_count()) {
            throw ParseError("cover[" + std::to_string(k) + "]", 0, "no range with id " + std::to_string(ids[k]));
        }
    }
}

const std::vector<std::string> kKinds = {"squares", "halfplanes"};
const std::vector<std::string> kObjectives = {"membership", "ply"};

}  // namespace cli_detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    using namespace cli_detail;
    CLI::App app{"Minimum-membership and minimum-ply geometric set cover"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Write a seeded random instance");
    std::string gen_kind, gen_out;
    GenParams gp;
    bool gen_uncoverable = false;
    gen->add_option("--kind", gen_kind, "squares or halfplanes")->required()->check(CLI::IsMember(kKinds));
    gen->add_option("--points", gp.n_points, "|S|")->capture_default_str();
    gen->add_option("--sprime", gp.n_sprime, "|S'|")->capture_default_str();
    gen->add_option("--ranges", gp.n_ranges, "number of ranges")->capture_default_str();
    gen->add_option("--extent", gp.extent, "squares: [0,E]^2, halfplanes: [-E,E]^2")->capture_default_str()->check(CLI::PositiveNumber);
    gen->add_option("--seed", gp.seed, "generator seed")->capture_default_str();
    gen->add_flag("--single-cell", gp.single_cell, "squares: S in cell (0,0), every square meeting it");
    gen->add_flag("--uncoverable", gen_uncoverable, "do not steer points of S into ranges");
    gen->add_option("-o,--output", gen_out, "output file (default: standard output)");

    // solve
    auto* solve = app.add_subcommand("solve", "Run an approximation or exact solver and print a run report");
    std::string solve_in, solve_kind, solve_objective = "membership", solve_solver, solve_eps = "1/2", solve_out;
    bool solve_oracle = false;
    solve->add_option("input", solve_in, "instance file, - for standard input")->required();
    solve->add_option("--kind", solve_kind, "expected kind")->check(CLI::IsMember(kKinds));
    solve->add_option("--objective", solve_objective, "membership or ply")->capture_default_str()->check(CLI::IsMember(kObjectives));
    solve->add_option("--solver", solve_solver, "cells, mpgsc, exact, additive, ptas or oracle (default by kind)")
        ->check(CLI::IsMember(solver_names()));
    solve->add_option("--eps", solve_eps, "ptas accuracy, a positive rational")->capture_default_str();
    solve->add_flag("--oracle", solve_oracle, "also compute the brute-force optimum");
    solve->add_option("-o,--output", solve_out, "report file (default: standard output)");

    // exact
    auto* exact = app.add_subcommand("exact", "Brute-force optimum");
    std::string exact_in, exact_objective = "membership", exact_out;
    std::size_t exact_budget = OracleBudget{}.max_ranges;
    exact->add_option("input", exact_in, "instance file")->required();
    exact->add_option("--objective", exact_objective, "membership or ply")->capture_default_str()->check(CLI::IsMember(kObjectives));
    exact->add_option("--max-ranges", exact_budget, "refuse larger instances")->capture_default_str();
    exact->add_option("-o,--output", exact_out, "report file (default: standard output)");

    // verify
    auto* verify = app.add_subcommand("verify", "Recompute coverage and membership of a cover");
    std::string verify_in, verify_cover_path;
    verify->add_option("input", verify_in, "instance file")->required();
    verify->add_option("cover", verify_cover_path, "run report, {\"cover\": [...]} or a bare id array")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "Seed-matrix benchmark: CSV rows plus a JSON summary");
    BenchParams bp;
    std::string bench_kind = "all", bench_csv, bench_summary_path;
    bool bench_append = false;
    bench->add_option("--seeds", bp.seeds, "number of seeds")->capture_default_str();
    bench->add_option("--first-seed", bp.first_seed, "first seed")->capture_default_str();
    bench->add_option("--max-ranges", bp.max_ranges, "ranges per instance vary over [max/2, max]")->capture_default_str()
        ->check(CLI::PositiveNumber);
    bench->add_option("--points", bp.n_points, "|S|")->capture_default_str();
    bench->add_option("--sprime", bp.n_sprime, "|S'|")->capture_default_str();
    bench->add_option("--kind", bench_kind, "squares, halfplanes or all")->capture_default_str()
        ->check(CLI::IsMember({"squares", "halfplanes", "all"}));
    bench->add_option("--oracle-max-ranges", bp.oracle_max_ranges, "skip the oracle above this many ranges")->capture_default_str();
    bench->add_option("--csv", bench_csv, "CSV file (default: standard output)");
    bench->add_option("--summary", bench_summary_path,
                      "summary JSON file (default: next to the CSV, or the diagnostic stream)");
    bench->add_flag("--append", bench_append, "append rows to an existing CSV with the same header");

    // plot
    auto* plot = app.add_subcommand("plot", "Draw an instance and optionally a cover as SVG");
    std::string plot_in, plot_cover, plot_out;
    plot->add_option("input", plot_in, "instance file")->required();
    plot->add_option("--cover", plot_cover, "cover to highlight");
    plot->add_option("-o,--output", plot_out, "SVG file (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen) {
            gp.coverable = !gen_uncoverable;
            const auto doc = generate(*kind_from_name(gen_kind), gp);
            write_text(gen_out, serialize_instance(doc), out);
        } else if (*solve) {
            const auto doc = load_instance(solve_in, solve_kind);
            const auto objective = *objective_from_name(solve_objective);
            std::string solver = solve_solver;
            if (solver.empty()) {
                const auto d = default_solver(doc.kind, objective);
                if (!d) throw std::invalid_argument(std::string("no solver for ") + kind_name(doc.kind) + " with objective " + solve_objective);
                solver = *d;
            }
            SolveOptions opt;
            const auto eps = try_parse_scalar(solve_eps);
            if (!eps || sign(*eps) <= 0) throw std::invalid_argument("--eps must be a positive rational");
            opt.eps = *eps;
            opt.with_oracle = solve_oracle;
            const auto rep = run_solver(doc, solver, objective, opt);
            write_text(solve_out, report_to_json(rep, doc).dump(2) + "\n", out);
        } else if (*exact) {
            const auto doc = load_instance(exact_in, "");
            SolveOptions opt;
            opt.budget.max_ranges = exact_budget;
            const auto rep = run_solver(doc, "oracle", *objective_from_name(exact_objective), opt);
            write_text(exact_out, report_to_json(rep, doc).dump(2) + "\n", out);
        } else if (*verify) {
            const auto doc = load_instance(verify_in, "");
            const auto ids = parse_cover(read_text(verify_cover_path));
            check_cover_ids(doc, ids);
            RunReport rep;
            rep.solver = "verify";
            rep.kind = doc.kind;
            rep.digest = instance_digest(doc);
            rep.cover = ids;
            normalize_ids(rep.cover);
            const auto j = report_to_json(rep, doc);
            json res = {{"covered", j["covered"]}, {"memb", j["memb"]}, {"size", j["size"]}, {"instance_digest", rep.digest}};
            if (j.contains("ply")) res["ply"] = j["ply"];
            const auto missing = doc.kind == RangeKind::Squares
                                     ? first_uncovered(doc.s, select_ranges(doc.squares, std::span<const RangeId>(rep.cover)))
                                     : first_uncovered(doc.s, select_ranges(doc.halfplanes, std::span<const RangeId>(rep.cover)));
            res["first_uncovered"] = missing ? json(*missing) : json(nullptr);
            out << res.dump(2) << "\n";
            if (missing) {
                err << "cover misses point " << *missing << " of S\n";
                return kExitUncoverable;
            }
        } else if (*bench) {
            if (bench_kind == "squares") bp.kinds = {RangeKind::Squares};
            if (bench_kind == "halfplanes") bp.kinds = {RangeKind::Halfplanes};
            bp.threads = bench_threads_from_env();
            const auto rows = run_bench(bp);
            if (bench_csv.empty() || bench_csv == "-") {
                out << bench_csv_header() << "\n";
                for (const auto& r : rows) out << bench_csv_row(r) << "\n";
            } else {
                write_bench_csv(bench_csv, rows, bench_append);
            }
            std::string summary_path = bench_summary_path;
            if (summary_path.empty() && !bench_csv.empty() && bench_csv != "-") summary_path = bench_csv + ".summary.json";
            const std::string summary = bench_summary(rows, bp).dump(2) + "\n";
            if (summary_path.empty()) {
                err << summary;
            } else {
                write_text(summary_path, summary, out);
            }
        } else if (*plot) {
            const auto doc = load_instance(plot_in, "");
            std::vector<RangeId> ids;
            if (!plot_cover.empty()) {
                ids = parse_cover(read_text(plot_cover));
                check_cover_ids(doc, ids);
            }
            write_text(plot_out, render_svg(doc, ids), out);
        }
    } catch (const Uncoverable& e) {
        err << "uncoverable: " << e.what() << "\n";
        return kExitUncoverable;
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

}  // namespace mmgsc
