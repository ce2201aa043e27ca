#include <gtest/gtest.h>

#include "mmgsc/oracle.hpp"
#include "mmgsc/ply.hpp"
#include "support/random.hpp"

using namespace mmgsc;

namespace {

Point pt(const char* x, const char* y) { return {parse_scalar(x), parse_scalar(y)}; }

// Depth maximum over a dense exact sample: every edge coordinate, every
// midpoint between consecutive ones, and a fine lattice.
std::size_t sampled_ply(const std::vector<UnitSquare>& q) {
    auto [xs, ys] = edge_grid(q);
    auto refine = [](std::vector<Scalar> v) {
        std::vector<Scalar> out = v;
        for (std::size_t k = 0; k + 1 < v.size(); ++k) out.push_back((v[k] + v[k + 1]) / 2);
        return out;
    };
    std::size_t best = 0;
    for (const auto& x : refine(xs)) {
        for (const auto& y : refine(ys)) best = std::max(best, depth(q, Point{x, y}));
    }
    for (int x = 0; x <= 64; ++x) {
        for (int y = 0; y <= 64; ++y) best = std::max(best, depth(q, Point{Scalar(x, 16), Scalar(y, 16)}));
    }
    return best;
}

}  // namespace

TEST(Ply, Examples) {
    EXPECT_EQ(ply(std::vector<UnitSquare>{}).ply, 0u);
    EXPECT_FALSE(ply(std::vector<UnitSquare>{}).witness);
    const std::vector<UnitSquare> corner = {{0, pt("1", "1")}, {1, pt("2", "2")}};
    const auto r = ply(corner);
    EXPECT_EQ(r.ply, 2u);
    EXPECT_EQ(*r.witness, pt("1", "1"));
}

TEST(Ply, MatchesDenseSampling) {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        const auto doc = generate_squares({0, 0, 8, 3, seed, false, false});
        const auto r = ply(doc.squares);
        EXPECT_EQ(r.ply, sampled_ply(doc.squares));
        ASSERT_TRUE(r.witness);
        EXPECT_EQ(depth(doc.squares, *r.witness), r.ply);
    }
}

TEST(MinSizeCellCover, Examples) {
    const std::vector<Point> s = {pt("0.5", "0.5")};
    const std::vector<UnitSquare> q = {{0, pt("1", "1")}};
    EXPECT_EQ(min_size_cell_cover_approx(s, q, {0, 0}).ids, (std::vector<RangeId>{0}));
}

TEST(MinSizeCellCover, WithinFourTimesLpAndSixteenTimesOptimum) {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        const auto doc = generate_squares({10, 0, 10, 1, 70 + seed, true, true});
        Scalar lp;
        const auto sol = min_size_cell_cover_approx(doc.s, doc.squares, {0, 0}, &lp);
        ASSERT_TRUE(verify_cover(doc.s, sol.ids, doc.squares));
        const auto size = Scalar(static_cast<long>(sol.ids.size()));
        ASSERT_LE(size, 16 * lp);
        ASSERT_LE(size, 4 * lp);
        const auto opt = exact_minsize_bruteforce(doc.s, doc.squares).value;
        ASSERT_LE(sol.ids.size(), 16 * opt);
        ASSERT_LE(lp, Scalar(static_cast<long>(opt)));
    }
}

TEST(SolveMpgsc, Examples) {
    const std::vector<Point> s = {pt("0.5", "0.5"), pt("2.5", "2.5")};
    const std::vector<UnitSquare> disjoint = {{0, pt("1", "1")}, {1, pt("3", "3")}};
    EXPECT_EQ(solve_mpgsc(s, disjoint).report.ply, 1u);
    const std::vector<Point> one = {pt("0.5", "0.5")};
    const std::vector<UnitSquare> stack = {{0, pt("1", "1")}, {1, pt("1", "1")}, {2, pt("1", "1")}};
    const auto r = solve_mpgsc(one, stack);
    EXPECT_EQ(r.report.ply, 1u);
    EXPECT_EQ(r.cover.ids.size(), 1u);
}

TEST(SolveMpgsc, BoundAgainstOracleAndAuditStep) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto doc = generate_squares({10, 0, 10, 3, 4000 + seed, true, false});
        const auto sol = solve_mpgsc(doc.s, doc.squares);
        ASSERT_TRUE(verify_cover(doc.s, sol.cover.ids, doc.squares));
        const auto chosen = select_ranges(doc.squares, sol.cover.ids);
        ASSERT_EQ(sol.report.ply, sampled_ply(chosen));
        const auto opt = exact_mpgsc_bruteforce(doc.s, doc.squares).value;
        ASSERT_LE(sol.report.ply, 576 * opt);
        std::size_t biggest = 0;
        for (const auto& [cell, size] : sol.report.cell_sizes) biggest = std::max(biggest, size);
        ASSERT_GE(9 * biggest, sol.report.ply);
    }
}
