#include <gtest/gtest.h>

#include "mmgsc/generate.hpp"
#include "mmgsc/halfplanes.hpp"
#include "mmgsc/oracle.hpp"
#include "support/random.hpp"
#include "support/verify.hpp"

using namespace mmgsc;
using mmgsc::testing::lp_one_stable;
using mmgsc::testing::lp_union_within;

namespace {

Point pt(const char* x, const char* y) { return {parse_scalar(x), parse_scalar(y)}; }

const Point kOrigin{Scalar(0), Scalar(0)};

// S on a downward parabola, one tangent-like halfplane per point, all of them
// holding a single S' point high above: every member is needed, membership
// equals |S|, and the union is not the plane.
struct Parabola {
    std::vector<Point> s;
    std::vector<Point> sprime;
    std::vector<Halfplane> h;
};

Parabola parabola(std::int64_t half_width, std::int64_t height) {
    Parabola out;
    for (std::int64_t x = -half_width; x <= half_width; ++x) {
        out.s.push_back({Scalar(x), Scalar(-x * x)});
        out.h.push_back({out.h.size(), 4 * x, 2, -2 * x * x + 1});
    }
    out.sprime.push_back({Scalar(0), Scalar(height)});
    return out;
}

// x >= -1, y >= -1, x + y <= 1 covers the plane and holds the origin three
// times; x >= 4 alone covers S while avoiding S'.
std::vector<Halfplane> triple_plus_escape() { return {{0, 1, 0, 1}, {1, 0, 1, 1}, {2, -1, -1, 1}, {3, 1, 0, -4}}; }

bool coverable(const InstanceDoc& doc) { return !first_uncovered(doc.s, doc.halfplanes); }

}  // namespace

TEST(MinSizeCover, Examples) {
    EXPECT_TRUE(min_size_halfplane_cover(std::vector<Point>{}, triple_plus_escape()).ids.empty());
    const std::vector<Point> s = {pt("5", "5"), pt("-5", "-5")};
    const auto sol = min_size_halfplane_cover(s, triple_plus_escape());
    EXPECT_EQ(sol.ids.size(), 2u);
    EXPECT_TRUE(verify_cover(s, sol.ids, triple_plus_escape()));
    const auto p = parabola(3, 9);
    EXPECT_EQ(min_size_halfplane_cover(p.s, p.h).ids.size(), 7u);
    EXPECT_THROW(min_size_halfplane_cover(std::vector<Point>{pt("0", "-9")}, std::vector<Halfplane>{{0, 0, 1, 0}}),
                 Uncoverable);
}

TEST(MinSizeCover, MatchesOracle) {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        const auto doc = generate_halfplanes(
            {static_cast<std::size_t>(6 + seed % 7), 0, static_cast<std::size_t>(6 + seed % 7), 4, 300 + seed, true, false});
        if (!coverable(doc)) continue;
        const auto sol = min_size_halfplane_cover(doc.s, doc.halfplanes);
        ASSERT_EQ(sol.ids.size(), exact_minsize_bruteforce(doc.s, doc.halfplanes).value) << "seed " << seed;
        ASSERT_TRUE(verify_cover(doc.s, sol.ids, doc.halfplanes));
    }
}

TEST(LocalSearch, SwapEnlargesUnion) {
    const std::vector<Halfplane> h = {{0, 0, 1, -1}, {1, 0, 1, 0}};  // y >= 1, y >= 0
    const std::vector<RangeId> z = {0};
    EXPECT_EQ(find_expanding_swap(z, h), (std::vector<RangeId>{1}));
    LocalSearchTrace trace;
    const auto sol = one_stable_local_search(z, h, std::vector<Point>{}, {}, &trace);
    EXPECT_EQ(sol.ids, (std::vector<RangeId>{1}));
    EXPECT_EQ(trace.swaps, 1u);
    EXPECT_TRUE(trace.stable);
    EXPECT_FALSE(find_expanding_swap(sol.ids, h));
}

TEST(LocalSearch, IterationCapStops) {
    const std::vector<Halfplane> h = {{0, 0, 1, -2}, {1, 0, 1, -1}, {2, 0, 1, 0}};
    LocalSearchTrace trace;
    const auto sol = one_stable_local_search(std::vector<RangeId>{0}, h, std::vector<Point>{}, {1, 1}, &trace);
    EXPECT_EQ(trace.swaps, 1u);
    EXPECT_FALSE(trace.stable);
    EXPECT_EQ(sol.ids.size(), 1u);
}

TEST(LocalSearch, RandomStartsEndStableAndKeepCoverage) {
    Rng rng(8);
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto doc = generate_halfplanes({8, 4, 8, 4, 500 + seed, true, false});
        if (!coverable(doc)) continue;
        std::vector<RangeId> start = min_size_halfplane_cover(doc.s, doc.halfplanes).ids;
        // Pad with random extra members so the start is not already minimal.
        for (const auto& g : doc.halfplanes) {
            if (rng.between(0, 3) == 0 && std::find(start.begin(), start.end(), g.id) == start.end()) start.push_back(g.id);
        }
        normalize_ids(start);
        LocalSearchTrace trace;
        const auto sol = one_stable_local_search(start, doc.halfplanes, doc.sprime, {}, &trace);
        ASSERT_TRUE(trace.stable);
        EXPECT_EQ(sol.ids.size(), start.size());
        EXPECT_TRUE(verify_cover(doc.s, sol.ids, doc.halfplanes));
        EXPECT_TRUE(lp_union_within(select_ranges(doc.halfplanes, start), select_ranges(doc.halfplanes, sol.ids)));
        EXPECT_TRUE(lp_one_stable(sol.ids, doc.halfplanes)) << "seed " << seed;
    }
}

TEST(AdditiveCover, ZeroOptimum) {
    const std::vector<Point> s = {kOrigin};
    const std::vector<Point> sp = {pt("5", "5")};
    const std::vector<Halfplane> h = {{0, -1, 0, 1}, {1, 0, 1, 1}};
    AdditiveTrace trace;
    const auto sol = additive_error_cover(s, sp, h, &trace);
    EXPECT_LE(sol.memb, 2u);
    EXPECT_EQ(trace.branch, AdditiveBranch::LocalSearch);
}

TEST(AdditiveCover, PlaneCoveringTriple) {
    const std::vector<Point> s = {pt("-5", "-5"), pt("5", "-5"), pt("0", "5")};
    const std::vector<Point> sp = {pt("9", "9")};
    auto h = triple_plus_escape();
    h.pop_back();
    AdditiveTrace trace;
    const auto sol = additive_error_cover(s, sp, h, &trace);
    EXPECT_EQ(trace.branch, AdditiveBranch::PlaneCover);
    EXPECT_TRUE(verify_cover(s, sol.ids, h));
    EXPECT_LE(sol.memb, exact_mmgsc_bruteforce(s, sp, h).value + kAdditiveError);
}

TEST(AdditiveCover, AvoidsTripleMembershipWhenZeroIsPossible) {
    const std::vector<Point> s = {pt("5", "5")};
    const std::vector<Point> sp = {kOrigin};
    AdditiveTrace trace;
    const auto sol = additive_error_cover(s, sp, triple_plus_escape(), &trace);
    EXPECT_EQ(trace.branch, AdditiveBranch::ZeroMembership);
    EXPECT_EQ(sol.memb, 0u);
    EXPECT_EQ(sol.ids, (std::vector<RangeId>{3}));
}

TEST(AdditiveCover, ParabolaNeedsEveryMember) {
    const auto p = parabola(3, 9);
    AdditiveTrace trace;
    const auto sol = additive_error_cover(p.s, p.sprime, p.h, &trace);
    EXPECT_EQ(trace.branch, AdditiveBranch::LocalSearch);
    EXPECT_EQ(sol.memb, 7u);
    EXPECT_EQ(exact_mmgsc_halfplanes(p.s, p.sprime, p.h).memb, 7u);
}

TEST(AdditiveCover, WithinTwoOfOptimumAndStable) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto doc = generate_halfplanes({8, 8, 8, 4, 1000 + seed, true, false});
        if (!coverable(doc)) continue;
        const auto opt = exact_mmgsc_bruteforce(doc.s, doc.sprime, doc.halfplanes).value;
        AdditiveTrace trace;
        const auto sol = additive_error_cover(doc.s, doc.sprime, doc.halfplanes, &trace);
        ASSERT_TRUE(verify_cover(doc.s, sol.ids, doc.halfplanes));
        ASSERT_LE(sol.memb, opt + kAdditiveError) << "seed " << seed;
        if (trace.branch == AdditiveBranch::LocalSearch) {
            EXPECT_TRUE(trace.search.stable);
            EXPECT_EQ(sol.ids.size(), trace.min_size.size());
            EXPECT_TRUE(lp_one_stable(sol.ids, doc.halfplanes)) << "seed " << seed;
        }
    }
}

TEST(Ptas, RejectsNonPositiveEps) {
    const auto p = parabola(1, 3);
    EXPECT_THROW(ptas(p.s, p.sprime, p.h, Scalar(0)), std::invalid_argument);
    EXPECT_THROW(ptas(p.s, p.sprime, p.h, Scalar(-1)), std::invalid_argument);
}

TEST(Ptas, SmallOptimumGoesExact) {
    const std::vector<Point> s = {kOrigin};
    const std::vector<Point> sp = {pt("5", "5")};
    const std::vector<Halfplane> h = {{0, -1, 0, 1}, {1, 0, 1, 1}};
    PtasTrace trace;
    const auto sol = ptas(s, sp, h, Scalar(1), &trace);
    EXPECT_EQ(trace.branch, PtasBranch::Exact);
    EXPECT_EQ(trace.threshold, Scalar(4));
    EXPECT_EQ(sol.memb, 0u);
}

TEST(Ptas, LargeMembershipKeepsAdditive) {
    const auto p = parabola(3, 9);
    PtasTrace trace;
    const auto sol = ptas(p.s, p.sprime, p.h, Scalar(1, 2), &trace);
    EXPECT_EQ(trace.branch, PtasBranch::Additive);
    EXPECT_EQ(trace.threshold, Scalar(6));
    EXPECT_EQ(sol.memb, 7u);
}

TEST(Ptas, WithinFactorOnRandomInstances) {
    const Scalar eps(1, 2);
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto doc = generate_halfplanes({8, 8, 8, 4, 2000 + seed, true, false});
        if (!coverable(doc)) continue;
        const auto opt = exact_mmgsc_bruteforce(doc.s, doc.sprime, doc.halfplanes).value;
        const auto sol = ptas(doc.s, doc.sprime, doc.halfplanes, eps);
        ASSERT_TRUE(verify_cover(doc.s, sol.ids, doc.halfplanes));
        ASSERT_LE(Scalar(static_cast<long>(sol.memb)), (1 + eps) * Scalar(static_cast<long>(opt))) << "seed " << seed;
    }
}
