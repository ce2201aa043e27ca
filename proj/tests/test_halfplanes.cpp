#include <gtest/gtest.h>

#include <set>

#include "mmgsc/generate.hpp"
#include "mmgsc/halfplanes.hpp"
#include "mmgsc/oracle.hpp"
#include "support/random.hpp"
#include "support/verify.hpp"

using namespace mmgsc;
using mmgsc::testing::check_witness;

namespace {

Point pt(const char* x, const char* y) { return {parse_scalar(x), parse_scalar(y)}; }

const Point kOrigin{Scalar(0), Scalar(0)};

// x <= -1, x >= 1, y <= -1, y >= 1: a box around the origin.
std::vector<Halfplane> box_around_origin() { return {{0, -1, 0, -1}, {1, 1, 0, -1}, {2, 0, -1, -1}, {3, 0, 1, -1}}; }

// Some member H1 has every other member strictly clockwise from it, at
// pairwise distinct angles, all below pi (or up to pi when `allow_pi`).
std::optional<std::vector<Halfplane>> angular_order(const std::vector<Halfplane>& r, bool allow_pi) {
    for (const auto& h1 : r) {
        std::vector<Halfplane> rest;
        bool fits = true;
        for (const auto& h : r) {
            if (&h == &h1) continue;
            const int vs_pi = clockwise_angle_vs_pi(h1.normal(), h.normal());
            if (same_direction(h1.normal(), h.normal()) || vs_pi > 0 || (vs_pi == 0 && !allow_pi)) fits = false;
            rest.push_back(h);
        }
        if (!fits) continue;
        std::sort(rest.begin(), rest.end(), [&](const Halfplane& u, const Halfplane& v) { return angle_cmp(h1, u, v) < 0; });
        bool distinct = true;
        for (std::size_t k = 0; k + 1 < rest.size(); ++k) distinct = distinct && angle_cmp(h1, rest[k], rest[k + 1]) != 0;
        if (!distinct) continue;
        rest.insert(rest.begin(), h1);
        return rest;
    }
    return std::nullopt;
}

bool same_region(std::span<const Halfplane> x, std::span<const Halfplane> y) {
    const auto rx = intersect_halfplanes(x), ry = intersect_halfplanes(y);
    return region_subset(rx, ry) && region_subset(ry, rx);
}

}  // namespace

// Irreducible, not plane-covering, nonempty intersection: the members line up
// clockwise within a half turn.
TEST(HalfplaneFacts, IrreducibleSetsWithCommonPointAreAngularlyOrdered) {
    Rng rng(31);
    std::size_t checked = 0;
    for (int trial = 0; trial < 4000 && checked < 150; ++trial) {
        const auto r = mmgsc::testing::random_halfplanes(rng, static_cast<std::size_t>(rng.between(2, 5)), 3, 4);
        if (!is_irreducible(r) || covers_plane(r) || intersect_halfplanes(r).empty) continue;
        ++checked;
        ASSERT_TRUE(angular_order(r, false)) << "trial " << trial;
    }
    EXPECT_GE(checked, 100u);
}

// Irreducible and ordered within a half turn: the intersection is fixed by
// the two extreme members. Checked exactly and on a sample grid.
TEST(HalfplaneFacts, OrderedIrreducibleIntersectionIsTheExtremePair) {
    Rng rng(32);
    std::size_t checked = 0;
    for (int trial = 0; trial < 6000 && checked < 150; ++trial) {
        const auto r = mmgsc::testing::random_halfplanes(rng, static_cast<std::size_t>(rng.between(3, 5)), 3, 4);
        if (!is_irreducible(r)) continue;
        const auto order = angular_order(r, true);
        if (!order) continue;
        ++checked;
        const std::vector<Halfplane> ends = {order->front(), order->back()};
        ASSERT_TRUE(same_region(r, ends)) << "trial " << trial;
        for (int x = -12; x <= 12; ++x) {
            for (int y = -12; y <= 12; ++y) {
                const Point p{Scalar(x, 2), Scalar(y, 2)};
                const bool all = std::all_of(r.begin(), r.end(), [&](const Halfplane& h) { return halfplane_contains(h, p); });
                ASSERT_EQ(all, halfplane_contains(ends[0], p) && halfplane_contains(ends[1], p));
            }
        }
    }
    EXPECT_GE(checked, 100u);
}

TEST(PlaneCoverTriple, OppositePair) {
    const std::vector<Halfplane> h = {{0, 0, 1, 0}, {1, 0, -1, 0}};
    EXPECT_EQ(plane_cover_triple(h), (std::vector<RangeId>{0, 1}));
}

TEST(PlaneCoverTriple, ThreeWaySplit) {
    // x >= -1, y <= (x + 1) / 2, y >= -(x + 1) / 2 shifted so no pair suffices.
    const std::vector<Halfplane> h = {{0, 1, 0, 1}, {1, -1, 2, 1}, {2, -1, -2, 1}};
    const auto t = plane_cover_triple(h);
    ASSERT_TRUE(t);
    EXPECT_EQ(*t, (std::vector<RangeId>{0, 1, 2}));
    EXPECT_TRUE(mmgsc::testing::lp_covers_plane(h));
    for (std::size_t drop = 0; drop < 3; ++drop) {
        std::vector<Halfplane> pair;
        for (std::size_t k = 0; k < 3; ++k) {
            if (k != drop) pair.push_back(h[k]);
        }
        EXPECT_FALSE(mmgsc::testing::lp_covers_plane(pair));
    }
}

TEST(PlaneCoverTriple, NormalsInAnOpenHalfTurn) {
    const std::vector<Halfplane> h = {{0, 1, 0, 5}, {1, 1, 1, 5}, {2, 1, -1, 5}, {3, 2, 1, 9}};
    EXPECT_FALSE(plane_cover_triple(h));
}

TEST(PlaneCoverTriple, AgreesWithLpOnRandomSets) {
    Rng rng(5);
    for (int trial = 0; trial < 150; ++trial) {
        const auto h = mmgsc::testing::random_halfplanes(rng, static_cast<std::size_t>(rng.between(2, 6)), 3, 3);
        const auto t = plane_cover_triple(h);
        EXPECT_EQ(t.has_value(), mmgsc::testing::lp_covers_plane(h)) << "trial " << trial;
        if (t) { EXPECT_TRUE(mmgsc::testing::lp_covers_plane(select_ranges(h, *t))); }
    }
}

TEST(BuildSegments, TwoCrossingLinesHaveNoFiniteSegment) {
    const std::vector<Halfplane> h = {{0, -1, 0, -1}, {1, 0, -1, -1}};
    EXPECT_TRUE(build_segments(h, kOrigin).empty());
}

TEST(BuildSegments, ThreeLinesInGeneralPosition) {
    // Triangle around the origin.
    const std::vector<Halfplane> h = {{0, 0, -1, -1}, {1, -1, 1, -2}, {2, 1, 1, -2}};
    const auto segs = build_segments(h, kOrigin);
    ASSERT_EQ(segs.size(), 3u);
    for (const auto& s : segs) EXPECT_LT(orientation(kOrigin, s.a, s.b), 0);
}

TEST(BuildSegments, AnchorOnALine) {
    const std::vector<Halfplane> h = {{7, 1, 0, 0}};
    try {
        build_segments(h, kOrigin);
        FAIL() << "expected AnchorOnLine";
    } catch (const AnchorOnLine& e) {
        EXPECT_EQ(e.id(), 7u);
    }
}

TEST(BuildSegments, MatchesPairwiseIntersectionOracle) {
    Rng rng(11);
    const Point p = pt("1/7", "2/9");
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Halfplane> h;
        while (h.size() < 5) {
            auto g = mmgsc::testing::random_halfplane(rng, h.size(), 4, 5);
            if (halfplane_contains(g, p)) g = {g.id, -g.a, -g.b, -g.c};
            const bool repeat = std::any_of(h.begin(), h.end(), [&](const Halfplane& k) {
                return Scalar(k.a) * g.b == Scalar(k.b) * g.a && Scalar(k.a) * g.c == Scalar(k.c) * g.a &&
                       Scalar(k.b) * g.c == Scalar(k.c) * g.b;
            });
            if (!repeat) h.push_back(g);
        }
        std::set<std::tuple<RangeId, Point, Point>> want;
        for (const auto& g : h) {
            std::vector<Point> pts;
            for (const auto& o : h) {
                if (o.id == g.id) continue;
                const Scalar det = Scalar(g.a) * o.b - Scalar(g.b) * o.a;
                if (det == 0) continue;
                const Point q{(Scalar(g.b) * o.c - Scalar(o.b) * g.c) / det, (Scalar(o.a) * g.c - Scalar(g.a) * o.c) / det};
                if (std::find(pts.begin(), pts.end(), q) == pts.end()) pts.push_back(q);
            }
            for (std::size_t u = 0; u < pts.size(); ++u) {
                for (std::size_t v = 0; v < pts.size(); ++v) {
                    if (u != v && orientation(p, pts[u], pts[v]) < 0) want.insert({g.id, pts[u], pts[v]});
                }
            }
        }
        std::set<std::tuple<RangeId, Point, Point>> got;
        for (const auto& s : build_segments(h, p)) got.insert({s.host, s.a, s.b});
        EXPECT_EQ(got, want) << "trial " << trial;
    }
}

TEST(DecisionGraph, BoxAroundAnchorAtKZero) {
    const auto h = box_around_origin();
    const auto g = build_decision_graph({}, {}, h, kOrigin, 0);
    EXPECT_EQ(g.size(), 4u);
    EXPECT_EQ(g.edge_count(), 4u);
    std::size_t crossing = 0;
    for (const auto& out : g.out) {
        for (const auto& e : out) crossing += e.crosses ? 1 : 0;
    }
    EXPECT_EQ(crossing, 1u);
    const auto c = find_winding_cycle(g);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->vertices.size(), 4u);
}

TEST(DecisionGraph, PointInsideTriangleRemovesSegment) {
    const auto h = box_around_origin();
    const std::vector<Point> s = {pt("0", "1/2")};  // inside the triangle of the top edge only
    const auto f = make_anchor_frame(s, {}, h, kOrigin);
    EXPECT_EQ(f.segments.size(), 3u);
    for (const auto& seg : f.segments) EXPECT_NE(seg.host, 3u);
    EXPECT_FALSE(find_winding_cycle(build_wind_graph(f, 0)));
}

TEST(DecisionGraph, PointOnTheSegmentIsAllowed) {
    const auto h = box_around_origin();
    const std::vector<Point> s = {pt("0", "1")};
    EXPECT_TRUE(find_winding_cycle(build_decision_graph(s, {}, h, kOrigin, 0)));
}

TEST(DecisionGraph, SprimeInCommonHostsExcludesTuple) {
    const auto h = box_around_origin();
    // Inside y >= 1 and x >= 1: consecutive top and right edges both hold it.
    const std::vector<Point> sp = {pt("2", "2")};
    const auto g1 = build_decision_graph({}, sp, h, kOrigin, 1);
    for (std::size_t v = 0; v < g1.size(); ++v) {
        std::set<std::uint32_t> segs(g1.tuple(v).begin(), g1.tuple(v).end());
        const auto f = make_anchor_frame({}, sp, h, kOrigin);
        std::set<RangeId> hosts;
        for (auto s : segs) hosts.insert(f.segments[s].host);
        EXPECT_FALSE(hosts.count(1) && hosts.count(3));
    }
    EXPECT_FALSE(find_winding_cycle(g1));
    EXPECT_TRUE(find_winding_cycle(build_decision_graph({}, sp, h, kOrigin, 2)));
}

namespace {

WindGraph manual_graph(std::size_t n, const std::vector<std::tuple<std::uint32_t, std::uint32_t, bool>>& edges) {
    WindGraph g;
    g.arity = 1;
    for (std::uint32_t v = 0; v < n; ++v) g.tuples.push_back(v);
    g.out.resize(n);
    for (const auto& [u, v, c] : edges) g.out[u].push_back({v, c});
    return g;
}

// Every simple cycle, as (hop count, crossing count).
std::vector<std::pair<std::size_t, std::size_t>> simple_cycles(const WindGraph& g) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::vector<bool> on(g.size(), false);
    std::function<void(std::uint32_t, std::uint32_t, std::size_t, std::size_t)> dfs =
        [&](std::uint32_t start, std::uint32_t v, std::size_t hops, std::size_t crossings) {
            for (const auto& e : g.out[v]) {
                const std::size_t c = crossings + (e.crosses ? 1 : 0);
                if (e.to == start) out.emplace_back(hops + 1, c);
                if (e.to > start && !on[e.to]) {
                    on[e.to] = true;
                    dfs(start, e.to, hops + 1, c);
                    on[e.to] = false;
                }
            }
        };
    for (std::uint32_t s = 0; s < g.size(); ++s) {
        on[s] = true;
        dfs(s, s, 0, 0);
        on[s] = false;
    }
    return out;
}

}  // namespace

TEST(FindWindingCycle, NoCrossingEdge) {
    const auto g = manual_graph(3, {{0, 1, false}, {1, 2, false}});
    EXPECT_FALSE(find_winding_cycle(g));
}

TEST(FindWindingCycle, OnlyDoubleWindingCycles) {
    // Two laps: 0 -> 1 crosses, 1 -> 2 plain, 2 -> 3 crosses, 3 -> 0 plain.
    const auto g = manual_graph(4, {{0, 1, true}, {1, 2, false}, {2, 3, true}, {3, 0, false}});
    for (const auto& [hops, crossings] : simple_cycles(g)) EXPECT_NE(crossings, 1u);
    EXPECT_FALSE(find_winding_cycle(g));
}

TEST(FindWindingCycle, AgreesWithCycleEnumeration) {
    Rng rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rng.between(2, 8));
        // A vertex's out-edges share one flag; plain edges only go forward.
        std::vector<bool> cross(n);
        for (std::size_t v = 0; v < n; ++v) cross[v] = rng.between(0, 2) == 0;
        std::vector<std::tuple<std::uint32_t, std::uint32_t, bool>> edges;
        for (std::uint32_t u = 0; u < n; ++u) {
            for (std::uint32_t v = 0; v < n; ++v) {
                if (u == v || rng.between(0, 2) != 0) continue;
                if (cross[u] || v > u) edges.emplace_back(u, v, cross[u]);
            }
        }
        const auto g = manual_graph(n, edges);
        std::optional<std::size_t> shortest;
        for (const auto& [hops, crossings] : simple_cycles(g)) {
            if (crossings == 1 && (!shortest || hops < *shortest)) shortest = hops;
        }
        const auto any = find_winding_cycle(g, CycleSearch::Any);
        const auto fewest = find_winding_cycle(g, CycleSearch::FewestHops);
        ASSERT_EQ(any.has_value(), shortest.has_value()) << "trial " << trial;
        if (!shortest) continue;
        ASSERT_EQ(fewest->vertices.size(), *shortest);
        for (const auto* c : {&*any, &*fewest}) {
            std::size_t crossings = 0;
            for (std::size_t k = 0; k < c->vertices.size(); ++k) {
                const auto u = c->vertices[k], v = c->vertices[(k + 1) % c->vertices.size()];
                auto it = std::find_if(g.out[u].begin(), g.out[u].end(), [&](const WindEdge& e) { return e.to == v; });
                ASSERT_NE(it, g.out[u].end());
                crossings += it->crosses ? 1 : 0;
            }
            EXPECT_EQ(crossings, 1u);
        }
    }
}

TEST(DecideMembership, EmptyS) {
    const std::vector<Halfplane> h = {{0, 1, 0, 0}};
    const auto r = decide_membership({}, std::vector<Point>{kOrigin}, h, 0);
    ASSERT_TRUE(r);
    EXPECT_TRUE(r->ids.empty());
    EXPECT_EQ(r->memb, 0u);
}

TEST(DecideMembership, SingleHalfplaneOverSprime) {
    const std::vector<Point> s = {kOrigin};
    const std::vector<Halfplane> h = {{0, 0, 1, 1}};  // y >= -1
    const auto r = decide_membership(s, s, h, 1);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->ids, (std::vector<RangeId>{0}));
    EXPECT_FALSE(decide_membership(s, s, h, 0));
}

TEST(DecideMembership, AgreesWithOracleOnRandomInstances) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto doc = generate_halfplanes({6, 6, static_cast<std::size_t>(6 + seed % 3), 3, 900 + seed, true, false});
        if (first_uncovered(doc.s, doc.halfplanes)) continue;
        const auto opt = exact_mmgsc_bruteforce(doc.s, doc.sprime, doc.halfplanes).value;
        HalfplaneDecider d(doc.s, doc.sprime, doc.halfplanes);
        for (std::size_t k = 0; k <= 2; ++k) {
            const auto r = d.decide(k);
            ASSERT_EQ(r.has_value(), opt <= k) << "seed " << seed << " k " << k;
            if (!r) continue;
            EXPECT_LE(r->cover.memb, k);
            EXPECT_TRUE(verify_cover(doc.s, r->cover.ids, doc.halfplanes));
        }
    }
}

TEST(ExactHalfplanes, ZeroMembership) {
    const std::vector<Point> s = {kOrigin};
    const std::vector<Point> sp = {pt("5", "5")};
    const std::vector<Halfplane> h = {{0, -1, 0, 1}, {1, 0, 1, 1}};  // x <= 1, y >= -1
    const auto sol = exact_mmgsc_halfplanes(s, sp, h);
    EXPECT_EQ(sol.memb, 0u);
    EXPECT_EQ(sol.ids, (std::vector<RangeId>{0}));
}

TEST(ExactHalfplanes, ForcedDoubleMembership) {
    const std::vector<Point> s = {pt("-3", "0"), pt("3", "0")};
    const std::vector<Point> sp = {kOrigin};
    const std::vector<Halfplane> h = {{0, -1, 0, 1}, {1, 1, 0, 1}};  // x <= 1, x >= -1
    EXPECT_EQ(exact_mmgsc_bruteforce(s, sp, h).value, 2u);
    EXPECT_EQ(exact_mmgsc_halfplanes(s, sp, h).memb, 2u);
}

TEST(ExactHalfplanes, Uncoverable) {
    const std::vector<Point> s = {pt("-3", "0")};
    const std::vector<Halfplane> h = {{0, 1, 0, 0}};
    EXPECT_THROW(exact_mmgsc_halfplanes(s, {}, h), Uncoverable);
}

TEST(ExactHalfplanes, MatchesOracleAndWitnessesCheckOut) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto doc = generate_halfplanes({8, 8, 8, 4, seed, true, false});
        if (first_uncovered(doc.s, doc.halfplanes)) continue;
        const auto opt = exact_mmgsc_bruteforce(doc.s, doc.sprime, doc.halfplanes).value;
        MembershipDecision trace;
        const auto sol = exact_mmgsc_halfplanes(doc.s, doc.sprime, doc.halfplanes, &trace);
        ASSERT_EQ(sol.memb, opt) << "seed " << seed;
        ASSERT_TRUE(verify_cover(doc.s, sol.ids, doc.halfplanes));
        ASSERT_EQ(memb_eval(doc.sprime, sol.ids, doc.halfplanes), sol.memb);
        if (!trace.witness) continue;
        HalfplaneDecider d(doc.s, doc.sprime, doc.halfplanes);
        auto lines = doc.halfplanes;
        lines.insert(lines.end(), d.dummies().begin(), d.dummies().end());
        const auto r = check_witness(*trace.witness, doc.s, doc.sprime, doc.halfplanes, lines, trace.k);
        EXPECT_TRUE(r.ok()) << "seed " << seed << " closed " << r.closed << " convex " << r.convex << " anchor "
                            << r.contains_anchor << " winding " << r.winding_one << " s-free " << r.s_interior_free
                            << " memb " << r.memb_within_k;
    }
}

TEST(ExactHalfplanes, Deterministic) {
    const auto doc = generate_halfplanes({8, 8, 8, 4, 3, true, false});
    MembershipDecision a, b;
    EXPECT_EQ(exact_mmgsc_halfplanes(doc.s, doc.sprime, doc.halfplanes, &a),
              exact_mmgsc_halfplanes(doc.s, doc.sprime, doc.halfplanes, &b));
    ASSERT_EQ(a.witness.has_value(), b.witness.has_value());
    if (a.witness) {
        ASSERT_EQ(a.witness->edges.size(), b.witness->edges.size());
        for (std::size_t k = 0; k < a.witness->edges.size(); ++k) {
            EXPECT_EQ(a.witness->edges[k].host, b.witness->edges[k].host);
            EXPECT_EQ(a.witness->edges[k].a, b.witness->edges[k].a);
        }
    }
}
