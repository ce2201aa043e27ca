#pragma once

// Minimum-membership cover with halfplanes.
//
// The exact decision guesses a point p of the complement of the cover and
// looks for the complement polygon around it: a closed chain of boundary
// segments, turning right, that winds once around p. Chains of k+1
// consecutive edges are graph vertices, so the membership bound is local.
// The additive-error cover is a minimum-size cover pushed to a 1-stable one by
// swaps that strictly enlarge its union; the PTAS picks between the two.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <boost/container_hash/hash.hpp>
#include <boost/dynamic_bitset.hpp>

#include "mmgsc/arrangement.hpp"
#include "mmgsc/cover.hpp"
#include "mmgsc/cover_lp.hpp"
#include "mmgsc/region.hpp"

namespace mmgsc {

using Bits = boost::dynamic_bitset<std::uint64_t>;

inline Bits contained_mask(std::span<const Point> pts, const Halfplane& h) {
    Bits out(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) out[k] = halfplane_contains(h, pts[k]);
    return out;
}

// ---------------------------------------------------------------------------
// Plane covers

// Subsets of at most three halfplanes whose union is the plane: pairs, then
// triples containing no covering pair, each lexicographic by position.
inline std::vector<std::vector<RangeId>> plane_covering_subsets(std::span<const Halfplane> h) {
    const std::size_t n = h.size();
    std::vector<std::vector<RangeId>> out;
    std::vector<std::vector<bool>> pair(n, std::vector<bool>(n, false));
    auto ids = [](std::vector<RangeId> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            const std::vector<Halfplane> z = {h[u], h[v]};
            if (covers_plane(z)) {
                pair[u][v] = true;
                out.push_back(ids({h[u].id, h[v].id}));
            }
        }
    }
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (pair[u][v]) continue;
            for (std::size_t w = v + 1; w < n; ++w) {
                if (pair[u][w] || pair[v][w]) continue;
                const std::vector<Halfplane> z = {h[u], h[v], h[w]};
                if (covers_plane(z)) out.push_back(ids({h[u].id, h[v].id, h[w].id}));
            }
        }
    }
    return out;
}

inline std::optional<std::vector<RangeId>> plane_cover_triple(std::span<const Halfplane> h) {
    auto all = plane_covering_subsets(h);
    if (all.empty()) return std::nullopt;
    return all.front();
}

// ---------------------------------------------------------------------------
// Segments and the winding graph

// A piece of a boundary line between two of its intersections with other
// lines. Seen from the anchor, a comes before b clockwise.
struct SegmentPhi {
    RangeId host = 0;
    std::size_t line = 0;  // position of the host in distinct_halfplanes(active)
    Point a;
    Point b;
};

namespace detail {

inline bool same_halfplane(const Halfplane& g, const Halfplane& h) {
    const Scalar ga(g.a), gb(g.b), gc(g.c);
    return sign(ga * h.b - gb * h.a) == 0 && sign(ga * h.a + gb * h.b) > 0 && ga * h.c == Scalar(h.a) * gc &&
           gb * h.c == Scalar(h.b) * gc;
}

}  // namespace detail

// Drops later copies of the same closed halfplane (equal up to a positive
// factor), keeping the lowest id.
inline std::vector<Halfplane> distinct_halfplanes(std::span<const Halfplane> h) {
    std::vector<Halfplane> out;
    for (const auto& g : h) {
        auto it = std::find_if(out.begin(), out.end(), [&](const Halfplane& k) { return detail::same_halfplane(k, g); });
        if (it == out.end()) {
            out.push_back(g);
        } else if (g.id < it->id) {
            *it = g;
        }
    }
    return out;
}

// Every segment joining two intersection points on a boundary line.
inline std::vector<SegmentPhi> build_segments(std::span<const Halfplane> active, const Point& p) {
    for (const auto& h : active) {
        if (on_line(h, p)) throw AnchorOnLine(h.id);
        if (halfplane_contains(h, p)) {
            throw std::invalid_argument("halfplane " + std::to_string(h.id) + " contains the anchor");
        }
    }
    const auto lines = distinct_halfplanes(active);
    std::vector<SegmentPhi> out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::vector<Point> pts;
        for (std::size_t j = 0; j < lines.size(); ++j) {
            if (j == i) continue;
            if (auto q = line_intersection(lines[i], lines[j])) pts.push_back(std::move(*q));
        }
        const Point dir{Scalar(-lines[i].b), Scalar(lines[i].a)};
        std::sort(pts.begin(), pts.end(), [&](const Point& u, const Point& v) { return dot(u, dir) < dot(v, dir); });
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        for (std::size_t u = 0; u < pts.size(); ++u) {
            for (std::size_t v = u + 1; v < pts.size(); ++v) {
                SegmentPhi seg{lines[i].id, i, pts[u], pts[v]};
                if (orientation(p, seg.a, seg.b) > 0) std::swap(seg.a, seg.b);
                out.push_back(std::move(seg));
            }
        }
    }
    return out;
}

// Closed triangle (p, a, b) holds a point of S off the segment itself. Such a
// point would be interior to any polygon using the segment as an edge.
inline bool shadows_point(const Point& p, const SegmentPhi& seg, std::span<const Point> s) {
    return std::any_of(s.begin(), s.end(), [&](const Point& q) {
        return orientation(p, seg.a, q) <= 0 && orientation(seg.b, p, q) <= 0 && orientation(seg.a, seg.b, q) < 0;
    });
}

// Clockwise arc of the segment, seen from p, strictly contains direction d.
inline bool segment_crosses_ray(const Point& p, const SegmentPhi& seg, const Point& d) {
    return sign(cross(seg.a - p, d)) < 0 && sign(cross(d, seg.b - p)) < 0;
}

// First direction (1, q), q = 0, 1, -1, 2, -2, ..., whose ray from p meets
// none of the points.
inline Point reference_direction(const Point& p, std::span<const Point> avoid) {
    for (std::int64_t step = 0;; ++step) {
        const std::int64_t q = (step % 2 == 1) ? (step + 1) / 2 : -(step / 2);
        const Point d{Scalar(1), Scalar(q)};
        const bool hit = std::any_of(avoid.begin(), avoid.end(), [&](const Point& e) {
            const Point v = e - p;
            return sign(cross(d, v)) == 0 && sign(dot(d, v)) > 0;
        });
        if (!hit) return d;
    }
}

// Everything about one anchor that does not depend on k.
struct AnchorFrame {
    Point anchor;
    Point ray;
    std::vector<SegmentPhi> segments;  // only segments shadowing no point of S
    std::vector<std::vector<std::uint32_t>> succ;
    std::vector<bool> crosses;
    std::vector<Bits> sprime_in;  // per segment: S' points inside its host
};

inline AnchorFrame make_anchor_frame(std::span<const Point> s, std::span<const Point> sprime,
                                     std::span<const Halfplane> active, const Point& p) {
    AnchorFrame f;
    f.anchor = p;
    const auto lines = distinct_halfplanes(active);
    for (auto& seg : build_segments(active, p)) {
        if (!shadows_point(p, seg, s)) f.segments.push_back(std::move(seg));
    }
    std::vector<Point> ends;
    for (const auto& seg : f.segments) {
        ends.push_back(seg.a);
        ends.push_back(seg.b);
    }
    f.ray = reference_direction(p, ends);

    std::vector<Bits> host_mask;
    for (const auto& h : lines) host_mask.push_back(contained_mask(sprime, h));
    std::map<Point, std::vector<std::uint32_t>> by_left;
    for (std::uint32_t k = 0; k < f.segments.size(); ++k) {
        const auto& seg = f.segments[k];
        by_left[seg.a].push_back(k);
        f.crosses.push_back(segment_crosses_ray(p, seg, f.ray));
        f.sprime_in.push_back(host_mask[seg.line]);
    }
    f.succ.resize(f.segments.size());
    for (std::uint32_t k = 0; k < f.segments.size(); ++k) {
        const auto& seg = f.segments[k];
        auto it = by_left.find(seg.b);
        if (it == by_left.end()) continue;
        for (std::uint32_t next : it->second) {
            const auto& nx = f.segments[next];
            if (nx.line != seg.line && orientation(seg.a, seg.b, nx.b) < 0) f.succ[k].push_back(next);
        }
    }

    return f;
}

struct WindEdge {
    std::uint32_t to = 0;
    bool crosses = false;
};

// Vertices are clockwise right-turning chains of k+1 segments whose host
// halfplanes share no point of S'. An edge shifts the chain by one segment;
// it crosses the reference ray when the first segment of its source does.
struct WindGraph {
    std::size_t arity = 1;  // k + 1
    std::vector<std::uint32_t> tuples;  // flat, arity entries per vertex
    std::vector<std::vector<WindEdge>> out;

    std::size_t size() const { return out.size(); }
    std::span<const std::uint32_t> tuple(std::size_t v) const {
        return std::span<const std::uint32_t>(tuples).subspan(v * arity, arity);
    }
    std::size_t edge_count() const {
        std::size_t n = 0;
        for (const auto& e : out) n += e.size();
        return n;
    }
};

inline WindGraph build_wind_graph(const AnchorFrame& f, std::size_t k) {
    WindGraph g;
    g.arity = k + 1;
    const std::size_t m = f.segments.size();
    using Key = std::vector<std::uint32_t>;
    std::unordered_map<Key, std::uint32_t, boost::hash<Key>> index;
    Key chain;
    std::vector<Bits> common;
    auto extend = [&](auto&& self) -> void {
        if (chain.size() == g.arity) {
            if (common.back().none()) {
                index.emplace(chain, static_cast<std::uint32_t>(g.out.size()));
                g.tuples.insert(g.tuples.end(), chain.begin(), chain.end());
                g.out.emplace_back();
            }
            return;
        }
        for (std::uint32_t next : f.succ[chain.back()]) {
            chain.push_back(next);
            common.push_back(common.back() & f.sprime_in[next]);
            self(self);
            common.pop_back();
            chain.pop_back();
        }
    };
    for (std::uint32_t s0 = 0; s0 < m; ++s0) {
        chain = {s0};
        common = {f.sprime_in[s0]};
        extend(extend);
    }
    Key key(g.arity);
    for (std::size_t v = 0; v < g.size(); ++v) {
        const auto t = g.tuple(v);
        std::copy(t.begin() + 1, t.end(), key.begin());
        for (std::uint32_t next : f.succ[t.back()]) {
            key.back() = next;
            if (auto it = index.find(key); it != index.end()) {
                g.out[v].push_back({it->second, static_cast<bool>(f.crosses[t.front()])});
            }
        }
    }
    return g;
}

// The graph for anchor p over the halfplanes that do not contain it.
inline WindGraph build_decision_graph(std::span<const Point> s, std::span<const Point> sprime,
                                      std::span<const Halfplane> active, const Point& p, std::size_t k) {
    return build_wind_graph(make_anchor_frame(s, sprime, active, p), k);
}

enum class CycleSearch { Any, FewestHops };

// v0 -> v1 -> ... -> v0; the edge out of v0 is the only ray crossing.
struct WindingCycle {
    std::vector<std::uint32_t> vertices;
};

namespace detail {

inline bool vertex_crosses(const WindGraph& g, std::size_t v) {
    return !g.out[v].empty() && g.out[v].front().crosses;
}

// Shortest path from u's crossing edge back to u through non-crossing vertices.
inline std::optional<WindingCycle> cycle_through(const WindGraph& g, std::uint32_t u) {
    constexpr std::uint32_t kNone = UINT32_MAX;
    std::vector<std::uint32_t> parent(g.size(), kNone);
    std::queue<std::uint32_t> q;
    for (const auto& e : g.out[u]) {
        if (e.to == u) return WindingCycle{{u}};
        if (vertex_crosses(g, e.to) || parent[e.to] != kNone) continue;
        parent[e.to] = u;
        q.push(e.to);
    }
    while (!q.empty()) {
        const std::uint32_t x = q.front();
        q.pop();
        for (const auto& e : g.out[x]) {
            if (e.to == u) {
                std::vector<std::uint32_t> path;
                for (std::uint32_t y = x; y != u; y = parent[y]) path.push_back(y);
                path.push_back(u);
                std::reverse(path.begin(), path.end());
                return WindingCycle{std::move(path)};
            }
            if (vertex_crosses(g, e.to) || parent[e.to] != kNone) continue;
            parent[e.to] = x;
            q.push(e.to);
        }
    }
    return std::nullopt;
}

}  // namespace detail

// A cycle crossing the reference ray exactly once, i.e. of winding number one.
// Non-crossing edges strictly advance the clockwise angle of the first left
// endpoint, so the non-crossing part is acyclic; walking it in reverse
// topological order gives every vertex the crossing vertices it can reach.
inline std::optional<WindingCycle> find_winding_cycle(const WindGraph& g, CycleSearch mode = CycleSearch::Any) {
    const std::size_t n = g.size();
    std::vector<std::uint32_t> crossing;
    std::vector<std::uint32_t> indegree(n, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
        if (detail::vertex_crosses(g, v)) {
            crossing.push_back(v);
            continue;
        }
        for (const auto& e : g.out[v]) {
            if (!detail::vertex_crosses(g, e.to)) ++indegree[e.to];
        }
    }
    if (crossing.empty()) return std::nullopt;
    std::vector<std::uint32_t> plain;  // topological order
    for (std::uint32_t v = 0; v < n; ++v) {
        if (!detail::vertex_crosses(g, v) && indegree[v] == 0) plain.push_back(v);
    }
    for (std::size_t head = 0; head < plain.size(); ++head) {
        for (const auto& e : g.out[plain[head]]) {
            if (!detail::vertex_crosses(g, e.to) && --indegree[e.to] == 0) plain.push_back(e.to);
        }
    }
    if (plain.size() + crossing.size() != n) throw std::logic_error("non-crossing edges form a cycle");
    std::reverse(plain.begin(), plain.end());

    std::vector<std::int64_t> slot(n, -1);
    std::vector<std::uint64_t> reach(n, 0);
    std::optional<WindingCycle> best;
    for (std::size_t lo = 0; lo < crossing.size(); lo += 64) {
        const std::size_t hi = std::min(crossing.size(), lo + 64);
        std::fill(slot.begin(), slot.end(), -1);
        for (std::size_t c = lo; c < hi; ++c) slot[crossing[c]] = static_cast<std::int64_t>(c - lo);
        for (std::uint32_t v : plain) {
            std::uint64_t r = 0;
            for (const auto& e : g.out[v]) {
                if (slot[e.to] >= 0) {
                    r |= std::uint64_t{1} << slot[e.to];
                } else if (!detail::vertex_crosses(g, e.to)) {
                    r |= reach[e.to];
                }
            }
            reach[v] = r;
        }
        for (std::size_t c = lo; c < hi; ++c) {
            const std::uint32_t u = crossing[c];
            const std::uint64_t bit = std::uint64_t{1} << (c - lo);
            const bool closes = std::any_of(g.out[u].begin(), g.out[u].end(), [&](const WindEdge& e) {
                return e.to == u || (!detail::vertex_crosses(g, e.to) && (reach[e.to] & bit));
            });
            if (!closes) continue;
            auto cyc = detail::cycle_through(g, u);
            if (!cyc) throw std::logic_error("reachability and path search disagree");
            if (mode == CycleSearch::Any) return cyc;
            if (!best || cyc->vertices.size() < best->vertices.size()) best = std::move(cyc);
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Exact decision and optimum

// The polygon behind a winding cycle: edges clockwise, each on the boundary
// of its host halfplane.
struct WindingWitness {
    Point anchor;
    Point ray;
    std::vector<SegmentPhi> edges;
    std::size_t crossings = 0;
};

struct MembershipDecision {
    CoverSolution cover;
    std::size_t k = 0;
    std::optional<WindingWitness> witness;  // absent for an empty S or a plane-covering subset
};

// Decides "is there a cover of S with membership at most k" for increasing k
// on one instance, reusing per-anchor work.
class HalfplaneDecider {
public:
    HalfplaneDecider(std::span<const Point> s, std::span<const Point> sprime, std::span<const Halfplane> h)
        : s_(s.begin(), s.end()), sprime_(sprime.begin(), sprime.end()), h_(h.begin(), h.end()) {
        Scalar big(0);
        for (const auto* pts : {&s_, &sprime_}) {
            for (const auto& p : *pts) big = std::max({big, Scalar(abs(p.x)), Scalar(abs(p.y))});
        }
        delta_ = ceil_of(big).get_si() + 1;
        RangeId next = 0;
        for (const auto& g : h_) next = std::max(next, g.id + 1);
        first_dummy_ = next;
        dummies_ = {{next, 0, -1, -delta_}, {next + 1, 0, 1, -delta_}, {next + 2, -1, 0, -delta_},
                    {next + 3, 1, 0, -delta_}};
        lines_ = h_;
        lines_.insert(lines_.end(), dummies_.begin(), dummies_.end());
        // With the dummies added the union may already be the plane; they
        // hold no point of S or S', so dropping them afterwards is free.
        for (auto ids : plane_covering_subsets(lines_)) {
            std::erase_if(ids, [&](RangeId id) { return is_dummy(id); });
            plane_covers_.push_back(std::move(ids));
        }

        std::vector<std::vector<int>> seen;
        std::vector<std::vector<int>> s_faces;
        for (const auto& q : s_) s_faces.push_back(sign_vector(lines_, q));
        std::sort(s_faces.begin(), s_faces.end());
        for (auto& p : face_sample_points(lines_)) {
            if (abs(p.x) >= delta_ || abs(p.y) >= delta_) continue;
            auto sv = sign_vector(lines_, p);
            if (std::binary_search(s_faces.begin(), s_faces.end(), sv)) continue;
            if (std::find(seen.begin(), seen.end(), sv) != seen.end()) continue;
            seen.push_back(std::move(sv));
            anchors_.push_back(std::move(p));
        }
        frames_.resize(anchors_.size());
    }

    const std::vector<Halfplane>& dummies() const { return dummies_; }
    std::int64_t box_half_width() const { return delta_; }
    const std::vector<Point>& anchors() const { return anchors_; }
    bool is_dummy(RangeId id) const { return id >= first_dummy_; }

    const AnchorFrame& frame(std::size_t a) {
        if (!frames_[a]) {
            std::vector<Halfplane> active;
            for (const auto& g : lines_) {
                if (!halfplane_contains(g, anchors_[a])) active.push_back(g);
            }
            frames_[a] = make_anchor_frame(s_, sprime_, active, anchors_[a]);
        }
        return *frames_[a];
    }

    std::optional<MembershipDecision> decide(std::size_t k, CycleSearch mode = CycleSearch::Any) {
        if (s_.empty()) return MembershipDecision{{}, k, std::nullopt};
        for (const auto& ids : plane_covers_) {
            auto sol = make_solution(ids, sprime_, h_);
            if (sol.memb <= k) return MembershipDecision{std::move(sol), k, std::nullopt};
        }
        for (std::size_t a = 0; a < anchors_.size(); ++a) {
            const auto& f = frame(a);
            const auto g = build_wind_graph(f, k);
            const auto cyc = find_winding_cycle(g, mode);
            if (!cyc) continue;
            WindingWitness w{f.anchor, f.ray, {}, 0};
            std::vector<RangeId> ids;
            for (std::uint32_t v : cyc->vertices) {
                const auto& seg = f.segments[g.tuple(v).front()];
                w.crossings += f.crosses[g.tuple(v).front()] ? 1 : 0;
                w.edges.push_back(seg);
                if (!is_dummy(seg.host)) ids.push_back(seg.host);
            }
            auto sol = make_solution(std::move(ids), sprime_, h_);
            if (sol.memb > k || first_uncovered(s_, select_ranges(h_, sol.ids))) {
                throw std::logic_error("winding cycle does not give a valid cover");
            }
            return MembershipDecision{std::move(sol), k, std::move(w)};
        }
        return std::nullopt;
    }

private:
    std::vector<Point> s_, sprime_;
    std::vector<Halfplane> h_;
    std::int64_t delta_ = 1;
    RangeId first_dummy_ = 0;
    std::vector<Halfplane> dummies_;
    std::vector<Halfplane> lines_;
    std::vector<std::vector<RangeId>> plane_covers_;
    std::vector<Point> anchors_;
    std::vector<std::optional<AnchorFrame>> frames_;
};

inline std::optional<CoverSolution> decide_membership(std::span<const Point> s, std::span<const Point> sprime,
                                                      std::span<const Halfplane> h, std::size_t k) {
    HalfplaneDecider d(s, sprime, h);
    if (auto r = d.decide(k)) return std::move(r->cover);
    return std::nullopt;
}

// Optimum found by raising k from 0; `trace` receives the successful decision.
inline CoverSolution exact_mmgsc_halfplanes(std::span<const Point> s, std::span<const Point> sprime,
                                            std::span<const Halfplane> h, MembershipDecision* trace = nullptr) {
    require_coverable(s, h);
    HalfplaneDecider d(s, sprime, h);
    for (std::size_t k = 0; k <= h.size(); ++k) {
        if (auto r = d.decide(k)) {
            if (trace) *trace = *r;
            return std::move(r->cover);
        }
    }
    throw std::logic_error("no cover found although S is coverable");
}

// ---------------------------------------------------------------------------
// Minimum-size cover

// Exact branch and bound: branch on the uncovered point with the fewest
// candidate halfplanes, prune by a packing bound, stop at the LP bound.
inline CoverSolution min_size_halfplane_cover(std::span<const Point> s, std::span<const Halfplane> h,
                                              std::span<const Point> sprime = {}) {
    require_coverable(s, h);
    if (s.empty()) return {};
    std::vector<Bits> cov;
    for (const auto& g : h) cov.push_back(contained_mask(s, g));
    std::vector<std::size_t> cand;
    for (std::size_t j = 0; j < h.size(); ++j) {
        if (cov[j].none()) continue;
        bool dominated = false;
        for (std::size_t i = 0; i < h.size() && !dominated; ++i) {
            if (i == j || !cov[j].is_subset_of(cov[i])) continue;
            dominated = cov[i] != cov[j] || h[i].id < h[j].id || (h[i].id == h[j].id && i < j);
        }
        if (!dominated) cand.push_back(j);
    }
    std::vector<Halfplane> cand_h;
    for (std::size_t j : cand) cand_h.push_back(h[j]);
    const auto lp = solve_lp(build_size_lp(s, cand_h));
    const std::size_t lower = static_cast<std::size_t>(ceil_of(lp.value).get_ui());

    // per point, the candidates containing it
    std::vector<Bits> holders(s.size(), Bits(cand.size()));
    for (std::size_t c = 0; c < cand.size(); ++c) {
        for (std::size_t p = 0; p < s.size(); ++p) holders[p][c] = cov[cand[c]][p];
    }

    std::vector<std::size_t> best;
    {
        Bits covered(s.size());
        while (!covered.all()) {
            std::size_t pick = 0, gain = 0;
            for (std::size_t c = 0; c < cand.size(); ++c) {
                const std::size_t g = (cov[cand[c]] - covered).count();
                if (g > gain) {
                    gain = g;
                    pick = c;
                }
            }
            best.push_back(pick);
            covered |= cov[cand[pick]];
        }
    }

    auto packing = [&](const Bits& covered) {
        Bits used(cand.size());
        std::size_t n = 0;
        for (std::size_t p = 0; p < s.size(); ++p) {
            if (covered[p] || holders[p].intersects(used)) continue;
            used |= holders[p];
            ++n;
        }
        return n;
    };

    std::vector<std::size_t> chosen;
    auto search = [&](auto&& self, const Bits& covered) -> void {
        if (best.size() == lower) return;
        if (covered.all()) {
            if (chosen.size() < best.size()) best = chosen;
            return;
        }
        if (chosen.size() + packing(covered) >= best.size()) return;
        std::size_t point = s.size(), fewest = SIZE_MAX;
        for (std::size_t p = 0; p < s.size(); ++p) {
            if (covered[p]) continue;
            const std::size_t n = holders[p].count();
            if (n < fewest) {
                fewest = n;
                point = p;
            }
        }
        std::vector<std::pair<std::size_t, std::size_t>> order;  // (gain, candidate)
        for (std::size_t c = holders[point].find_first(); c != Bits::npos; c = holders[point].find_next(c)) {
            order.emplace_back((cov[cand[c]] - covered).count(), c);
        }
        std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
        for (const auto& [gain, c] : order) {
            chosen.push_back(c);
            self(self, covered | cov[cand[c]]);
            chosen.pop_back();
        }
    };
    search(search, Bits(s.size()));

    std::vector<RangeId> ids;
    for (std::size_t c : best) ids.push_back(h[cand[c]].id);
    return make_solution(std::move(ids), sprime, h);
}

// ---------------------------------------------------------------------------
// Stable local search

struct StabilityConfig {
    std::size_t k = 1;  // largest swap
    std::size_t iteration_cap = 10'000;
};

namespace detail {

// Calls fn on each t-subset of [0, n) in lexicographic order until it returns true.
inline bool for_each_combination(std::size_t n, std::size_t t, const std::function<bool(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> pick;
    auto rec = [&](auto&& self, std::size_t from) -> bool {
        if (pick.size() == t) return fn(pick);
        for (std::size_t j = from; j + (t - pick.size()) <= n; ++j) {
            pick.push_back(j);
            if (self(self, j + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    return rec(rec, 0);
}

}  // namespace detail

// First swap of at most k members (by size, then lexicographic by position)
// that strictly enlarges the union, as the new id set.
inline std::optional<std::vector<RangeId>> find_expanding_swap(std::span<const RangeId> z, std::span<const Halfplane> h,
                                                               std::size_t k = 1) {
    const auto zs = select_ranges(h, z);
    std::vector<Halfplane> outside;
    for (const auto& g : h) {
        if (std::find(z.begin(), z.end(), g.id) == z.end()) outside.push_back(g);
    }
    std::optional<std::vector<RangeId>> found;
    for (std::size_t t = 1; t <= k && !found; ++t) {
        detail::for_each_combination(zs.size(), t, [&](const std::vector<std::size_t>& drop) {
            return detail::for_each_combination(outside.size(), t, [&](const std::vector<std::size_t>& add) {
                std::vector<Halfplane> next;
                for (std::size_t j = 0; j < zs.size(); ++j) {
                    if (std::find(drop.begin(), drop.end(), j) == drop.end()) next.push_back(zs[j]);
                }
                for (std::size_t j : add) next.push_back(outside[j]);
                if (union_compare(zs, next) != UnionOrder::Subset) return false;
                std::vector<RangeId> ids;
                for (const auto& g : next) ids.push_back(g.id);
                normalize_ids(ids);
                found = std::move(ids);
                return true;
            });
        });
    }
    return found;
}

struct LocalSearchTrace {
    std::size_t swaps = 0;
    bool stable = false;  // false only when the iteration cap stopped the search
};

// Swaps until no swap of at most cfg.k members enlarges the union. Size and
// coverage of anything inside the union are preserved.
inline CoverSolution one_stable_local_search(std::span<const RangeId> z, std::span<const Halfplane> h,
                                             std::span<const Point> sprime, const StabilityConfig& cfg = {},
                                             LocalSearchTrace* trace = nullptr) {
    if (cfg.k == 0) throw std::invalid_argument("swap size must be at least 1");
    std::vector<RangeId> cur(z.begin(), z.end());
    normalize_ids(cur);
    LocalSearchTrace t;
    for (;;) {
        if (t.swaps >= cfg.iteration_cap) break;
        auto next = find_expanding_swap(cur, h, cfg.k);
        if (!next) {
            t.stable = true;
            break;
        }
        cur = std::move(*next);
        ++t.swaps;
    }
    if (trace) *trace = t;
    return make_solution(std::move(cur), sprime, h);
}

// ---------------------------------------------------------------------------
// Additive-error cover and the PTAS

enum class AdditiveBranch { PlaneCover, ZeroMembership, LocalSearch };

struct AdditiveTrace {
    AdditiveBranch branch = AdditiveBranch::LocalSearch;
    std::vector<RangeId> min_size;  // start of the local search
    LocalSearchTrace search;
};

inline std::string branch_name(AdditiveBranch b) {
    switch (b) {
        case AdditiveBranch::PlaneCover: return "plane-cover";
        case AdditiveBranch::ZeroMembership: return "zero-membership";
        case AdditiveBranch::LocalSearch: return "local-search";
    }
    return "unknown";
}

// Membership at most opt + 2. A plane-covering subset is used when the
// halfplanes cover the plane; if its membership is 3, opt = 0 is ruled out
// first by covering S with the halfplanes that avoid S'.
inline CoverSolution additive_error_cover(std::span<const Point> s, std::span<const Point> sprime,
                                          std::span<const Halfplane> h, AdditiveTrace* trace = nullptr) {
    require_coverable(s, h);
    AdditiveTrace t;
    const auto covers = plane_covering_subsets(h);
    std::optional<CoverSolution> out;
    if (!covers.empty()) {
        std::optional<CoverSolution> best;
        for (const auto& ids : covers) {
            auto sol = make_solution(ids, sprime, h);
            if (!best || sol.memb < best->memb) best = std::move(sol);
        }
        t.branch = AdditiveBranch::PlaneCover;
        if (best->memb > 2) {
            std::vector<Halfplane> avoid;
            for (const auto& g : h) {
                if (contained_mask(sprime, g).none()) avoid.push_back(g);
            }
            if (!first_uncovered(s, avoid)) {
                t.branch = AdditiveBranch::ZeroMembership;
                best = min_size_halfplane_cover(s, avoid, sprime);
            }
        }
        out = std::move(best);
    } else {
        const auto z = min_size_halfplane_cover(s, h);
        t.min_size = z.ids;
        out = one_stable_local_search(z.ids, h, sprime, {}, &t.search);
    }
    if (trace) *trace = std::move(t);
    return std::move(*out);
}

enum class PtasBranch { Additive, Exact };

struct PtasTrace {
    PtasBranch branch = PtasBranch::Additive;
    Scalar threshold;  // (1 + eps) / eps * c
    AdditiveTrace additive;
    std::optional<MembershipDecision> exact;
};

inline constexpr std::size_t kAdditiveError = 2;

// (1 + eps)-approximation: the additive cover when its membership reaches the
// threshold, otherwise the exact optimum searched below the threshold.
inline CoverSolution ptas(std::span<const Point> s, std::span<const Point> sprime, std::span<const Halfplane> h,
                          const Scalar& eps, PtasTrace* trace = nullptr) {
    if (sign(eps) <= 0) throw std::invalid_argument("eps must be positive");
    PtasTrace t;
    t.threshold = (1 + eps) / eps * Scalar(static_cast<long>(kAdditiveError));
    auto additive = additive_error_cover(s, sprime, h, &t.additive);
    std::optional<CoverSolution> out;
    if (Scalar(static_cast<long>(additive.memb)) >= t.threshold) {
        out = std::move(additive);
    } else {
        t.branch = PtasBranch::Exact;
        HalfplaneDecider d(s, sprime, h);
        for (std::size_t k = 0; Scalar(static_cast<long>(k)) < t.threshold && !out; ++k) {
            if (auto r = d.decide(k)) {
                out = r->cover;
                t.exact = std::move(r);
            }
        }
        if (!out) throw std::logic_error("exact search found nothing below the additive cover's membership");
    }
    if (trace) *trace = std::move(t);
    return std::move(*out);
}

}  // namespace mmgsc
