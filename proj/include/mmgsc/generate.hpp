#pragma once

// Seeded random instances. Draws avoid std::uniform_int_distribution so the
// same seed gives the same document with every standard library.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>

#include "mmgsc/instance.hpp"

namespace mmgsc {

struct GenParams {
    std::size_t n_points = 8;
    std::size_t n_sprime = 8;
    std::size_t n_ranges = 8;
    std::int64_t extent = 4;  // squares: [0, E]^2; halfplanes: [-E, E]^2
    std::uint64_t seed = 0;
    bool coverable = true;    // every point of S lies in some range
    bool single_cell = false; // squares only: S in cell (0, 0), squares meeting it
};

inline constexpr std::int64_t kSquareResolution = 64;
inline constexpr std::int64_t kNormalBound = 32;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform integer in [lo, hi] by rejection.
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return lo + static_cast<std::int64_t>(v % span);
    }

    Scalar grid_value(std::int64_t lo_steps, std::int64_t hi_steps) {
        return Scalar(between(lo_steps, hi_steps), kSquareResolution);
    }

private:
    std::mt19937_64 engine_;
};

namespace detail {

inline Point square_point(Rng& rng, std::int64_t lo, std::int64_t hi) {
    Scalar x = rng.grid_value(lo, hi), y = rng.grid_value(lo, hi);
    x.canonicalize();
    y.canonicalize();
    return {x, y};
}

inline Point point_in_square(Rng& rng, const UnitSquare& q, bool single_cell) {
    const std::int64_t r = kSquareResolution;
    auto steps = [&](const Scalar& top) {
        Scalar v = top * r;
        return v.get_num().get_si();
    };
    std::int64_t x_lo = steps(q.tr.x) - r, x_hi = steps(q.tr.x);
    std::int64_t y_lo = steps(q.tr.y) - r, y_hi = steps(q.tr.y);
    if (single_cell) {
        x_lo = std::max<std::int64_t>(x_lo, 0);
        y_lo = std::max<std::int64_t>(y_lo, 0);
        x_hi = std::min<std::int64_t>(x_hi, r - 1);
        y_hi = std::min<std::int64_t>(y_hi, r - 1);
    }
    Scalar x = rng.grid_value(x_lo, x_hi), y = rng.grid_value(y_lo, y_hi);
    x.canonicalize();
    y.canonicalize();
    return {x, y};
}

}  // namespace detail

inline InstanceDoc generate_squares(const GenParams& params) {
    Rng rng(params.seed);
    InstanceDoc doc;
    doc.kind = RangeKind::Squares;
    doc.seed = params.seed;
    const std::int64_t r = kSquareResolution;
    // Corner ranges: single cell squares meet [0,1]^2 iff tr in [0,2]^2.
    const std::int64_t tr_lo = 0, tr_hi = params.single_cell ? 2 * r : params.extent * r;
    for (std::size_t k = 0; k < params.n_ranges; ++k) {
        doc.squares.push_back({k, detail::square_point(rng, tr_lo, tr_hi)});
    }
    const std::int64_t p_hi = params.single_cell ? r - 1 : params.extent * r;
    for (std::size_t k = 0; k < params.n_points; ++k) {
        std::vector<const UnitSquare*> hosts;
        if (params.coverable) {
            for (const auto& q : doc.squares) {
                // A square touching the cell only along its top or right side
                // holds no point of the half-open cell.
                if (!params.single_cell || (q.tr.x < 2 && q.tr.y < 2)) hosts.push_back(&q);
            }
        }
        if (!hosts.empty()) {
            const auto* q = hosts[static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(hosts.size()) - 1))];
            doc.s.push_back(detail::point_in_square(rng, *q, params.single_cell));
        } else {
            doc.s.push_back(detail::square_point(rng, 0, p_hi));
        }
    }
    for (std::size_t k = 0; k < params.n_sprime; ++k) doc.sprime.push_back(detail::square_point(rng, 0, p_hi));
    return doc;
}

inline InstanceDoc generate_halfplanes(const GenParams& params) {
    Rng rng(params.seed);
    InstanceDoc doc;
    doc.kind = RangeKind::Halfplanes;
    doc.seed = params.seed;
    const std::int64_t e = params.extent;
    for (std::size_t k = 0; k < params.n_ranges; ++k) {
        std::int64_t a = 0, b = 0;
        while (a == 0 && b == 0) {
            a = rng.between(-kNormalBound, kNormalBound);
            b = rng.between(-kNormalBound, kNormalBound);
        }
        const std::int64_t x0 = rng.between(-e, e), y0 = rng.between(-e, e);
        doc.halfplanes.push_back({k, a, b, -(a * x0 + b * y0)});
    }
    const std::int64_t r = kSquareResolution;
    auto draw = [&] { return detail::square_point(rng, -e * r, e * r); };
    for (std::size_t k = 0; k < params.n_points; ++k) {
        Point p = draw();
        if (params.coverable && !doc.halfplanes.empty()) {
            for (int attempt = 0; attempt < 1000 && depth(std::span<const Halfplane>(doc.halfplanes), p) == 0; ++attempt) {
                p = draw();
            }
        }
        doc.s.push_back(std::move(p));
    }
    for (std::size_t k = 0; k < params.n_sprime; ++k) doc.sprime.push_back(draw());
    return doc;
}

inline InstanceDoc generate(RangeKind kind, const GenParams& params) {
    return kind == RangeKind::Squares ? generate_squares(params) : generate_halfplanes(params);
}

}  // namespace mmgsc
