#pragma once

// Exact planar primitives: rational scalars, points, closed unit squares,
// closed integer halfplanes, orientation and clockwise angle-order predicates.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <ranges>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mmgsc/errors.hpp"

namespace mmgsc {

using Scalar = mpq_class;

inline int sign(const Scalar& v) { return sgn(v); }

inline mpz_class floor_of(const Scalar& v) {
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return out;
}

inline mpz_class ceil_of(const Scalar& v) {
    mpz_class out;
    mpz_cdiv_q(out.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return out;
}

// Accepts "7", "-3/4" and finite decimals such as "0.125". The result is in
// canonical reduced form.
inline std::optional<Scalar> try_parse_scalar(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::string s(text);
    const auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos) return std::nullopt;
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        const std::size_t frac_len = s.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+") return std::nullopt;
        mpz_class num;
        if (num.set_str(digits[0] == '+' ? digits.substr(1) : digits, 10) != 0) return std::nullopt;
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
        Scalar out(num, den);
        out.canonicalize();
        return out;
    }
    Scalar out;
    if (s[0] == '+') s.erase(0, 1);
    if (out.set_str(s, 10) != 0) return std::nullopt;
    if (out.get_den() == 0) return std::nullopt;
    out.canonicalize();
    return out;
}

inline Scalar parse_scalar(std::string_view text) {
    auto v = try_parse_scalar(text);
    if (!v) throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
    return *v;
}

inline std::string to_string(const Scalar& v) { return v.get_str(); }

struct Point {
    Scalar x;
    Scalar y;

    Point() = default;
    Point(Scalar x_, Scalar y_) : x(std::move(x_)), y(std::move(y_)) {}

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator<(const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }
    friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator*(const Scalar& s, const Point& a) { return {s * a.x, s * a.y}; }
};

inline Scalar cross(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }
inline Scalar dot(const Point& u, const Point& v) { return u.x * v.x + u.y * v.y; }

// >0 when (a, b, c) turn counter-clockwise, <0 clockwise, 0 collinear.
inline int orientation(const Point& a, const Point& b, const Point& c) { return sign(cross(b - a, c - a)); }

// Closed axis-parallel unit square [tr.x-1, tr.x] x [tr.y-1, tr.y].
struct UnitSquare {
    RangeId id = 0;
    Point tr;

    Scalar left() const { return tr.x - 1; }
    Scalar bottom() const { return tr.y - 1; }
    const Scalar& right() const { return tr.x; }
    const Scalar& top() const { return tr.y; }

    friend bool operator==(const UnitSquare&, const UnitSquare&) = default;
};

inline bool square_contains(const UnitSquare& q, const Point& p) {
    return q.tr.x - 1 <= p.x && p.x <= q.tr.x && q.tr.y - 1 <= p.y && p.y <= q.tr.y;
}

// Closed halfplane a*x + b*y + c >= 0 with normal (a, b) != (0, 0). The normal
// is kept unnormalized; only its direction is ever consulted.
struct Halfplane {
    RangeId id = 0;
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;

    Scalar eval(const Point& p) const { return Scalar(a) * p.x + Scalar(b) * p.y + Scalar(c); }
    Point normal() const { return {Scalar(a), Scalar(b)}; }
    // Closure of the complement, with the same id.
    Halfplane complement() const { return {id, -a, -b, -c}; }

    friend bool operator==(const Halfplane&, const Halfplane&) = default;
};

inline bool halfplane_contains(const Halfplane& h, const Point& p) { return sign(h.eval(p)) >= 0; }

inline bool contains(const UnitSquare& q, const Point& p) { return square_contains(q, p); }
inline bool contains(const Halfplane& h, const Point& p) { return halfplane_contains(h, p); }

template <class R>
concept PlanarRange = requires(const R& r, const Point& p) {
    { r.id } -> std::convertible_to<RangeId>;
    { contains(r, p) } -> std::same_as<bool>;
};

// Which half of the clockwise sweep starting at `ref` the vector `v` lies in:
// 0 for angles in [0, pi), 1 for [pi, 2 pi).
inline int clockwise_half(const Point& ref, const Point& v) {
    const int s = -sign(cross(ref, v));
    const int c = sign(dot(ref, v));
    return (s > 0 || (s == 0 && c > 0)) ? 0 : 1;
}

// Compares the clockwise angles ang(ref, u) and ang(ref, v), both in [0, 2 pi).
inline std::strong_ordering clockwise_angle_cmp(const Point& ref, const Point& u, const Point& v) {
    const int hu = clockwise_half(ref, u);
    const int hv = clockwise_half(ref, v);
    if (hu != hv) return hu <=> hv;
    // Same half: the two angles differ by less than pi.
    const int s = sign(cross(u, v));
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

inline std::strong_ordering angle_cmp(const Halfplane& ref, const Halfplane& u, const Halfplane& v) {
    return clockwise_angle_cmp(ref.normal(), u.normal(), v.normal());
}

// ang(u, v) == 0, i.e. the normals are positive multiples of each other.
inline bool same_direction(const Point& u, const Point& v) { return sign(cross(u, v)) == 0 && sign(dot(u, v)) > 0; }

// Three-way classification of ang(u, v) against pi: -1 below, 0 equal, +1 above.
inline int clockwise_angle_vs_pi(const Point& u, const Point& v) {
    const int s = -sign(cross(u, v));
    if (s > 0) return -1;
    if (s < 0) return 1;
    return sign(dot(u, v)) > 0 ? -1 : 0;
}

// Any contiguous list of ranges: std::vector, std::span, std::array.
template <class C>
concept RangeList = std::ranges::contiguous_range<C> && PlanarRange<std::ranges::range_value_t<C>>;

template <class C>
using range_of_t = std::remove_cvref_t<std::ranges::range_value_t<C>>;

template <RangeList C>
std::size_t depth(const C& ranges, const Point& p) {
    std::size_t n = 0;
    for (const auto& r : ranges) n += contains(r, p) ? 1 : 0;
    return n;
}

}  // namespace mmgsc
