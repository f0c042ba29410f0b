#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "orbitlab/rational.hpp"

namespace orbitlab {

struct RatPoint {
    Rational x, y;

    friend bool operator==(const RatPoint& a, const RatPoint& b) {
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const RatPoint& a, const RatPoint& b) { return !(a == b); }
    friend bool operator<(const RatPoint& a, const RatPoint& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
    std::string str() const { return "(" + x.str() + ", " + y.str() + ")"; }
};

inline void require_dyadic(const RatPoint& p, const char* what) {
    if (!p.x.is_dyadic() || !p.y.is_dyadic())
        throw InvariantViolationError(std::string(what) + ": coordinates must be dyadic");
}

/// Axis-aligned box given by its corner coordinates, x0 <= x1 and y0 <= y1.
/// A box may be degenerate in either dimension (a segment or a point).
struct Box {
    Rational x0, y0, x1, y1;

    Box() = default;
    Box(Rational x0_, Rational y0_, Rational x1_, Rational y1_)
        : x0(x0_), y0(y0_), x1(x1_), y1(y1_) {
        if (x1 < x0 || y1 < y0) throw InvariantViolationError("box with inverted corners");
    }

    Rational width() const { return x1 - x0; }
    Rational height() const { return y1 - y0; }
    Rational area() const { return width() * height(); }
    bool degenerate() const { return x0 == x1 || y0 == y1; }
    bool is_point() const { return x0 == x1 && y0 == y1; }
    // Degenerate in exactly one dimension.
    bool is_segment() const { return degenerate() && !is_point(); }
    bool horizontal() const { return y0 == y1; }

    bool contains_open(const RatPoint& p) const {
        return x0 < p.x && p.x < x1 && y0 < p.y && p.y < y1;
    }
    bool contains_closed(const RatPoint& p) const {
        return x0 <= p.x && p.x <= x1 && y0 <= p.y && p.y <= y1;
    }
    /// other lies (non-strictly) inside this box.
    bool contains_box(const Box& other) const {
        return x0 <= other.x0 && other.x1 <= x1 && y0 <= other.y0 && other.y1 <= y1;
    }

    Box inflated(const Rational& r) const { return Box(x0 - r, y0 - r, x1 + r, y1 + r); }

    Box hull(const Box& o) const {
        return Box(Rational::min(x0, o.x0), Rational::min(y0, o.y0),
                   Rational::max(x1, o.x1), Rational::max(y1, o.y1));
    }

    friend bool operator==(const Box& a, const Box& b) {
        return a.x0 == b.x0 && a.y0 == b.y0 && a.x1 == b.x1 && a.y1 == b.y1;
    }
    friend bool operator!=(const Box& a, const Box& b) { return !(a == b); }

    std::string str() const {
        return "[" + x0.str() + "," + x1.str() + "]x[" + y0.str() + "," + y1.str() + "]";
    }
};

/// Sup-metric distance from a point to a closed box (0 when inside).
inline Rational dist_inf(const RatPoint& p, const Box& b) {
    Rational dx(0), dy(0);
    if (p.x < b.x0) dx = b.x0 - p.x;
    else if (b.x1 < p.x) dx = p.x - b.x1;
    if (p.y < b.y0) dy = b.y0 - p.y;
    else if (b.y1 < p.y) dy = p.y - b.y1;
    return Rational::max(dx, dy);
}

/// Sup-metric gap between two closed boxes (0 when they touch or overlap).
inline Rational dist_inf(const Box& a, const Box& b) {
    Rational dx(0), dy(0);
    if (a.x1 < b.x0) dx = b.x0 - a.x1;
    else if (b.x1 < a.x0) dx = a.x0 - b.x1;
    if (a.y1 < b.y0) dy = b.y0 - a.y1;
    else if (b.y1 < a.y0) dy = a.y0 - b.y1;
    return Rational::max(dx, dy);
}

inline Rational dist_inf(const RatPoint& a, const RatPoint& b) {
    return Rational::max(Rational::abs(a.x - b.x), Rational::abs(a.y - b.y));
}

/// Does the open interior of a (non-degenerate in the tested dimensions)
/// interval (a0,a1) meet the closed interval [b0,b1]?
inline bool open_meets_closed(const Rational& a0, const Rational& a1, const Rational& b0,
                              const Rational& b1) {
    return a0 < b1 && b0 < a1;
}

/// Open box interior meets closed box (the closed box may be degenerate).
inline bool open_box_meets_closed(const Box& open_box, const Box& closed_box) {
    if (open_box.degenerate()) return false;
    return open_meets_closed(open_box.x0, open_box.x1, closed_box.x0, closed_box.x1) &&
           open_meets_closed(open_box.y0, open_box.y1, closed_box.y0, closed_box.y1);
}

inline std::vector<Rational> sorted_unique(std::vector<Rational> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace orbitlab
