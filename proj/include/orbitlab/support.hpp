#pragma once

#include <optional>
#include <vector>

#include "orbitlab/geometry.hpp"

namespace orbitlab {

/// Compact subset of the plane presented as closed dyadic cells, closed
/// axis-aligned segments, and isolated points.
class SupportSet {
public:
    SupportSet() = default;

    /// Boxes are sorted into cells/segments/points by degeneracy.
    SupportSet(const std::vector<Box>& boxes, const std::vector<RatPoint>& points) {
        for (const Box& b : boxes) add_box(b);
        for (const RatPoint& p : points) add_point(p);
    }

    void add_box(const Box& b) {
        require_dyadic({b.x0, b.y0}, "support set");
        require_dyadic({b.x1, b.y1}, "support set");
        if (b.is_point()) pts_.push_back({b.x0, b.y0});
        else if (b.is_segment()) segs_.push_back(b);
        else cells_.push_back(b);
    }
    void add_point(const RatPoint& p) {
        require_dyadic(p, "support set");
        pts_.push_back(p);
    }

    const std::vector<Box>& cells() const { return cells_; }
    const std::vector<Box>& segs() const { return segs_; }
    const std::vector<RatPoint>& pts() const { return pts_; }

    bool is_empty() const { return cells_.empty() && segs_.empty() && pts_.empty(); }
    bool has_interior() const { return !cells_.empty(); }

    bool covers(const RatPoint& p) const {
        for (const Box& c : cells_)
            if (c.contains_closed(p)) return true;
        for (const Box& s : segs_)
            if (s.contains_closed(p)) return true;
        for (const RatPoint& q : pts_)
            if (q == p) return true;
        return false;
    }

    SupportSet united(const SupportSet& o) const {
        SupportSet u = *this;
        u.cells_.insert(u.cells_.end(), o.cells_.begin(), o.cells_.end());
        u.segs_.insert(u.segs_.end(), o.segs_.begin(), o.segs_.end());
        u.pts_.insert(u.pts_.end(), o.pts_.begin(), o.pts_.end());
        return u;
    }

    std::optional<Box> bounding_box() const {
        std::optional<Box> h;
        auto take = [&](const Box& b) { h = h ? h->hull(b) : b; };
        for (const Box& c : cells_) take(c);
        for (const Box& s : segs_) take(s);
        for (const RatPoint& p : pts_) take(Box(p.x, p.y, p.x, p.y));
        return h;
    }

    /// Bounding box inflated by 1: the default frame for connectivity queries.
    Box default_frame() const {
        auto bb = bounding_box();
        if (!bb) return Box(Rational(-1), Rational(-1), Rational(1), Rational(1));
        return bb->inflated(Rational(1));
    }

    /// Finest dyadic level appearing in any coordinate.
    int refinement_level() const {
        int lvl = 0;
        auto feed = [&](const Rational& r) { lvl = std::max(lvl, r.dyadic_level()); };
        for (const Box& c : cells_) {
            feed(c.x0); feed(c.x1); feed(c.y0); feed(c.y1);
        }
        for (const Box& s : segs_) {
            feed(s.x0); feed(s.x1); feed(s.y0); feed(s.y1);
        }
        for (const RatPoint& p : pts_) {
            feed(p.x); feed(p.y);
        }
        return lvl;
    }

private:
    std::vector<Box> cells_;
    std::vector<Box> segs_;
    std::vector<RatPoint> pts_;
};

namespace detail {

/// Node grid over the closed frame at a dyadic step, all coordinates scaled
/// to integers.  Connectivity of the complement of an axis-aligned dyadic set
/// is decided exactly on this grid once the step is below the feature scale.
struct ComplementGrid {
    long long sx0, sy0;  // scaled frame origin
    long long nx, ny;    // node counts per axis
    std::vector<char> blocked;

    static long long scaled(const Rational& q, int level) {
        return q.num() * (1LL << (level - q.dyadic_level()));
    }

    ComplementGrid(const SupportSet& s, const Box& frame, int level) {
        sx0 = scaled(frame.x0, level);
        sy0 = scaled(frame.y0, level);
        nx = scaled(frame.x1, level) - sx0 + 1;
        ny = scaled(frame.y1, level) - sy0 + 1;
        if (nx < 3 || ny < 3) throw FrameTooSmallError("frame too small for grid connectivity");
        blocked.assign((size_t)nx * ny, 0);

        struct IBox {
            long long x0, y0, x1, y1;
        };
        std::vector<IBox> feats;
        auto add = [&](const Box& b) {
            feats.push_back({scaled(b.x0, level), scaled(b.y0, level), scaled(b.x1, level),
                             scaled(b.y1, level)});
        };
        for (const Box& c : s.cells()) add(c);
        for (const Box& g : s.segs()) add(g);
        for (const RatPoint& p : s.pts())
            feats.push_back({scaled(p.x, level), scaled(p.y, level), scaled(p.x, level),
                             scaled(p.y, level)});

        for (const IBox& f : feats) {
            long long i0 = std::max(f.x0 - sx0, 0LL), i1 = std::min(f.x1 - sx0, nx - 1);
            long long j0 = std::max(f.y0 - sy0, 0LL), j1 = std::min(f.y1 - sy0, ny - 1);
            for (long long i = i0; i <= i1; ++i)
                for (long long j = j0; j <= j1; ++j) blocked[(size_t)(i * ny + j)] = 1;
        }
    }

    long long free_components() const {
        std::vector<int> comp((size_t)nx * ny, -1);
        long long count = 0;
        std::vector<long long> stack;
        for (long long start = 0; start < nx * ny; ++start) {
            if (blocked[(size_t)start] || comp[(size_t)start] >= 0) continue;
            ++count;
            stack.push_back(start);
            comp[(size_t)start] = (int)count;
            while (!stack.empty()) {
                long long v = stack.back();
                stack.pop_back();
                long long i = v / ny, j = v % ny;
                const long long nbr[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
                for (auto& nb : nbr) {
                    if (nb[0] < 0 || nb[0] >= nx || nb[1] < 0 || nb[1] >= ny) continue;
                    long long w = nb[0] * ny + nb[1];
                    if (blocked[(size_t)w] || comp[(size_t)w] >= 0) continue;
                    comp[(size_t)w] = (int)count;
                    stack.push_back(w);
                }
            }
        }
        return count;
    }
};

inline int grid_level(const SupportSet& s, const Box& frame, int extra_refine) {
    int lvl = s.refinement_level();
    lvl = std::max(lvl, frame.x0.dyadic_level());
    lvl = std::max(lvl, frame.x1.dyadic_level());
    lvl = std::max(lvl, frame.y0.dyadic_level());
    lvl = std::max(lvl, frame.y1.dyadic_level());
    return lvl + 1 + extra_refine;
}

inline void require_inside_frame(const SupportSet& s, const Box& frame) {
    auto bb = s.bounding_box();
    if (!bb) return;
    if (!(frame.x0 < bb->x0 && bb->x1 < frame.x1 && frame.y0 < bb->y0 && bb->y1 < frame.y1))
        throw FrameTooSmallError("support must lie strictly inside the frame");
}

}  // namespace detail

/// Number of connected components of the complement of s within the frame
/// (the unbounded component reaches the frame boundary ring and counts as
/// one).  extra_refine re-runs the decision on a once-halved grid.
inline long long complement_components(const SupportSet& s, const Box& frame,
                                       int extra_refine = 0) {
    detail::require_inside_frame(s, frame);
    if (s.is_empty()) return 1;
    detail::ComplementGrid grid(s, frame, detail::grid_level(s, frame, extra_refine));
    return grid.free_components();
}

inline long long complement_components(const SupportSet& s, int extra_refine = 0) {
    return complement_components(s, s.default_frame(), extra_refine);
}

/// A compact set is small when it has no interior and does not separate the
/// plane.  Only axis-aligned dyadic sets are representable; small sets of
/// positive planar measure (fat Cantor products) exist but lie outside this
/// language.
inline bool is_small(const SupportSet& s, const Box& frame, int extra_refine = 0) {
    detail::require_inside_frame(s, frame);
    if (s.has_interior()) return false;
    if (s.is_empty()) return true;
    return complement_components(s, frame, extra_refine) == 1;
}

inline bool is_small(const SupportSet& s, int extra_refine = 0) {
    return is_small(s, s.default_frame(), extra_refine);
}

namespace detail {

/// Representative points of every face of the arrangement generated by the
/// coordinates xs, ys: vertices, open edges and open cells.
inline std::vector<RatPoint> arrangement_reps(const std::vector<Rational>& xs,
                                              const std::vector<Rational>& ys) {
    std::vector<RatPoint> reps;
    Rational half(1, 2);
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = 0; j < ys.size(); ++j) {
            reps.push_back({xs[i], ys[j]});
            if (i + 1 < xs.size()) reps.push_back({(xs[i] + xs[i + 1]) * half, ys[j]});
            if (j + 1 < ys.size()) reps.push_back({xs[i], (ys[j] + ys[j + 1]) * half});
            if (i + 1 < xs.size() && j + 1 < ys.size())
                reps.push_back({(xs[i] + xs[i + 1]) * half, (ys[j] + ys[j + 1]) * half});
        }
    return reps;
}

inline void collect_coords(const SupportSet& s, std::vector<Rational>& xs,
                           std::vector<Rational>& ys) {
    for (const Box& c : s.cells()) {
        xs.push_back(c.x0); xs.push_back(c.x1);
        ys.push_back(c.y0); ys.push_back(c.y1);
    }
    for (const Box& g : s.segs()) {
        xs.push_back(g.x0); xs.push_back(g.x1);
        ys.push_back(g.y0); ys.push_back(g.y1);
    }
    for (const RatPoint& p : s.pts()) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
}

}  // namespace detail

/// Exact set inclusion, decided face-by-face on the joint arrangement.
/// Returns a point of a \ b when the inclusion fails.
inline std::optional<RatPoint> support_subset_witness(const SupportSet& a, const SupportSet& b) {
    std::vector<Rational> xs, ys;
    detail::collect_coords(a, xs, ys);
    detail::collect_coords(b, xs, ys);
    xs = sorted_unique(std::move(xs));
    ys = sorted_unique(std::move(ys));
    for (const RatPoint& rep : detail::arrangement_reps(xs, ys))
        if (a.covers(rep) && !b.covers(rep)) return rep;
    return std::nullopt;
}

inline bool support_subset(const SupportSet& a, const SupportSet& b) {
    return !support_subset_witness(a, b).has_value();
}

inline bool support_equal(const SupportSet& a, const SupportSet& b) {
    return support_subset(a, b) && support_subset(b, a);
}

}  // namespace orbitlab
