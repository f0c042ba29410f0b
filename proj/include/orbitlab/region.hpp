#pragma once

#include <vector>

#include "orbitlab/geometry.hpp"

namespace orbitlab {

/// Finite union of open axis-aligned dyadic rectangles.
///
/// Membership and measure are those of the union of the open interiors; a
/// degenerate stored box is an empty open set.  Degenerate boxes are kept in
/// the list because dilation acts on box closures, so a point or segment seed
/// dilates to a full open rectangle.  Alongside the boxes we keep a
/// pairwise-disjoint half-open decomposition of the union, which carries the
/// exact area.
class OpenRegion {
public:
    OpenRegion() = default;

    explicit OpenRegion(std::vector<Box> rects) : rects_(std::move(rects)) {
        for (const Box& b : rects_) {
            require_dyadic({b.x0, b.y0}, "open region");
            require_dyadic({b.x1, b.y1}, "open region");
        }
        rebuild();
    }

    static OpenRegion empty() { return OpenRegion(); }
    static OpenRegion box(const Box& b) { return OpenRegion(std::vector<Box>{b}); }
    /// Open sup-metric ball (square) of radius r around c.
    static OpenRegion ball(const RatPoint& c, const Rational& r) {
        if (!(Rational(0) < r)) throw NonpositiveRadiusError("ball radius must be positive");
        return box(Box(c.x - r, c.y - r, c.x + r, c.y + r));
    }
    /// Open square ball with its center point removed (four overlapping rects).
    static OpenRegion deleted_ball(const RatPoint& c, const Rational& r) {
        if (!(Rational(0) < r)) throw NonpositiveRadiusError("ball radius must be positive");
        Box full(c.x - r, c.y - r, c.x + r, c.y + r);
        return OpenRegion({Box(full.x0, full.y0, c.x, full.y1),
                           Box(c.x, full.y0, full.x1, full.y1),
                           Box(full.x0, full.y0, full.x1, c.y),
                           Box(full.x0, c.y, full.x1, full.y1)});
    }

    const std::vector<Box>& rects() const { return rects_; }
    /// Canonical pairwise-disjoint half-open cells [x0,x1) x [y0,y1).
    const std::vector<Box>& half_open_cells() const { return cells_; }

    bool is_empty() const { return cells_.empty(); }

    bool contains_point(const RatPoint& p) const {
        for (const Box& b : rects_)
            if (b.contains_open(p)) return true;
        return false;
    }

    Rational area() const {
        Rational a(0);
        for (const Box& c : cells_) a += c.area();
        return a;
    }

    /// Exact area of the intersection with a closed box.
    Rational area_in_box(const Box& clip) const {
        Rational a(0);
        for (const Box& c : cells_) {
            Rational x0 = Rational::max(c.x0, clip.x0), x1 = Rational::min(c.x1, clip.x1);
            Rational y0 = Rational::max(c.y0, clip.y0), y1 = Rational::min(c.y1, clip.y1);
            if (x0 < x1 && y0 < y1) a += (x1 - x0) * (y1 - y0);
        }
        return a;
    }

    /// Exact 1-dimensional measure of the trace of the region on a closed
    /// axis-aligned segment.
    Rational length_on_segment(const Box& seg) const {
        bool horiz = seg.horizontal();
        Rational lo = horiz ? seg.x0 : seg.y0;
        Rational hi = horiz ? seg.x1 : seg.y1;
        Rational level = horiz ? seg.y0 : seg.x0;
        std::vector<std::pair<Rational, Rational>> ivals;
        for (const Box& b : rects_) {
            if (b.degenerate()) continue;
            Rational b_lo = horiz ? b.x0 : b.y0;
            Rational b_hi = horiz ? b.x1 : b.y1;
            Rational t0 = horiz ? b.y0 : b.x0;
            Rational t1 = horiz ? b.y1 : b.x1;
            if (!(t0 < level && level < t1)) continue;  // strict: open in the cross direction
            Rational a0 = Rational::max(b_lo, lo), a1 = Rational::min(b_hi, hi);
            if (a0 < a1) ivals.emplace_back(a0, a1);
        }
        std::sort(ivals.begin(), ivals.end(),
                  [](const auto& u, const auto& v) { return u.first < v.first; });
        Rational total(0);
        Rational cur_lo(0), cur_hi(0);
        bool open = false;
        for (const auto& iv : ivals) {
            if (!open || cur_hi < iv.first) {
                if (open) total += cur_hi - cur_lo;
                cur_lo = iv.first;
                cur_hi = iv.second;
                open = true;
            } else {
                cur_hi = Rational::max(cur_hi, iv.second);
            }
        }
        if (open) total += cur_hi - cur_lo;
        return total;
    }

    /// Does the region meet the closed box (which may be a segment or point)?
    bool meets(const Box& closed) const {
        for (const Box& b : rects_)
            if (open_box_meets_closed(b, closed)) return true;
        return false;
    }

    friend OpenRegion region_union(const OpenRegion& a, const OpenRegion& b) {
        std::vector<Box> all = a.rects_;
        all.insert(all.end(), b.rects_.begin(), b.rects_.end());
        return OpenRegion(std::move(all));
    }

    friend OpenRegion region_intersect(const OpenRegion& a, const OpenRegion& b) {
        std::vector<Box> out;
        for (const Box& p : a.rects_) {
            if (p.degenerate()) continue;
            for (const Box& q : b.rects_) {
                if (q.degenerate()) continue;
                Rational x0 = Rational::max(p.x0, q.x0), x1 = Rational::min(p.x1, q.x1);
                Rational y0 = Rational::max(p.y0, q.y0), y1 = Rational::min(p.y1, q.y1);
                if (x0 < x1 && y0 < y1) out.push_back(Box(x0, y0, x1, y1));
            }
        }
        return OpenRegion(std::move(out));
    }

    /// Minkowski sum with the open sup-norm ball of radius r, applied to box
    /// closures.
    OpenRegion dilate(const Rational& r) const {
        if (!(Rational(0) < r)) throw NonpositiveRadiusError("dilation radius must be positive");
        if (!r.is_dyadic()) throw InvariantViolationError("dilation radius must be dyadic");
        std::vector<Box> out;
        out.reserve(rects_.size());
        for (const Box& b : rects_) out.push_back(b.inflated(r));
        return OpenRegion(std::move(out));
    }

    Box bounding_box() const {
        if (rects_.empty()) return Box();
        Box h = rects_[0];
        for (const Box& b : rects_) h = h.hull(b);
        return h;
    }

private:
    void rebuild() {
        cells_.clear();
        std::vector<Rational> xs, ys;
        for (const Box& b : rects_) {
            if (b.degenerate()) continue;
            xs.push_back(b.x0);
            xs.push_back(b.x1);
            ys.push_back(b.y0);
            ys.push_back(b.y1);
        }
        xs = sorted_unique(std::move(xs));
        ys = sorted_unique(std::move(ys));
        if (xs.size() < 2 || ys.size() < 2) return;

        size_t nx = xs.size() - 1, ny = ys.size() - 1;
        std::vector<char> covered(nx * ny, 0);
        for (const Box& b : rects_) {
            if (b.degenerate()) continue;
            size_t i0 = std::lower_bound(xs.begin(), xs.end(), b.x0) - xs.begin();
            size_t i1 = std::lower_bound(xs.begin(), xs.end(), b.x1) - xs.begin();
            size_t j0 = std::lower_bound(ys.begin(), ys.end(), b.y0) - ys.begin();
            size_t j1 = std::lower_bound(ys.begin(), ys.end(), b.y1) - ys.begin();
            for (size_t i = i0; i < i1; ++i)
                for (size_t j = j0; j < j1; ++j) covered[i * ny + j] = 1;
        }
        // Merge runs within each column strip, then equal-width strips across x.
        struct Run {
            size_t i, j0, j1;
        };
        std::vector<Run> runs;
        for (size_t i = 0; i < nx; ++i) {
            size_t j = 0;
            while (j < ny) {
                if (!covered[i * ny + j]) {
                    ++j;
                    continue;
                }
                size_t j0 = j;
                while (j < ny && covered[i * ny + j]) ++j;
                runs.push_back({i, j0, j});
            }
        }
        std::vector<char> used(runs.size(), 0);
        for (size_t a = 0; a < runs.size(); ++a) {
            if (used[a]) continue;
            size_t i_end = runs[a].i + 1;
            for (size_t b = a + 1; b < runs.size(); ++b) {
                if (used[b]) continue;
                if (runs[b].i == i_end && runs[b].j0 == runs[a].j0 && runs[b].j1 == runs[a].j1) {
                    used[b] = 1;
                    ++i_end;
                }
            }
            cells_.push_back(Box(xs[runs[a].i], ys[runs[a].j0], xs[i_end], ys[runs[a].j1]));
        }
    }

    std::vector<Box> rects_;
    std::vector<Box> cells_;
};

}  // namespace orbitlab
