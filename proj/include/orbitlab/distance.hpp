#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include "orbitlab/bottleneck.hpp"
#include "orbitlab/oracle.hpp"

namespace orbitlab {

struct DistanceReport {
    double delta_exact = 0.0;  // bottleneck eigenvalue matching
    double dist_ub = 0.0;      // best achieved ||U h U* - k||
    CMat witness_unitary;
    int iterations = 0;
    int restarts = 0;
    std::uint64_t seed = 0;
};

namespace detail {

/// One descent run over the unitary group: U <- exp(eta * skew(G)) U with a
/// subgradient G of the top singular value and backtracking on eta.
inline double descend(const CMat& h, const CMat& k, CMat& u, int& iterations) {
    CMat a = u * h * u.adjoint();
    double f = operator_norm(a - k);
    double eta = 0.5;
    for (int it = 0; it < 300; ++it) {
        ++iterations;
        a = u * h * u.adjoint();
        CVec sv_u, sv_v;
        top_singular_pair(a - k, sv_u, sv_v);
        CMat g = a * sv_v * sv_u.adjoint() - sv_v * sv_u.adjoint() * a;
        CMat dir = (g - g.adjoint()) * 0.5;
        double dn = dir.norm();
        if (dn < 1e-14) break;
        dir /= dn;
        bool moved = false;
        while (eta > 1e-12) {
            CMat cand = exp_skew(eta * dir) * u;
            double fc = operator_norm(cand * h * cand.adjoint() - k);
            if (fc < f - 1e-15) {
                u = cand;
                f = fc;
                moved = true;
                eta *= 1.5;
                break;
            }
            eta *= 0.5;
        }
        if (!moved) break;
    }
    return f;
}

}  // namespace detail

/// Numerical upper bound on the distance between the unitary orbits of two
/// normal matrices.  Seeded random-restart descent over U(n); the bottleneck
/// permutation unitary V_k P V_h* is always evaluated as well, so the
/// reported bound never exceeds the spectral distance by more than the
/// numerical residual of the decompositions.  Deterministic given the seed.
inline DistanceReport dist_upper_bound(const NormalMatrix& h, const NormalMatrix& k,
                                       int restarts = 4, std::uint64_t seed = 0) {
    if (h.dim() != k.dim())
        throw DimensionMismatchError("matrices of different dimension");
    DistanceReport rep;
    rep.seed = seed;
    rep.restarts = restarts;

    std::vector<int> match;
    rep.delta_exact = delta_matrix(h, k, &match);

    SpectralDecomposition dh = eigen_normal(h), dk = eigen_normal(k);
    const Eigen::Index n = h.dim();

    // Permutation unitary aligning matched eigenvalues: row match[i] of the
    // h-basis goes to the k-basis column carrying its partner.
    CMat p = CMat::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) p(match[(size_t)i], i) = Complex(1, 0);
    CMat u_best = dk.unitary * p * dh.unitary.adjoint();
    double best = operator_norm(u_best * h.mat() * u_best.adjoint() - k.mat());

    std::mt19937_64 rng(seed);
    for (int r = 0; r < restarts; ++r) {
        CMat u = (r == 0) ? u_best : random_unitary(rng, n);
        double f = detail::descend(h.mat(), k.mat(), u, rep.iterations);
        if (f < best) {
            best = f;
            u_best = u;
        }
    }
    rep.dist_ub = best;
    rep.witness_unitary = u_best;
    return rep;
}

/// Two-sided bracket on the spectral distance between finitely presented
/// operators, in the sup metric of the dilation geometry.
struct PresentationDistance {
    Rational lo{0};           // certified: dilation by any smaller radius fails some open set
    Rational hi{0};           // smallest radius found feasible over the region family
    bool exact_zero = false;  // equal crude multiplicity functions
    double euclid_lo = 0.0;   // delta_inf <= delta_euclid <= sqrt(2) delta_inf
    double euclid_hi = 0.0;
};

namespace detail {

/// Class mass of a measure inside the closed sup-ball of radius r at p: the
/// limit of the dilated-open-set constraint as the probe ball shrinks to p.
inline DimValue closed_ball_mass(const SpectralMeasure& m, const RatPoint& p,
                                 const Rational& r) {
    const FactorType& f = m.factor();
    DimValue total = DimValue::zero(f);
    for (const Atom& a : m.atoms())
        if (dist_inf(p, a.pt) <= r) total = dim_add(total, a.val);
    Box ball(p.x - r, p.y - r, p.x + r, p.y + r);
    for (const Block& b : m.blocks()) {
        if (f.type_ii() && !b.val.is_infinite_class()) {
            Rational part(0);
            if (b.is_segment()) {
                bool horiz = b.shape.horizontal();
                const Rational& level = horiz ? b.shape.y0 : b.shape.x0;
                bool inside = horiz ? (ball.y0 <= level && level <= ball.y1)
                                    : (ball.x0 <= level && level <= ball.x1);
                if (inside) {
                    Rational lo_c = horiz ? Rational::max(ball.x0, b.shape.x0)
                                          : Rational::max(ball.y0, b.shape.y0);
                    Rational hi_c = horiz ? Rational::min(ball.x1, b.shape.x1)
                                          : Rational::min(ball.y1, b.shape.y1);
                    if (lo_c < hi_c) part = hi_c - lo_c;
                }
            } else {
                Rational x0 = Rational::max(ball.x0, b.shape.x0);
                Rational x1 = Rational::min(ball.x1, b.shape.x1);
                Rational y0 = Rational::max(ball.y0, b.shape.y0);
                Rational y1 = Rational::min(ball.y1, b.shape.y1);
                if (x0 < x1 && y0 < y1) part = (x1 - x0) * (y1 - y0);
            }
            if (!part.is_zero())
                total = dim_add(total,
                                DimValue::trace(f, b.val.trace_value() * part / b.measure()));
        } else if (dist_inf(p, b.shape) <= r) {
            total = dim_add(total, b.val);
        }
    }
    return total;
}

/// Local class at p: the limit of crude multiplicities of shrinking balls.
inline DimValue local_class(const SpectralMeasure& m, const RatPoint& p) {
    DimValue total = DimValue::zero(m.factor());
    for (const Atom& a : m.atoms())
        if (a.pt == p) total = dim_add(total, a.val);
    for (const Block& b : m.blocks())
        if (b.val.is_infinite_class() && b.shape.contains_closed(p))
            total = dim_add(total, b.val);
    return total;
}

/// Closed-ball mass with the features at distance exactly r excluded: the
/// left limit of closed_ball_mass at r (densities are continuous in r).
inline DimValue ball_mass_below(const SpectralMeasure& m, const RatPoint& p,
                                const Rational& r) {
    const FactorType& f = m.factor();
    DimValue discrete = DimValue::zero(f);
    for (const Atom& a : m.atoms())
        if (dist_inf(p, a.pt) < r) discrete = dim_add(discrete, a.val);
    for (const Block& b : m.blocks()) {
        if (f.type_ii() && !b.val.is_infinite_class()) continue;
        if (dist_inf(p, b.shape) < r) discrete = dim_add(discrete, b.val);
    }
    DimValue full = closed_ball_mass(m, p, r);
    if (!f.type_ii()) return discrete;
    // Densities: subtract the discrete jump at exactly r from the full mass.
    DimValue jump = DimValue::zero(f);
    for (const Atom& a : m.atoms())
        if (dist_inf(p, a.pt) == r) jump = dim_add(jump, a.val);
    for (const Block& b : m.blocks())
        if (b.val.is_infinite_class() && dist_inf(p, b.shape) == r)
            jump = dim_add(jump, b.val);
    if (jump.is_infinite_class()) {
        // Remove the infinite jump by recomputing the finite part directly.
        DimValue fin = DimValue::zero(f);
        for (const Atom& a : m.atoms())
            if (!a.val.is_infinite_class() && dist_inf(p, a.pt) < r)
                fin = dim_add(fin, a.val);
        Box ball(p.x - r, p.y - r, p.x + r, p.y + r);
        OpenRegion open_ball = OpenRegion::box(ball);
        for (const Block& b : m.blocks()) {
            if (b.val.is_infinite_class()) {
                if (dist_inf(p, b.shape) < r) fin = dim_add(fin, b.val);
                continue;
            }
            Rational part = b.is_segment() ? open_ball.length_on_segment(b.shape)
                                           : open_ball.area_in_box(b.shape);
            if (!part.is_zero())
                fin = dim_add(fin, DimValue::trace(f, b.val.trace_value() * part / b.measure()));
        }
        return fin;
    }
    if (jump.is_zero()) return full;
    if (full.is_infinite_class()) return full;
    return DimValue::trace(f, full.trace_value() - jump.trace_value());
}

/// Largest radius certified infeasible by the point constraint at p: the
/// closed-ball mass of `far` must reach the local class of `near` at p.
/// Jumps at feature distances are resolved exactly; density growth between
/// jumps is bracketed to the requested grain.
inline Rational anchored_infeasible_radius(const SpectralMeasure& near,
                                           const SpectralMeasure& far, const RatPoint& p,
                                           const Rational& grain) {
    DimValue target = local_class(near, p);
    if (target.is_zero()) return Rational(0);
    std::vector<Rational> breaks{Rational(0)};
    for (const Atom& a : far.atoms()) breaks.push_back(dist_inf(p, a.pt));
    for (const Block& b : far.blocks()) breaks.push_back(dist_inf(p, b.shape));
    breaks = sorted_unique(std::move(breaks));
    Rational prev(0);
    for (const Rational& d : breaks) {
        if (dim_leq(target, closed_ball_mass(far, p, d))) {
            // Pure jump exactly at d: every radius below d is infeasible.
            if (!dim_leq(target, ball_mass_below(far, p, d))) return d;
            // Density growth crosses the target inside (prev, d).
            Rational lo = prev, hi = d;
            while (grain < hi - lo) {
                Rational mid = (lo + hi) * Rational(1, 2);
                if (dim_leq(target, closed_ball_mass(far, p, mid))) hi = mid;
                else lo = mid;
            }
            return lo;
        }
        prev = d;
    }
    // Density growth continues past the last jump; the ball eventually holds
    // the identity class, so the target is reached at some finite radius.
    Rational hi = Rational::max(prev, Rational(1));
    int guard = 0;
    while (!dim_leq(target, closed_ball_mass(far, p, hi))) {
        hi = hi * Rational(2);
        if (++guard > 40) throw Error("internal: anchored ball never reached its target class");
    }
    Rational lo = prev;
    while (grain < hi - lo) {
        Rational mid = (lo + hi) * Rational(1, 2);
        if (dim_leq(target, closed_ball_mass(far, p, mid))) hi = mid;
        else lo = mid;
    }
    return lo;
}

}  // namespace detail

/// Binary search for the smallest dilation radius r making
///   [chi_{O+B_r}(h)] >= [chi_O(k)]  and  [chi_{O+B_r}(k)] >= [chi_O(h)]
/// over the family of test regions.  The lower endpoint is 0 exactly when
/// the two operators share their norm-closed unitary orbit.
inline PresentationDistance delta_presentation(const SpectralMeasure& h,
                                               const SpectralMeasure& k, const Rational& tol,
                                               std::uint64_t seed = 0) {
    require_same_factor(h, k);
    if (!(Rational(0) < tol) || !tol.is_dyadic())
        throw InvariantViolationError("tolerance must be a positive dyadic rational");

    PresentationDistance out;
    OrbitVerdict eq = same_norm_closure(h, k);
    if (eq.holds) {
        out.exact_zero = true;
        return out;  // [0, 0]
    }

    RegionFamily fam = build_region_family(h, k);
    std::vector<OpenRegion> regions;
    if (eq.witness) regions.push_back(*eq.witness);  // fastest infeasibility probe first
    regions.insert(regions.end(), fam.punctured.begin(), fam.punctured.end());
    for (const OpenRegion& o : random_unions(fam, seed, 256)) regions.push_back(o);

    struct Entry {
        OpenRegion region;
        DimValue mh, mk;
    };
    std::vector<Entry> entries;
    entries.reserve(regions.size());
    for (const OpenRegion& o : regions)
        entries.push_back({o, h.crude_multiplicity(o), k.crude_multiplicity(o)});
    // Singles evaluated through the box fast path; dilation keeps them boxes.
    struct BoxEntry {
        Box box;
        DimValue mh, mk;
    };
    std::vector<BoxEntry> box_entries;
    box_entries.reserve(fam.singles.size());
    for (const Box& b : fam.singles)
        box_entries.push_back({b, h.crude_multiplicity(b), k.crude_multiplicity(b)});

    auto feasible = [&](const Rational& r) {
        for (const BoxEntry& e : box_entries) {
            Box d = e.box.inflated(r);
            if (!dim_leq(e.mk, h.crude_multiplicity(d))) return false;
            if (!dim_leq(e.mh, k.crude_multiplicity(d))) return false;
        }
        for (const Entry& e : entries) {
            OpenRegion d = e.region.dilate(r);
            if (!dim_leq(e.mk, h.crude_multiplicity(d))) return false;
            if (!dim_leq(e.mh, k.crude_multiplicity(d))) return false;
        }
        return true;
    };

    Rational hi(1);
    int guard = 0;
    while (!feasible(hi)) {
        hi = hi * Rational(2);
        if (++guard > 40) throw Error("internal: dilation feasibility did not saturate");
    }
    Rational lo(0);
    while (tol < hi - lo) {
        Rational mid = (lo + hi) * Rational(1, 2);
        if (feasible(mid)) hi = mid;
        else lo = mid;
    }

    // Point-anchored constraints sharpen the lower endpoint past the
    // granularity of the region family: a shrinking ball at any feature
    // point forces the other operator to supply its local class within the
    // dilation radius.
    Rational grain = tol * Rational(1, 4);
    Rational anchor_lo(0);
    {
        detail::Overlay ov(h, k);
        std::vector<RatPoint> anchors = ov.atom_points;
        for (const detail::Face& face : ov.faces) anchors.push_back(face.rep);
        for (const RatPoint& p : anchors) {
            anchor_lo = Rational::max(anchor_lo,
                                      detail::anchored_infeasible_radius(k, h, p, grain));
            anchor_lo = Rational::max(anchor_lo,
                                      detail::anchored_infeasible_radius(h, k, p, grain));
        }
    }
    lo = Rational::max(lo, anchor_lo);
    if (hi < lo) hi = lo + tol * Rational(1, 2);

    out.lo = lo;
    out.hi = hi;
    out.euclid_lo = lo.to_double();
    out.euclid_hi = hi.to_double() * std::sqrt(2.0);
    return out;
}

}  // namespace orbitlab
