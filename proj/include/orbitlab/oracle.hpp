#pragma once

#include <random>
#include <string>
#include <vector>

#include "orbitlab/orbits.hpp"

namespace orbitlab {

// Brute-force comparator for the orbit decisions: evaluates the crude and
// cruder multiplicity functions region by region over an exhaustive family of
// dyadic test regions, with no knowledge of the overlay criterion it checks.

struct RegionFamily {
    Box frame;
    int max_level = 0;
    std::vector<Box> singles;             // every dyadic square in the frame
    std::vector<OpenRegion> punctured;    // balls and deleted balls at atoms
};

namespace detail {

inline Rational snap_down_int(const Rational& q) {
    long long n = q.num(), d = q.den();
    long long f = n / d;
    if (n < 0 && f * d != n) --f;
    return Rational(f);
}

inline void collect_atom_points(const SpectralMeasure& m, std::vector<RatPoint>& pts) {
    for (const Atom& a : m.atoms()) pts.push_back(a.pt);
}

}  // namespace detail

/// Every open dyadic square with side 2^-l (l = 0..refinement+2) and corners
/// on the finest lattice, inside the integer-snapped frame around the joint
/// support; plus balls and punctured balls at every atom point of either
/// measure at three radii below the refinement scale.
inline RegionFamily build_region_family(const SpectralMeasure& h, const SpectralMeasure& k) {
    RegionFamily fam;
    int refinement = std::max(h.refinement_level(), k.refinement_level());
    fam.max_level = refinement + 2;

    Box hull = h.joint_bounding_box().hull(k.joint_bounding_box());
    fam.frame = Box(detail::snap_down_int(hull.x0) - Rational(1),
                    detail::snap_down_int(hull.y0) - Rational(1),
                    -detail::snap_down_int(-hull.x1) + Rational(1),
                    -detail::snap_down_int(-hull.y1) + Rational(1));

    Rational step = Rational::pow2(fam.max_level);
    long long nx = ((fam.frame.x1 - fam.frame.x0) / step).num();
    long long ny = ((fam.frame.y1 - fam.frame.y0) / step).num();
    for (int lev = 0; lev <= fam.max_level; ++lev) {
        Rational side = Rational::pow2(lev);
        long long span = (side / step).num();
        for (long long i = 0; i + span <= nx; ++i) {
            Rational x0 = fam.frame.x0 + step * Rational(i);
            for (long long j = 0; j + span <= ny; ++j) {
                Rational y0 = fam.frame.y0 + step * Rational(j);
                fam.singles.push_back(Box(x0, y0, x0 + side, y0 + side));
            }
        }
    }

    std::vector<RatPoint> atom_pts;
    detail::collect_atom_points(h, atom_pts);
    detail::collect_atom_points(k, atom_pts);
    std::sort(atom_pts.begin(), atom_pts.end());
    atom_pts.erase(std::unique(atom_pts.begin(), atom_pts.end()), atom_pts.end());
    for (const RatPoint& p : atom_pts)
        for (int extra = 1; extra <= 3; ++extra) {
            Rational r = Rational::pow2(refinement + extra);
            fam.punctured.push_back(OpenRegion::ball(p, r));
            fam.punctured.push_back(OpenRegion::deleted_ball(p, r));
        }
    return fam;
}

/// Seeded random unions of at most max_boxes squares from the family.
inline std::vector<OpenRegion> random_unions(const RegionFamily& fam, std::uint64_t seed,
                                             int count, int max_boxes = 6) {
    std::mt19937_64 rng(seed);
    std::vector<OpenRegion> out;
    out.reserve(count);
    for (int u = 0; u < count; ++u) {
        int n = 1 + (int)(rng() % (std::uint64_t)max_boxes);
        std::vector<Box> boxes;
        for (int i = 0; i < n; ++i)
            boxes.push_back(fam.singles[rng() % fam.singles.size()]);
        out.push_back(OpenRegion(std::move(boxes)));
    }
    return out;
}

struct ComparatorReport {
    bool same_norm = true;   // crude classes agree on every tested region
    bool member_kh = true;   // cruder class of k dominated by h everywhere
    bool member_hk = true;
    long long regions_tested = 0;
    std::string first_disagreement;
};

/// Full sweep of the region family (singles, punctured balls, random unions).
/// Stops early once all three relations have failed.
inline ComparatorReport oracle_brute_force(const SpectralMeasure& h, const SpectralMeasure& k,
                                           std::uint64_t union_seed, int union_count = 10000) {
    require_same_factor(h, k);
    ComparatorReport rep;

    auto note = [&](const std::string& what) {
        if (rep.first_disagreement.empty()) rep.first_disagreement = what;
    };
    auto feed = [&](const DimValue& mh, const DimValue& mk, const std::string& where) {
        ++rep.regions_tested;
        if (rep.same_norm && mh != mk) {
            rep.same_norm = false;
            note("crude classes differ on " + where);
        }
        DimValue ch = cruder_value(mh), ck = cruder_value(mk);
        if (rep.member_kh && !dim_leq(ck, ch)) {
            rep.member_kh = false;
            note("cruder class of k escapes h on " + where);
        }
        if (rep.member_hk && !dim_leq(ch, ck)) {
            rep.member_hk = false;
            note("cruder class of h escapes k on " + where);
        }
        return rep.same_norm || rep.member_kh || rep.member_hk;
    };

    RegionFamily fam = build_region_family(h, k);
    for (const Box& b : fam.singles)
        if (!feed(h.crude_multiplicity(b), k.crude_multiplicity(b), "square " + b.str()))
            return rep;
    for (const OpenRegion& o : fam.punctured)
        if (!feed(h.crude_multiplicity(o), k.crude_multiplicity(o), "punctured ball"))
            return rep;
    for (const OpenRegion& o : random_unions(fam, union_seed, union_count))
        if (!feed(h.crude_multiplicity(o), k.crude_multiplicity(o), "random union"))
            return rep;
    return rep;
}

}  // namespace orbitlab
