#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitlab/specmeas.hpp"

namespace orbitlab {

// Decision procedures for closed-orbit relations.  Spectral data determines
// the norm/strong*/strong closures of a unitary orbit, but not the unclosed
// orbit itself: operators with identical spectral data can generate
// differently-positioned subalgebras, so unitary equivalence proper is out of
// scope here.

enum class OrbitRelation { SameNormClosure, MemberStrongClosure, NotRelated };

/// Outcome of an orbit-closure query.  Negative verdicts carry a witness
/// region on which the two multiplicity functions demonstrably differ (or
/// fail to dominate); every witness re-verifies under SpectralMeasure.
struct OrbitVerdict {
    bool holds = false;
    OrbitRelation relation = OrbitRelation::NotRelated;
    std::optional<OpenRegion> witness;
    std::string notes;
};

namespace detail {

// One face of the joint coordinate arrangement of two presentations:
// an open cell (dim 2), an open edge (dim 1) or a vertex (dim 0).
struct Face {
    RatPoint rep;
    int dim;
};

inline std::vector<Face> enumerate_faces(const std::vector<Rational>& xs,
                                         const std::vector<Rational>& ys) {
    std::vector<Face> faces;
    Rational half(1, 2);
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = 0; j < ys.size(); ++j) {
            faces.push_back({{xs[i], ys[j]}, 0});
            if (i + 1 < xs.size())
                faces.push_back({{(xs[i] + xs[i + 1]) * half, ys[j]}, 1});
            if (j + 1 < ys.size())
                faces.push_back({{xs[i], (ys[j] + ys[j + 1]) * half}, 1});
            if (i + 1 < xs.size() && j + 1 < ys.size())
                faces.push_back(
                    {{(xs[i] + xs[i + 1]) * half, (ys[j] + ys[j + 1]) * half}, 2});
        }
    return faces;
}

inline void collect_coords(const SpectralMeasure& m, std::vector<Rational>& xs,
                           std::vector<Rational>& ys) {
    for (const Atom& a : m.atoms()) {
        xs.push_back(a.pt.x);
        ys.push_back(a.pt.y);
    }
    for (const Block& b : m.blocks()) {
        xs.push_back(b.shape.x0);
        xs.push_back(b.shape.x1);
        ys.push_back(b.shape.y0);
        ys.push_back(b.shape.y1);
    }
}

// Stratum data of one measure on one arrangement face.  A face lies inside a
// closed block shape exactly when the block contains its representative
// point, because all block corners are arrangement coordinates.
struct FaceInfo {
    Rational density;       // 2D mass density on cells, 1D on edges
    bool inf_block = false; // face inside an infinite-class block
    long long max_aleph = -1;
    bool covered = false;   // face inside any block
};

inline FaceInfo face_info(const SpectralMeasure& m, const Face& f) {
    FaceInfo info;
    for (const Block& b : m.blocks()) {
        if (!b.shape.contains_closed(f.rep)) continue;
        info.covered = true;
        if (b.val.is_infinite_class()) {
            info.inf_block = true;
            if (b.val.kind() == DimValue::Kind::AlephCard)
                info.max_aleph = std::max(info.max_aleph, b.val.aleph_index());
        } else if (f.dim == 2 && !b.is_segment()) {
            info.density += b.val.trace_value() / b.measure();
        } else if (f.dim == 1 && b.is_segment()) {
            info.density += b.val.trace_value() / b.measure();
        }
    }
    return info;
}

// The 1D stratum on an edge comes from segment blocks only; a 2D block
// containing the edge carries no 1D mass but still masks / raises the
// envelope, which face_info records via covered / inf_block / max_aleph.
// On cells only 2D blocks contribute (a segment cannot contain a cell rep).

inline std::optional<const Atom*> atom_at(const SpectralMeasure& m, const RatPoint& p) {
    for (const Atom& a : m.atoms())
        if (a.pt == p) return &a;
    return std::nullopt;
}

enum class CompareMode { Equal, DominatedBy };  // DominatedBy: first <= second

/// Searches for a region around p on which the claimed discrepancy between
/// the two measures is visible, shrinking the radius until it verifies.
/// mode Equal: M_a(W) != M_b(W).  mode DominatedBy: not M^c_a(W) <= M^c_b(W).
inline std::optional<OpenRegion> probe_witness(const SpectralMeasure& a,
                                               const SpectralMeasure& b, const RatPoint& p,
                                               Rational r, CompareMode mode, bool cruder) {
    for (int step = 0; step < 64; ++step) {
        for (bool deleted : {false, true}) {
            OpenRegion w = deleted ? OpenRegion::deleted_ball(p, r) : OpenRegion::ball(p, r);
            DimValue ma = cruder ? a.cruder_multiplicity(w) : a.crude_multiplicity(w);
            DimValue mb = cruder ? b.cruder_multiplicity(w) : b.crude_multiplicity(w);
            bool shows = (mode == CompareMode::Equal) ? (ma != mb) : !dim_leq(ma, mb);
            if (shows) return w;
        }
        r = r * Rational(1, 2);
    }
    return std::nullopt;
}

inline OrbitVerdict negative_verdict(const SpectralMeasure& a, const SpectralMeasure& b,
                                     const RatPoint& p, CompareMode mode, bool cruder,
                                     const std::string& note) {
    Rational r0 = joint_separation_radius(a, b, p);
    OrbitVerdict v;
    v.holds = false;
    v.relation = OrbitRelation::NotRelated;
    v.notes = note;
    v.witness = probe_witness(a, b, p, r0, mode, cruder);
    if (!v.witness)
        throw Error("internal: failed to realize a witness region at " + p.str());
    return v;
}

/// Ball-ladder comparison of the local classes at an atom point: the crude
/// multiplicities of B_r(p) and of the punctured ball must agree between the
/// two measures for three dyadic radii below the feature-separation scale.
inline bool ladder_agrees(const SpectralMeasure& h, const SpectralMeasure& k,
                          const RatPoint& p) {
    Rational r = joint_separation_radius(h, k, p);
    for (int step = 0; step < 3; ++step) {
        OpenRegion ball = OpenRegion::ball(p, r);
        OpenRegion punctured = OpenRegion::deleted_ball(p, r);
        if (h.crude_multiplicity(ball) != k.crude_multiplicity(ball)) return false;
        if (h.crude_multiplicity(punctured) != k.crude_multiplicity(punctured)) return false;
        r = r * Rational(1, 2);
    }
    return true;
}

struct Overlay {
    std::vector<Rational> xs, ys;
    std::vector<Face> faces;
    std::vector<RatPoint> atom_points;  // of either measure, deduplicated

    Overlay(const SpectralMeasure& h, const SpectralMeasure& k) {
        collect_coords(h, xs, ys);
        collect_coords(k, xs, ys);
        xs = sorted_unique(std::move(xs));
        ys = sorted_unique(std::move(ys));
        faces = enumerate_faces(xs, ys);
        for (const Atom& a : h.atoms()) atom_points.push_back(a.pt);
        for (const Atom& a : k.atoms()) atom_points.push_back(a.pt);
        std::sort(atom_points.begin(), atom_points.end());
        atom_points.erase(std::unique(atom_points.begin(), atom_points.end()),
                          atom_points.end());
    }
};

/// Equality of the crude multiplicity functions, decided by the finite
/// criterion: block strata compared cell-by-cell on the joint refinement
/// overlay, then ball ladders at every atom point of either presentation.
inline OrbitVerdict decide_norm_equal(const SpectralMeasure& h, const SpectralMeasure& k) {
    Overlay ov(h, k);
    const FactorType& f = h.factor();

    if (f.tag == FactorTag::III) {
        SupportSet sh = h.support(), sk = k.support();
        for (const Face& face : ov.faces) {
            if (sh.covers(face.rep) != sk.covers(face.rep))
                return negative_verdict(h, k, face.rep, CompareMode::Equal, false,
                                        "support sets differ near " + face.rep.str());
        }
        OrbitVerdict v;
        v.holds = true;
        v.relation = OrbitRelation::SameNormClosure;
        v.notes = "type III: equal supports";
        return v;
    }

    for (const Face& face : ov.faces) {
        if (face.dim == 0) continue;
        FaceInfo ih = face_info(h, face), ik = face_info(k, face);
        if (f.tag == FactorTag::I_inf || f.tag == FactorTag::I_fin) {
            if (ih.max_aleph != ik.max_aleph)
                return negative_verdict(h, k, face.rep, CompareMode::Equal, false,
                                        "infinite-block envelopes differ near " +
                                            face.rep.str());
            if (ih.covered != ik.covered)
                return negative_verdict(h, k, face.rep, CompareMode::Equal, false,
                                        "block supports differ near " + face.rep.str());
        } else {
            if (ih.inf_block != ik.inf_block)
                return negative_verdict(h, k, face.rep, CompareMode::Equal, false,
                                        "infinite-mass regions differ near " + face.rep.str());
            if (ih.inf_block) continue;  // both absorbed
            if (ih.density != ik.density)
                return negative_verdict(h, k, face.rep, CompareMode::Equal, false,
                                        "block densities differ near " + face.rep.str());
        }
    }

    for (const RatPoint& p : ov.atom_points) {
        if (!ladder_agrees(h, k, p))
            return negative_verdict(h, k, p, CompareMode::Equal, false,
                                    "local classes differ at atom " + p.str());
    }

    OrbitVerdict v;
    v.holds = true;
    v.relation = OrbitRelation::SameNormClosure;
    return v;
}

/// Domination M^c_k <= M^c_h on all opens, for properly infinite factors.
inline OrbitVerdict decide_dominated(const SpectralMeasure& k, const SpectralMeasure& h) {
    Overlay ov(k, h);
    const FactorType& f = h.factor();

    if (f.tag == FactorTag::III) {
        SupportSet sh = h.support(), sk = k.support();
        for (const Face& face : ov.faces) {
            if (sk.covers(face.rep) && !sh.covers(face.rep))
                return negative_verdict(k, h, face.rep, CompareMode::DominatedBy, true,
                                        "support of k escapes support of h near " +
                                            face.rep.str());
        }
        OrbitVerdict v;
        v.holds = true;
        v.relation = OrbitRelation::MemberStrongClosure;
        v.notes = "type III: support inclusion";
        return v;
    }

    if (f.tag == FactorTag::I_inf) {
        // After the aleph_0 cap every block is an aleph_0 mass on its shape,
        // so only block supports and capped atom classes matter.
        for (const Face& face : ov.faces) {
            if (face.dim == 0) continue;
            FaceInfo ik = face_info(k, face), ih = face_info(h, face);
            if (ik.covered && !ih.covered)
                return negative_verdict(k, h, face.rep, CompareMode::DominatedBy, true,
                                        "block support of k escapes h near " + face.rep.str());
        }
        for (const RatPoint& p : ov.atom_points) {
            FaceInfo ih = face_info(h, {p, 0});
            if (ih.covered) continue;  // absorbed by a block of h through p
            FaceInfo ik = face_info(k, {p, 0});
            DimValue vk = DimValue::zero(f), vh = DimValue::zero(f);
            if (auto a = atom_at(k, p)) vk = (*a)->val;
            if (auto a = atom_at(h, p)) vh = (*a)->val;
            if (ik.covered) vk = dim_add(vk, DimValue::aleph(f, 0));
            if (!dim_leq(cruder_value(vk), cruder_value(vh)))
                return negative_verdict(k, h, p, CompareMode::DominatedBy, true,
                                        "capped atom class of k exceeds h at " + p.str());
        }
        OrbitVerdict v;
        v.holds = true;
        v.relation = OrbitRelation::MemberStrongClosure;
        return v;
    }

    // II_inf: infinite-mass region of k must sit inside that of h; outside the
    // h mask, every stratum of k is dominated pointwise.
    for (const Face& face : ov.faces) {
        if (face.dim == 0) continue;
        FaceInfo ik = face_info(k, face), ih = face_info(h, face);
        if (ik.inf_block && !ih.inf_block)
            return negative_verdict(k, h, face.rep, CompareMode::DominatedBy, true,
                                    "infinite mass of k escapes h near " + face.rep.str());
        if (ih.inf_block) continue;
        if (!(ik.density <= ih.density))
            return negative_verdict(k, h, face.rep, CompareMode::DominatedBy, true,
                                    "density of k exceeds h near " + face.rep.str());
    }
    for (const RatPoint& p : ov.atom_points) {
        FaceInfo ih = face_info(h, {p, 0});
        if (ih.inf_block) continue;
        auto ak = atom_at(k, p);
        if (!ak) continue;
        auto ah = atom_at(h, p);
        bool k_inf = (*ak)->val.is_infinite_class();
        bool h_inf = ah && (*ah)->val.is_infinite_class();
        if (k_inf && !h_inf)
            return negative_verdict(k, h, p, CompareMode::DominatedBy, true,
                                    "infinite atom of k has no counterpart at " + p.str());
        if (!k_inf) {
            Rational vk = (*ak)->val.trace_value();
            Rational vh = ah && !h_inf ? (*ah)->val.trace_value() : Rational(0);
            if (h_inf) continue;
            if (!(vk <= vh))
                return negative_verdict(k, h, p, CompareMode::DominatedBy, true,
                                        "atom of k exceeds h at " + p.str());
        }
    }
    OrbitVerdict v;
    v.holds = true;
    v.relation = OrbitRelation::MemberStrongClosure;
    return v;
}

/// Domination scan for finite factors: by rigidity it can only fail together
/// with equality, and when it fails it locates a region where k's class
/// strictly exceeds h's (total masses being equal forces a surplus).
inline OrbitVerdict decide_dominated_finite(const SpectralMeasure& k,
                                            const SpectralMeasure& h) {
    Overlay ov(k, h);
    const FactorType& f = h.factor();
    for (const Face& face : ov.faces) {
        if (face.dim == 0) continue;
        if (f.tag != FactorTag::II_1) continue;  // I_fin is purely atomic
        FaceInfo ik = face_info(k, face), ih = face_info(h, face);
        if (!(ik.density <= ih.density))
            return negative_verdict(k, h, face.rep, CompareMode::DominatedBy, true,
                                    "density of k exceeds h near " + face.rep.str());
    }
    for (const RatPoint& p : ov.atom_points) {
        auto ak = atom_at(k, p);
        if (!ak) continue;
        auto ah = atom_at(h, p);
        DimValue vk = (*ak)->val;
        DimValue vh = ah ? (*ah)->val : DimValue::zero(f);
        if (!dim_leq(vk, vh))
            return negative_verdict(k, h, p, CompareMode::DominatedBy, true,
                                    "atom of k exceeds h at " + p.str());
    }
    OrbitVerdict v;
    v.holds = true;
    v.relation = OrbitRelation::MemberStrongClosure;
    return v;
}

}  // namespace detail

/// Do h and k have the same norm-closed unitary orbit?
inline OrbitVerdict same_norm_closure(const SpectralMeasure& h, const SpectralMeasure& k) {
    require_same_factor(h, k);
    return detail::decide_norm_equal(h, k);
}

/// Is k in the strong (equivalently strong*) closure of the unitary orbit of
/// h?  In finite factors domination is rigid, so the decision reduces to
/// orbit-closure equality and the verdict is symmetric in its arguments.
inline OrbitVerdict member_strong_closure(const SpectralMeasure& k, const SpectralMeasure& h) {
    require_same_factor(h, k);
    if (h.factor().is_finite()) {
        OrbitVerdict eq = detail::decide_norm_equal(k, h);
        if (eq.holds) {
            OrbitVerdict v = eq;
            v.relation = OrbitRelation::MemberStrongClosure;
            v.notes = "finite factor: domination is rigid, decided as equality";
            return v;
        }
        OrbitVerdict dom = detail::decide_dominated_finite(k, h);
        if (dom.holds)
            throw Error("internal: rigidity violated in a finite factor");
        return dom;
    }
    return detail::decide_dominated(k, h);
}

/// Spectrum-level cross-checks of the two orbit relations, with the exact
/// converses available in a sigma-finite type III factor.
struct SpectraReport {
    bool support_equal = false;
    bool support_included = false;  // sp(k) inside sp(h)
    OrbitVerdict same_norm;
    OrbitVerdict member;
    bool consistent = false;
    std::string notes;
};

inline SpectraReport spectra_relations(const SpectralMeasure& h, const SpectralMeasure& k) {
    require_same_factor(h, k);
    SpectraReport r;
    SupportSet sh = h.support(), sk = k.support();
    r.support_equal = support_equal(sh, sk);
    r.support_included = support_subset(sk, sh);
    r.same_norm = same_norm_closure(h, k);
    r.member = member_strong_closure(k, h);
    r.consistent = true;
    if (r.same_norm.holds && !r.support_equal) r.consistent = false;
    if (r.member.holds && !r.support_included) r.consistent = false;
    if (h.factor().tag == FactorTag::III) {
        if (r.same_norm.holds != r.support_equal) r.consistent = false;
        if (r.member.holds != r.support_included) r.consistent = false;
        r.notes = "type III: closures determined by spectra";
    }
    return r;
}

/// Scalars in the strong-closed unitary orbit.  In a properly infinite factor
/// this is the essential spectrum; in a finite factor it is nonempty only for
/// a scalar operator.
inline SupportSet central_meet(const SpectralMeasure& h) {
    if (h.factor().is_finite()) {
        if (h.is_scalar()) return h.support();
        return SupportSet();
    }
    return h.essential_spectrum();
}

/// Is the norm closure of the unitary orbit already strong*-closed?
inline bool norm_eq_strongstar(const SpectralMeasure& h) {
    return h.factor().is_finite() || h.is_scalar();
}

/// Does the strong* closure of the unitary orbit agree with the strong
/// closure?  Requires separable predual semantics.
inline bool strongstar_eq_strong(const SpectralMeasure& h) {
    if (!h.factor().sigma_finite())
        throw NonSeparablePredualError(
            "strong* vs strong comparison needs a separable predual; " + h.factor().str() +
            " is out of range");
    SupportSet ess = h.essential_spectrum();
    return is_small(ess);
}

struct ClosednessReport {
    bool closed = false;
    bool diagonal = false;
    bool countable_essential = false;
    // Point of the essential spectrum whose punctured neighborhoods never
    // drop strictly below its eigenvalue class, with the radius at which the
    // local classes stabilize.
    std::optional<RatPoint> failing_point;
    std::optional<Rational> radius;
    std::optional<Box> offending_block;
};

/// Is the unitary orbit of h norm-closed?  True when h is diagonal with
/// countable essential spectrum and every essential-spectrum point strictly
/// dominates some punctured neighborhood of itself.
inline ClosednessReport orbit_norm_closed(const SpectralMeasure& h) {
    ClosednessReport r;
    r.diagonal = h.is_diagonal();
    r.countable_essential = true;

    // Eigenvalue class at an essential point: the atom value, or zero when
    // the point carries no atom.  Punctured neighborhoods of an atom sitting
    // on an infinite block keep the block class, so the strict drop fails.
    for (const Atom& a : h.atoms()) {
        if (!a.val.is_infinite_class()) continue;
        Rational rad = h.separation_radius(a.pt);
        DimValue punctured = h.deleted_neighborhood_class(a.pt, rad);
        if (!dim_lt(punctured, a.val)) {
            r.closed = false;
            r.failing_point = a.pt;
            r.radius = rad;
            return r;
        }
    }
    for (const Block& b : h.blocks()) {
        if (!b.val.is_infinite_class()) continue;
        // A continuum of essential points: the essential spectrum is
        // uncountable and no point of the block carries an eigenvalue class.
        r.countable_essential = false;
        Rational half(1, 2);
        RatPoint rep{(b.shape.x0 + b.shape.x1) * half, (b.shape.y0 + b.shape.y1) * half};
        r.closed = false;
        r.failing_point = rep;
        r.radius = h.separation_radius(rep);
        r.offending_block = b.shape;
        return r;
    }
    if (!r.diagonal) {
        r.closed = false;
        r.offending_block = h.blocks().front().shape;
        return r;
    }
    r.closed = true;
    return r;
}

}  // namespace orbitlab
