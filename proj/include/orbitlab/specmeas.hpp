#pragma once

#include <optional>
#include <vector>

#include "orbitlab/dimlat.hpp"
#include "orbitlab/region.hpp"
#include "orbitlab/support.hpp"

namespace orbitlab {

using Multiplicity = DimValue;

struct Atom {
    RatPoint pt;
    DimValue val;
};

/// Uniform mass on a closed dyadic rectangle or segment.
struct Block {
    Box shape;
    DimValue val;

    bool is_segment() const { return shape.is_segment(); }
    /// 2-dimensional area or 1-dimensional length of the shape.
    Rational measure() const {
        if (is_segment()) return shape.horizontal() ? shape.width() : shape.height();
        return shape.area();
    }
};

/// Finite presentation of a normal operator in a factor: atoms plus uniform
/// blocks whose classes sum to the identity.
///
/// Genuinely infinite atom families (accumulating eigenvalue sequences) are
/// outside this language; their decision-relevant behavior is covered by
/// finite truncations and by atoms absorbed into infinite blocks.
class SpectralMeasure {
public:
    SpectralMeasure(FactorType factor, std::vector<Atom> atoms, std::vector<Block> blocks)
        : factor_(factor), atoms_(std::move(atoms)), blocks_(std::move(blocks)) {
        strip_zeros();
        validate();
    }

    const FactorType& factor() const { return factor_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<Block>& blocks() const { return blocks_; }

    bool is_diagonal() const { return blocks_.empty(); }

    /// A scalar: one atom carrying the full identity class.
    bool is_scalar() const {
        return blocks_.empty() && atoms_.size() == 1 &&
               atoms_[0].val == DimValue::identity(factor_);
    }

    /// Class of the spectral projection of an open region.
    Multiplicity crude_multiplicity(const OpenRegion& o) const {
        return evaluate(o, std::nullopt);
    }

    /// Fast path for a single open box, bypassing region canonicalization.
    Multiplicity crude_multiplicity(const Box& open_box) const {
        DimValue total = DimValue::zero(factor_);
        if (open_box.degenerate()) return total;
        for (const Atom& a : atoms_)
            if (open_box.contains_open(a.pt)) total = dim_add(total, a.val);
        for (const Block& b : blocks_) {
            if (factor_.type_ii() && !b.val.is_infinite_class()) {
                Rational part(0);
                if (b.is_segment()) {
                    bool horiz = b.shape.horizontal();
                    const Rational& level = horiz ? b.shape.y0 : b.shape.x0;
                    bool inside = horiz ? (open_box.y0 < level && level < open_box.y1)
                                        : (open_box.x0 < level && level < open_box.x1);
                    if (inside) {
                        Rational lo = horiz ? Rational::max(open_box.x0, b.shape.x0)
                                            : Rational::max(open_box.y0, b.shape.y0);
                        Rational hi = horiz ? Rational::min(open_box.x1, b.shape.x1)
                                            : Rational::min(open_box.y1, b.shape.y1);
                        if (lo < hi) part = hi - lo;
                    }
                } else {
                    Rational x0 = Rational::max(open_box.x0, b.shape.x0);
                    Rational x1 = Rational::min(open_box.x1, b.shape.x1);
                    Rational y0 = Rational::max(open_box.y0, b.shape.y0);
                    Rational y1 = Rational::min(open_box.y1, b.shape.y1);
                    if (x0 < x1 && y0 < y1) part = (x1 - x0) * (y1 - y0);
                }
                if (part.is_zero()) continue;
                total = dim_add(total,
                                DimValue::trace(factor_, b.val.trace_value() * part / b.measure()));
            } else if (open_box_meets_closed(open_box, b.shape)) {
                total = dim_add(total, b.val);
            }
        }
        return total;
    }

    Multiplicity cruder_multiplicity(const Box& open_box) const {
        return cruder_value(crude_multiplicity(open_box));
    }

    Multiplicity cruder_multiplicity(const OpenRegion& o) const {
        return cruder_value(crude_multiplicity(o));
    }

    /// Class of the punctured open ball B_r(center) minus the atom at its
    /// center.  The atom is a separate summand, so removal is exact.
    Multiplicity deleted_neighborhood_class(const RatPoint& center, const Rational& r) const {
        return evaluate(OpenRegion::ball(center, r), center);
    }

    SupportSet support() const {
        SupportSet s;
        for (const Atom& a : atoms_) s.add_point(a.pt);
        for (const Block& b : blocks_) s.add_box(b.shape);
        return s;
    }

    /// Points whose every neighborhood carries an infinite class.  Empty for
    /// finite factors, where the ideal of finite projections is everything.
    SupportSet essential_spectrum() const {
        SupportSet s;
        if (factor_.is_finite()) return s;
        for (const Atom& a : atoms_)
            if (a.val.is_infinite_class()) s.add_point(a.pt);
        for (const Block& b : blocks_)
            if (b.val.is_infinite_class()) s.add_box(b.shape);
        return s;
    }

    /// Finest dyadic level among all feature coordinates.
    int refinement_level() const {
        int lvl = 0;
        auto feed = [&](const Rational& r) { lvl = std::max(lvl, r.dyadic_level()); };
        for (const Atom& a : atoms_) {
            feed(a.pt.x);
            feed(a.pt.y);
        }
        for (const Block& b : blocks_) {
            feed(b.shape.x0); feed(b.shape.x1);
            feed(b.shape.y0); feed(b.shape.y1);
        }
        return lvl;
    }

    /// Half the sup-distance from p to the nearest feature not containing p
    /// (1 when everything contains p).  Balls of this radius or less see a
    /// stable feature set around p.
    Rational separation_radius(const RatPoint& p) const {
        std::optional<Rational> best;
        auto feed = [&](const Rational& d) {
            if (d.is_zero()) return;
            if (!best || d < *best) best = d;
        };
        for (const Atom& a : atoms_) feed(dist_inf(p, a.pt));
        for (const Block& b : blocks_) feed(dist_inf(p, b.shape));
        if (!best) return Rational(1);
        return *best * Rational(1, 2);
    }

    Box joint_bounding_box() const {
        auto bb = support().bounding_box();
        if (!bb) return Box(Rational(-1), Rational(-1), Rational(1), Rational(1));
        return *bb;
    }

    friend bool operator==(const SpectralMeasure& a, const SpectralMeasure& b) {
        if (a.factor_ != b.factor_) return false;
        if (a.atoms_.size() != b.atoms_.size() || a.blocks_.size() != b.blocks_.size())
            return false;
        // Presentation equality up to reordering.
        std::vector<char> used(b.atoms_.size(), 0);
        for (const Atom& x : a.atoms_) {
            bool found = false;
            for (size_t i = 0; i < b.atoms_.size(); ++i) {
                if (!used[i] && b.atoms_[i].pt == x.pt && b.atoms_[i].val == x.val) {
                    used[i] = 1;
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        std::vector<char> usedb(b.blocks_.size(), 0);
        for (const Block& x : a.blocks_) {
            bool found = false;
            for (size_t i = 0; i < b.blocks_.size(); ++i) {
                if (!usedb[i] && b.blocks_[i].shape == x.shape && b.blocks_[i].val == x.val) {
                    usedb[i] = 1;
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        return true;
    }

private:
    Multiplicity evaluate(const OpenRegion& o, std::optional<RatPoint> deleted_atom) const {
        DimValue total = DimValue::zero(factor_);
        for (const Atom& a : atoms_) {
            if (deleted_atom && a.pt == *deleted_atom) continue;
            if (o.contains_point(a.pt)) total = dim_add(total, a.val);
        }
        for (const Block& b : blocks_) {
            if (factor_.type_ii() && !b.val.is_infinite_class()) {
                Rational part = b.is_segment() ? o.length_on_segment(b.shape)
                                               : o.area_in_box(b.shape);
                if (part.is_zero()) continue;
                total = dim_add(total,
                                DimValue::trace(factor_, b.val.trace_value() * part / b.measure()));
            } else {
                // Any open set meeting a solid shape meets it in positive measure.
                if (o.meets(b.shape)) total = dim_add(total, b.val);
            }
        }
        return total;
    }

    void strip_zeros() {
        std::vector<Atom> atoms;
        for (const Atom& a : atoms_)
            if (!a.val.is_zero()) atoms.push_back(a);
        atoms_ = std::move(atoms);
        std::vector<Block> blocks;
        for (const Block& b : blocks_)
            if (!b.val.is_zero()) blocks.push_back(b);
        blocks_ = std::move(blocks);
    }

    void validate() const {
        for (const Atom& a : atoms_) {
            require_dyadic(a.pt, "atom");
            if (a.val.factor() != factor_)
                throw FactorMismatchError("atom value from a different factor");
        }
        for (const Block& b : blocks_) {
            if (b.val.factor() != factor_)
                throw FactorMismatchError("block value from a different factor");
            if (b.shape.is_point())
                throw InvariantViolationError("block shape degenerates to a point; use an atom");
            require_dyadic({b.shape.x0, b.shape.y0}, "block");
            require_dyadic({b.shape.x1, b.shape.y1}, "block");
        }
        for (size_t i = 0; i < atoms_.size(); ++i)
            for (size_t j = i + 1; j < atoms_.size(); ++j)
                if (atoms_[i].pt == atoms_[j].pt)
                    throw InvariantViolationError("atom points must be pairwise distinct");

        switch (factor_.tag) {
            case FactorTag::I_fin:
                if (!blocks_.empty())
                    throw InvariantViolationError(
                        "finite rank forces an atomic spectral measure (no blocks in I_fin)");
                break;
            case FactorTag::I_inf:
                for (const Block& b : blocks_)
                    if (b.val.kind() != DimValue::Kind::AlephCard)
                        throw InvariantViolationError(
                            "I_inf block values must be infinite cardinals");
                break;
            case FactorTag::III:
                for (const Atom& a : atoms_)
                    if (!a.val.is_infinite_class())
                        throw InvariantViolationError("type III classes are all infinite");
                for (const Block& b : blocks_)
                    if (!b.val.is_infinite_class())
                        throw InvariantViolationError("type III classes are all infinite");
                break;
            default:
                break;
        }

        DimValue total = DimValue::zero(factor_);
        try {
            for (const Atom& a : atoms_) total = dim_add(total, a.val);
            for (const Block& b : blocks_) total = dim_add(total, b.val);
        } catch (const OverflowError&) {
            throw InvariantViolationError("total mass exceeds the identity class");
        }
        if (total != DimValue::identity(factor_))
            throw InvariantViolationError("total mass " + total.str() +
                                          " does not equal the identity class " +
                                          DimValue::identity(factor_).str());
    }

    FactorType factor_;
    std::vector<Atom> atoms_;
    std::vector<Block> blocks_;
};

inline void require_same_factor(const SpectralMeasure& a, const SpectralMeasure& b) {
    if (a.factor() != b.factor())
        throw FactorMismatchError("operators live in different factors: " + a.factor().str() +
                                  " vs " + b.factor().str());
}

/// Separation radius with respect to the features of both measures.
inline Rational joint_separation_radius(const SpectralMeasure& h, const SpectralMeasure& k,
                                        const RatPoint& p) {
    return Rational::min(h.separation_radius(p), k.separation_radius(p));
}

}  // namespace orbitlab
