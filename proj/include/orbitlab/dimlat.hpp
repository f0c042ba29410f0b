#pragma once

#include <string>

#include "orbitlab/rational.hpp"

namespace orbitlab {

// Arithmetic, order and lattice structure of projection equivalence classes
// in the five model factors.  Classes are totally ordered within a factor;
// mixing factors is a hard error, never a coercion.

enum class FactorTag { I_fin, I_inf, II_1, II_inf, III };

struct FactorType {
    FactorTag tag = FactorTag::II_1;
    long long param = 0;  // n for I_fin (>=1), aleph index for I_inf (>=0)

    static FactorType i_fin(long long n) {
        if (n < 1) throw InvariantViolationError("I_fin requires n >= 1");
        return {FactorTag::I_fin, n};
    }
    static FactorType i_inf(long long kappa) {
        if (kappa < 0) throw InvariantViolationError("I_inf requires aleph index >= 0");
        return {FactorTag::I_inf, kappa};
    }
    static FactorType ii_1() { return {FactorTag::II_1, 0}; }
    static FactorType ii_inf() { return {FactorTag::II_inf, 0}; }
    static FactorType iii() { return {FactorTag::III, 0}; }

    bool is_finite() const { return tag == FactorTag::I_fin || tag == FactorTag::II_1; }
    bool properly_infinite() const { return !is_finite(); }
    // Every model factor here is sigma-finite except I_inf with index > 0.
    bool sigma_finite() const { return !(tag == FactorTag::I_inf && param > 0); }
    bool type_i() const { return tag == FactorTag::I_fin || tag == FactorTag::I_inf; }
    bool type_ii() const { return tag == FactorTag::II_1 || tag == FactorTag::II_inf; }

    friend bool operator==(const FactorType& a, const FactorType& b) {
        return a.tag == b.tag && a.param == b.param;
    }
    friend bool operator!=(const FactorType& a, const FactorType& b) { return !(a == b); }

    std::string str() const {
        switch (tag) {
            case FactorTag::I_fin: return "I_fin " + std::to_string(param);
            case FactorTag::I_inf: return "I_inf " + std::to_string(param);
            case FactorTag::II_1: return "II_1";
            case FactorTag::II_inf: return "II_inf";
            case FactorTag::III: return "III";
        }
        return "?";
    }
};

/// One element of the dimension range of a factor: a finite cardinal, an
/// aleph, a rational trace value, or the infinite class.
class DimValue {
public:
    enum class Kind { FinCard, AlephCard, Trace, Inf };

    static DimValue finite_card(const FactorType& f, long long m) {
        if (!f.type_i() && f.tag != FactorTag::III)
            throw InvariantViolationError("finite cardinal value in non-type-I factor");
        if (m < 0) throw InvariantViolationError("negative cardinal");
        if (f.tag == FactorTag::I_fin && m > f.param)
            throw OverflowError("cardinal exceeds I_fin dimension");
        if (f.tag == FactorTag::III && m != 0)
            throw InvariantViolationError("type III classes are 0 and infinity only");
        DimValue v(f, Kind::FinCard);
        v.fin_ = m;
        return v;
    }
    static DimValue aleph(const FactorType& f, long long index) {
        if (f.tag != FactorTag::I_inf)
            throw InvariantViolationError("aleph value requires an I_inf factor");
        if (index < 0 || index > f.param)
            throw InvariantViolationError("aleph index above factor cardinality");
        DimValue v(f, Kind::AlephCard);
        v.aleph_ = index;
        return v;
    }
    static DimValue trace(const FactorType& f, const Rational& q) {
        if (!f.type_ii()) throw InvariantViolationError("trace value in non-type-II factor");
        if (q.is_negative()) throw InvariantViolationError("negative trace");
        if (f.tag == FactorTag::II_1 && Rational(1) < q)
            throw OverflowError("II_1 trace exceeds 1");
        DimValue v(f, Kind::Trace);
        v.trace_ = q;
        return v;
    }
    static DimValue infinite(const FactorType& f) {
        if (f.tag != FactorTag::II_inf && f.tag != FactorTag::III)
            throw InvariantViolationError("Inf class requires II_inf or III");
        return DimValue(f, Kind::Inf);
    }

    static DimValue zero(const FactorType& f) {
        if (f.type_ii()) return trace(f, Rational(0));
        return finite_card(f, 0);
    }

    /// Class of the identity projection.
    static DimValue identity(const FactorType& f) {
        switch (f.tag) {
            case FactorTag::I_fin: return finite_card(f, f.param);
            case FactorTag::I_inf: return aleph(f, f.param);
            case FactorTag::II_1: return trace(f, Rational(1));
            case FactorTag::II_inf:
            case FactorTag::III: return infinite(f);
        }
        throw InvariantViolationError("bad factor");
    }

    const FactorType& factor() const { return factor_; }
    Kind kind() const { return kind_; }
    long long fin() const { return fin_; }
    long long aleph_index() const { return aleph_; }
    const Rational& trace_value() const { return trace_; }

    bool is_zero() const {
        return (kind_ == Kind::FinCard && fin_ == 0) ||
               (kind_ == Kind::Trace && trace_.is_zero());
    }
    // Infinite as a projection class: alephs and the Inf flag.
    bool is_infinite_class() const {
        return kind_ == Kind::AlephCard || kind_ == Kind::Inf;
    }

    std::string str() const {
        switch (kind_) {
            case Kind::FinCard: return std::to_string(fin_);
            case Kind::AlephCard: return "aleph" + std::to_string(aleph_);
            case Kind::Trace: return trace_.str();
            case Kind::Inf: return "inf";
        }
        return "?";
    }

    friend bool operator==(const DimValue& a, const DimValue& b) {
        if (a.factor_ != b.factor_ || a.kind_ != b.kind_) return false;
        switch (a.kind_) {
            case Kind::FinCard: return a.fin_ == b.fin_;
            case Kind::AlephCard: return a.aleph_ == b.aleph_;
            case Kind::Trace: return a.trace_ == b.trace_;
            case Kind::Inf: return true;
        }
        return false;
    }
    friend bool operator!=(const DimValue& a, const DimValue& b) { return !(a == b); }

private:
    DimValue(const FactorType& f, Kind k) : factor_(f), kind_(k) {}

    FactorType factor_;
    Kind kind_;
    long long fin_ = 0;
    long long aleph_ = 0;
    Rational trace_;
};

inline void require_same_factor(const DimValue& a, const DimValue& b) {
    if (a.factor() != b.factor())
        throw FactorMismatchError("dimension values from different factors: " +
                                  a.factor().str() + " vs " + b.factor().str());
}

/// Class of an orthogonal sum.  Infinite classes absorb smaller summands;
/// II_1 sums above the identity have no room and are an error.
inline DimValue dim_add(const DimValue& a, const DimValue& b) {
    require_same_factor(a, b);
    using K = DimValue::Kind;
    const FactorType& f = a.factor();
    if (a.kind() == K::Inf || b.kind() == K::Inf) return DimValue::infinite(f);
    if (a.kind() == K::AlephCard && b.kind() == K::AlephCard)
        return DimValue::aleph(f, std::max(a.aleph_index(), b.aleph_index()));
    if (a.kind() == K::AlephCard) return a;
    if (b.kind() == K::AlephCard) return b;
    if (a.kind() == K::Trace)
        return DimValue::trace(f, a.trace_value() + b.trace_value());
    return DimValue::finite_card(f, a.fin() + b.fin());
}

inline bool dim_leq(const DimValue& a, const DimValue& b) {
    require_same_factor(a, b);
    using K = DimValue::Kind;
    auto rank = [](const DimValue& v) {
        switch (v.kind()) {
            case K::FinCard:
            case K::Trace: return 0;
            case K::AlephCard: return 1;
            case K::Inf: return 2;
        }
        return 0;
    };
    if (rank(a) != rank(b)) return rank(a) < rank(b);
    switch (a.kind()) {
        case K::FinCard: return a.fin() <= b.fin();
        case K::AlephCard: return a.aleph_index() <= b.aleph_index();
        case K::Trace: return a.trace_value() <= b.trace_value();
        case K::Inf: return true;
    }
    return false;
}

inline bool dim_lt(const DimValue& a, const DimValue& b) {
    return dim_leq(a, b) && !(a == b);
}

/// In a factor the comparison central projection is trivial, so the lattice
/// operations are min and max in the total order.
inline std::pair<DimValue, DimValue> dim_meet_join(const DimValue& a, const DimValue& b) {
    require_same_factor(a, b);
    if (dim_leq(a, b)) return {a, b};
    return {b, a};
}

/// Cap used by the cruder multiplicity function: the identity on sigma-finite
/// factors, and min(., aleph_0) on I_inf factors of higher cardinality.
inline DimValue cruder_value(const DimValue& a) {
    if (a.factor().tag == FactorTag::I_inf && a.factor().param > 0 &&
        a.kind() == DimValue::Kind::AlephCard && a.aleph_index() > 0)
        return DimValue::aleph(a.factor(), 0);
    return a;
}

/// Membership in the closure of the class orbit: q is a strong limit of
/// projections equivalent to p.
inline bool closure_member(const DimValue& q, const DimValue& p) {
    require_same_factor(q, p);
    if (p.factor().is_finite()) return q == p;
    if (p.is_infinite_class()) return true;
    return dim_leq(q, p);
}

/// Unitary equivalence class of a projection: class of p together with the
/// class of its complement.
struct ProjClassPair {
    DimValue p;
    DimValue p_perp;

    ProjClassPair(const DimValue& p_, const DimValue& perp_) : p(p_), p_perp(perp_) {
        require_same_factor(p, p_perp);
        if (dim_add(p, p_perp) != DimValue::identity(p.factor()))
            throw InvariantViolationError("class and complement do not sum to the identity");
    }

    friend bool operator==(const ProjClassPair& a, const ProjClassPair& b) {
        return a.p == b.p && a.p_perp == b.p_perp;
    }
};

/// Is q in the strong closure of the unitary orbit of p?
inline bool projection_orbit_closure(const ProjClassPair& p, const ProjClassPair& q) {
    require_same_factor(p.p, q.p);
    const FactorType& f = p.p.factor();
    if (f.is_finite()) return q == p;
    bool p_inf = p.p.is_infinite_class();
    bool pperp_inf = p.p_perp.is_infinite_class();
    if (p_inf && pperp_inf) return true;
    if (!p_inf) return dim_leq(q.p, p.p) && q.p_perp == p.p_perp;
    // p infinite, complement finite: the closure is everything above p.
    return dim_leq(p.p, q.p);
}

}  // namespace orbitlab
