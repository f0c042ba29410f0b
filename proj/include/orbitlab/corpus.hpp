#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "orbitlab/specmeas.hpp"

namespace orbitlab {

// Seeded random presentations for the self-test corpus.  All coordinates live
// on the quarter lattice of [0,1]^2, so decisions, comparators and distance
// sweeps stay well inside the exact-arithmetic comfort zone.

class CorpusGen {
public:
    explicit CorpusGen(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& rng() { return rng_; }

    long long pick(long long n) { return (long long)(rng_() % (std::uint64_t)n); }

    Rational coord() { return Rational(pick(5), 4); }  // 0, 1/4, ..., 1

    RatPoint point() { return {coord(), coord()}; }

    /// Nondegenerate rect with quarter-lattice corners.
    Box rect() {
        long long x0 = pick(4), y0 = pick(4);
        long long x1 = x0 + 1 + pick(4 - x0), y1 = y0 + 1 + pick(4 - y0);
        return Box(Rational(x0, 4), Rational(y0, 4), Rational(x1, 4), Rational(y1, 4));
    }

    Box segment() {
        long long c = pick(5), a = pick(4);
        long long b = a + 1 + pick(4 - a);
        if (pick(2) == 0)
            return Box(Rational(a, 4), Rational(c, 4), Rational(b, 4), Rational(c, 4));
        return Box(Rational(c, 4), Rational(a, 4), Rational(c, 4), Rational(b, 4));
    }

    Box shape() { return pick(3) == 0 ? segment() : rect(); }

    std::vector<RatPoint> distinct_points(int n) {
        std::vector<RatPoint> pts;
        int guard = 0;
        while ((int)pts.size() < n && guard++ < 200) {
            RatPoint p = point();
            bool dup = false;
            for (const RatPoint& q : pts) dup |= (q == p);
            if (!dup) pts.push_back(p);
        }
        return pts;
    }

    /// Positive masses k/16 summing to exactly 1.
    std::vector<Rational> unit_partition(int parts) {
        std::vector<long long> cuts{0, 16};
        int guard = 0;
        while ((int)cuts.size() < parts + 1 && guard++ < 200) {
            long long c = 1 + pick(15);
            bool dup = false;
            for (long long q : cuts) dup |= (q == c);
            if (!dup) cuts.push_back(c);
        }
        std::sort(cuts.begin(), cuts.end());
        std::vector<Rational> out;
        for (size_t i = 0; i + 1 < cuts.size(); ++i)
            out.push_back(Rational(cuts[i + 1] - cuts[i], 16));
        return out;
    }

    SpectralMeasure random_measure(const FactorType& f) {
        switch (f.tag) {
            case FactorTag::II_1: return random_ii1(f);
            case FactorTag::II_inf: return random_iiinf(f);
            case FactorTag::I_fin: return random_ifin(f);
            case FactorTag::I_inf: return random_iinf(f);
            case FactorTag::III: return random_iii(f);
        }
        throw InvariantViolationError("bad factor");
    }

    /// A presentation-preserving variant of m: reorder, split a block along a
    /// dyadic line, or add mass-free decoration absorbed by infinite blocks.
    SpectralMeasure equivalent_variant(const SpectralMeasure& m) {
        std::vector<Atom> atoms = m.atoms();
        std::vector<Block> blocks = m.blocks();
        std::shuffle(atoms.begin(), atoms.end(), rng_);
        std::shuffle(blocks.begin(), blocks.end(), rng_);

        if (!blocks.empty() && pick(2) == 0) {
            size_t i = (size_t)pick((long long)blocks.size());
            Block b = blocks[i];
            Rational half(1, 2);
            if (b.is_segment()) {
                bool horiz = b.shape.horizontal();
                Rational mid = horiz ? (b.shape.x0 + b.shape.x1) * half
                                     : (b.shape.y0 + b.shape.y1) * half;
                Box s1 = b.shape, s2 = b.shape;
                if (horiz) s1.x1 = mid, s2.x0 = mid;
                else s1.y1 = mid, s2.y0 = mid;
                DimValue v1 = b.val, v2 = b.val;
                if (m.factor().type_ii() && !b.val.is_infinite_class()) {
                    v1 = DimValue::trace(m.factor(), b.val.trace_value() * half);
                    v2 = v1;
                }
                blocks[i] = {s1, v1};
                blocks.push_back({s2, v2});
            } else {
                bool vertical_cut = pick(2) == 0;
                Rational mid = vertical_cut ? (b.shape.x0 + b.shape.x1) * half
                                            : (b.shape.y0 + b.shape.y1) * half;
                Box s1 = b.shape, s2 = b.shape;
                if (vertical_cut) s1.x1 = mid, s2.x0 = mid;
                else s1.y1 = mid, s2.y0 = mid;
                DimValue v1 = b.val, v2 = b.val;
                if (m.factor().type_ii() && !b.val.is_infinite_class()) {
                    v1 = DimValue::trace(m.factor(), b.val.trace_value() * half);
                    v2 = v1;
                }
                blocks[i] = {s1, v1};
                blocks.push_back({s2, v2});
            }
        }

        // Decoration absorbed by a solid infinite block: a small class sitting
        // on the block changes no multiplicity value.
        if (!m.factor().is_finite() && pick(2) == 0) {
            for (const Block& b : blocks) {
                if (!b.val.is_infinite_class()) continue;
                RatPoint p{b.shape.x0, b.shape.y0};
                bool taken = false;
                for (const Atom& a : atoms) taken |= (a.pt == p);
                if (taken) break;
                DimValue v = DimValue::zero(m.factor());
                if (m.factor().tag == FactorTag::I_inf)
                    v = DimValue::finite_card(m.factor(), 1 + pick(3));
                else if (m.factor().tag == FactorTag::II_inf)
                    v = DimValue::trace(m.factor(), Rational(1 + pick(4), 16));
                else if (m.factor().tag == FactorTag::III)
                    v = DimValue::infinite(m.factor());
                if (!v.is_zero()) atoms.push_back({p, v});
                break;
            }
        }
        return SpectralMeasure(m.factor(), std::move(atoms), std::move(blocks));
    }

    /// A presentation with one local change; usually lands in a different
    /// orbit, occasionally in the same one (both outcomes are informative).
    /// Mutations that would break a presentation invariant are retried.
    SpectralMeasure mutated_variant(const SpectralMeasure& m) {
        for (int attempt = 0; attempt < 20; ++attempt) {
            try {
                return mutate_once(m);
            } catch (const InvariantViolationError&) {
            } catch (const OverflowError&) {
            }
        }
        return m;
    }

private:
    SpectralMeasure mutate_once(const SpectralMeasure& m) {
        std::vector<Atom> atoms = m.atoms();
        std::vector<Block> blocks = m.blocks();
        const FactorType& f = m.factor();
        int guard = 0;
        while (guard++ < 50) {
            long long move = pick(3);
            if (move == 0 && !atoms.empty()) {
                // Relocate an atom to a fresh lattice point.
                size_t i = (size_t)pick((long long)atoms.size());
                RatPoint p = point();
                bool dup = false;
                for (const Atom& a : atoms) dup |= (a.pt == p);
                if (dup) continue;
                atoms[i].pt = p;
                break;
            }
            if (move == 1 && !blocks.empty()) {
                size_t i = (size_t)pick((long long)blocks.size());
                blocks[i].shape = blocks[i].is_segment() ? segment() : rect();
                break;
            }
            if (move == 2 && atoms.size() >= 2 && f.type_ii()) {
                // Shift mass between two atoms, keeping the total.
                size_t i = (size_t)pick((long long)atoms.size());
                size_t j = (i + 1 + (size_t)pick((long long)atoms.size() - 1)) % atoms.size();
                if (atoms[i].val.is_infinite_class() || atoms[j].val.is_infinite_class())
                    continue;
                Rational vi = atoms[i].val.trace_value(), vj = atoms[j].val.trace_value();
                Rational d(1, 16);
                if (vi <= d) continue;
                atoms[i].val = DimValue::trace(f, vi - d);
                atoms[j].val = DimValue::trace(f, vj + d);
                break;
            }
            if (move == 2 && f.tag == FactorTag::I_inf && !atoms.empty()) {
                size_t i = (size_t)pick((long long)atoms.size());
                atoms[i].val = pick(2) == 0 ? DimValue::finite_card(f, 1 + pick(4))
                                            : DimValue::aleph(f, pick(f.param + 1));
                break;
            }
            if (move == 2 && f.tag == FactorTag::III) {
                if (atoms.size() + blocks.size() >= 2) {
                    if (!atoms.empty()) atoms.pop_back();
                    else blocks.pop_back();
                    break;
                }
                continue;
            }
            if (move == 2 && f.tag == FactorTag::I_fin && atoms.size() >= 2) {
                if (atoms[0].val.fin() > 1) {
                    atoms[0].val = DimValue::finite_card(f, atoms[0].val.fin() - 1);
                    atoms[1].val = DimValue::finite_card(f, atoms[1].val.fin() + 1);
                    break;
                }
                continue;
            }
        }
        return SpectralMeasure(f, std::move(atoms), std::move(blocks));
    }

public:
    /// For properly infinite factors: drop or shrink mass so that the result
    /// stays dominated by m (used to seed positive membership cases).
    SpectralMeasure dominated_variant(const SpectralMeasure& m) {
        const FactorType& f = m.factor();
        if (f.is_finite()) return equivalent_variant(m);
        std::vector<Atom> atoms = m.atoms();
        std::vector<Block> blocks = m.blocks();
        // Keep one infinite component so the total stays the identity class.
        auto is_identity_carrier = [&](const DimValue& v) {
            if (f.tag == FactorTag::I_inf)
                return v.kind() == DimValue::Kind::AlephCard && v.aleph_index() == f.param;
            return v.is_infinite_class();
        };
        for (int tries = 0; tries < 4; ++tries) {
            if (atoms.empty() && blocks.empty()) break;
            long long which = pick((long long)(atoms.size() + blocks.size()));
            if ((size_t)which < atoms.size()) {
                const DimValue v = atoms[(size_t)which].val;
                bool last_carrier = is_identity_carrier(v);
                for (size_t j = 0; j < atoms.size(); ++j)
                    if (j != (size_t)which && is_identity_carrier(atoms[j].val))
                        last_carrier = false;
                for (const Block& b : blocks)
                    if (is_identity_carrier(b.val)) last_carrier = false;
                if (last_carrier) continue;
                if (f.type_ii() && !v.is_infinite_class() && pick(2) == 0 &&
                    Rational(1, 16) < v.trace_value()) {
                    atoms[(size_t)which].val =
                        DimValue::trace(f, v.trace_value() - Rational(1, 16));
                } else {
                    atoms.erase(atoms.begin() + which);
                }
                break;
            }
            size_t bi = (size_t)which - atoms.size();
            const DimValue v = blocks[bi].val;
            bool last_carrier = is_identity_carrier(v);
            for (const Atom& a : atoms)
                if (is_identity_carrier(a.val)) last_carrier = false;
            for (size_t j = 0; j < blocks.size(); ++j)
                if (j != bi && is_identity_carrier(blocks[j].val)) last_carrier = false;
            if (last_carrier) continue;
            blocks.erase(blocks.begin() + bi);
            break;
        }
        return SpectralMeasure(f, std::move(atoms), std::move(blocks));
    }

private:
    SpectralMeasure random_ii1(const FactorType& f) {
        int n_blocks = (int)pick(3);
        int n_atoms = (int)pick(4);
        if (n_blocks + n_atoms == 0) n_atoms = 1;
        auto masses = unit_partition(n_blocks + n_atoms);
        std::vector<Block> blocks;
        for (int i = 0; i < n_blocks; ++i)
            blocks.push_back({shape(), DimValue::trace(f, masses[(size_t)i])});
        std::vector<Atom> atoms;
        auto pts = distinct_points(n_atoms);
        n_atoms = (int)pts.size();
        // Fold any undrawn masses into the first component.
        Rational spare(0);
        for (size_t i = (size_t)(n_blocks + n_atoms); i < masses.size(); ++i)
            spare += masses[i];
        for (int i = 0; i < n_atoms; ++i)
            atoms.push_back({pts[(size_t)i], DimValue::trace(f, masses[(size_t)(n_blocks + i)])});
        if (!spare.is_zero()) {
            if (!atoms.empty())
                atoms[0].val = DimValue::trace(f, atoms[0].val.trace_value() + spare);
            else
                blocks[0].val = DimValue::trace(f, blocks[0].val.trace_value() + spare);
        }
        return SpectralMeasure(f, std::move(atoms), std::move(blocks));
    }

    SpectralMeasure random_iiinf(const FactorType& f) {
        std::vector<Atom> atoms;
        std::vector<Block> blocks;
        int n_blocks = (int)pick(3), n_atoms = (int)pick(4);
        auto pts = distinct_points(n_atoms);
        bool has_inf = false;
        for (int i = 0; i < n_blocks; ++i) {
            bool inf = pick(3) == 0;
            has_inf |= inf;
            blocks.push_back({shape(), inf ? DimValue::infinite(f)
                                           : DimValue::trace(f, Rational(1 + pick(32), 16))});
        }
        for (const RatPoint& p : pts) {
            bool inf = pick(4) == 0;
            has_inf |= inf;
            atoms.push_back({p, inf ? DimValue::infinite(f)
                                    : DimValue::trace(f, Rational(1 + pick(32), 16))});
        }
        if (!has_inf) {
            if (!blocks.empty()) blocks[0].val = DimValue::infinite(f);
            else if (!atoms.empty()) atoms[0].val = DimValue::infinite(f);
            else atoms.push_back({point(), DimValue::infinite(f)});
        }
        return SpectralMeasure(f, std::move(atoms), std::move(blocks));
    }

    SpectralMeasure random_ifin(const FactorType& f) {
        int n_atoms = 1 + (int)pick(std::min(f.param, (long long)4));
        auto pts = distinct_points(n_atoms);
        n_atoms = (int)pts.size();
        // Composition of the dimension into n_atoms positive integers.
        std::vector<long long> counts((size_t)n_atoms, 1);
        long long rest = f.param - n_atoms;
        for (long long r = 0; r < rest; ++r) ++counts[(size_t)pick(n_atoms)];
        std::vector<Atom> atoms;
        for (int i = 0; i < n_atoms; ++i)
            atoms.push_back({pts[(size_t)i], DimValue::finite_card(f, counts[(size_t)i])});
        return SpectralMeasure(f, std::move(atoms), {});
    }

    SpectralMeasure random_iinf(const FactorType& f) {
        std::vector<Atom> atoms;
        std::vector<Block> blocks;
        int n_blocks = (int)pick(3), n_atoms = (int)pick(4);
        auto pts = distinct_points(n_atoms);
        bool has_top = false;
        for (int i = 0; i < n_blocks; ++i) {
            long long a = pick(f.param + 1);
            has_top |= (a == f.param);
            blocks.push_back({shape(), DimValue::aleph(f, a)});
        }
        for (const RatPoint& p : pts) {
            if (pick(2) == 0) {
                atoms.push_back({p, DimValue::finite_card(f, 1 + pick(4))});
            } else {
                long long a = pick(f.param + 1);
                has_top |= (a == f.param);
                atoms.push_back({p, DimValue::aleph(f, a)});
            }
        }
        if (!has_top) {
            if (!blocks.empty()) blocks[0].val = DimValue::aleph(f, f.param);
            else if (!atoms.empty()) atoms[0].val = DimValue::aleph(f, f.param);
            else atoms.push_back({point(), DimValue::aleph(f, f.param)});
        }
        return SpectralMeasure(f, std::move(atoms), std::move(blocks));
    }

    SpectralMeasure random_iii(const FactorType& f) {
        std::vector<Atom> atoms;
        std::vector<Block> blocks;
        int n_blocks = (int)pick(3), n_atoms = (int)pick(3);
        auto pts = distinct_points(n_atoms);
        for (int i = 0; i < n_blocks; ++i) blocks.push_back({shape(), DimValue::infinite(f)});
        for (const RatPoint& p : pts) atoms.push_back({p, DimValue::infinite(f)});
        if (atoms.empty() && blocks.empty())
            atoms.push_back({point(), DimValue::infinite(f)});
        return SpectralMeasure(f, std::move(atoms), std::move(blocks));
    }

    std::mt19937_64 rng_;
};

}  // namespace orbitlab
