#pragma once

#include <chrono>
#include <functional>
#include <ostream>
#include <sstream>

#include "orbitlab/corpus.hpp"
#include "orbitlab/distance.hpp"
#include "orbitlab/gridmatch.hpp"
#include "orbitlab/io.hpp"
#include "orbitlab/oracle.hpp"

namespace orbitlab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

namespace selftest {

inline std::vector<FactorType> corpus_factors() {
    return {FactorType::ii_1(),   FactorType::i_fin(4), FactorType::i_inf(0),
            FactorType::i_inf(2), FactorType::ii_inf(), FactorType::iii()};
}

/// Deterministic pair stream: independent, mutated, equivalent and dominated
/// variants in rotation.
inline std::pair<SpectralMeasure, SpectralMeasure> corpus_pair(CorpusGen& gen,
                                                               const FactorType& f, int i) {
    SpectralMeasure h = gen.random_measure(f);
    switch (i % 4) {
        case 0: return {h, gen.random_measure(f)};
        case 1: return {h, gen.mutated_variant(h)};
        case 2: return {h, gen.equivalent_variant(h)};
        default: return {h, gen.dominated_variant(h)};
    }
}

inline CriterionResult c1_oracle_equivalence(std::uint64_t seed, int pairs_per_factor,
                                             int unions_per_pair) {
    CriterionResult r{1, "oracle equivalence of orbit decisions", true, "", 0.0};
    long long pair_count = 0, regions = 0;
    for (const FactorType& f : corpus_factors()) {
        CorpusGen gen(seed ^ (0xC1u + std::hash<std::string>{}(f.str())));
        for (int i = 0; i < pairs_per_factor; ++i) {
            auto [h, k] = corpus_pair(gen, f, i);
            bool eq = same_norm_closure(h, k).holds;
            bool mem_kh = member_strong_closure(k, h).holds;
            bool mem_hk = member_strong_closure(h, k).holds;
            ComparatorReport oracle = oracle_brute_force(h, k, seed + i, unions_per_pair);
            ++pair_count;
            regions += oracle.regions_tested;
            if (eq != oracle.same_norm || mem_kh != oracle.member_kh ||
                mem_hk != oracle.member_hk) {
                r.pass = false;
                std::ostringstream d;
                d << "disagreement on " << f.str() << " pair " << i << ": decision(eq=" << eq
                  << ",kh=" << mem_kh << ",hk=" << mem_hk << ") oracle(" << oracle.same_norm
                  << "," << oracle.member_kh << "," << oracle.member_hk << ") "
                  << oracle.first_disagreement << "\n--- h ---\n"
                  << serialize(h) << "--- k ---\n" << serialize(k);
                r.detail = d.str();
                return r;
            }
        }
    }
    r.detail = std::to_string(pair_count) + " pairs, " + std::to_string(regions) +
               " regions, 100% agreement";
    return r;
}

inline CriterionResult c2_finite_factor_rigidity(std::uint64_t seed, int pairs_per_factor) {
    CriterionResult r{2, "finite-factor rigidity of strong-closure membership", true, "", 0.0};
    long long n = 0;
    for (const FactorType& f : {FactorType::ii_1(), FactorType::i_fin(4)}) {
        CorpusGen gen(seed ^ (0xC2u + std::hash<std::string>{}(f.str())));
        for (int i = 0; i < pairs_per_factor; ++i) {
            auto [h, k] = corpus_pair(gen, f, i);
            bool eq = same_norm_closure(h, k).holds;
            bool m1 = member_strong_closure(k, h).holds;
            bool m2 = member_strong_closure(h, k).holds;
            ++n;
            if ((m1 && m2) != eq || m1 != m2) {
                r.pass = false;
                r.detail = "rigidity failed on " + f.str() + " pair " + std::to_string(i);
                return r;
            }
        }
    }
    r.detail = std::to_string(n) + " finite-factor pairs, membership == equality throughout";
    return r;
}

inline CriterionResult c3_diagonal_cycle_family(std::uint64_t) {
    CriterionResult r{3, "diagonal cycle family: norm decay without orbit equality", true, "",
                      0.0};
    for (int n : {10, 50, 200}) {
        std::vector<double> dh((size_t)n), dk((size_t)n);
        for (int m = 1; m <= n; ++m) dh[(size_t)(m - 1)] = 1.0 / m;
        dk[0] = 0.0;
        for (int m = 2; m <= n; ++m) dk[(size_t)(m - 1)] = 1.0 / (m - 1);

        double min_norm = 1e300;
        for (int j = 1; j <= n; ++j) {
            // Conjugation by the cycle (1 2 ... j) rotates the first j entries.
            std::vector<double> conj((size_t)n);
            conj[0] = dh[(size_t)(j - 1)];
            for (int m = 2; m <= j; ++m) conj[(size_t)(m - 1)] = dh[(size_t)(m - 2)];
            for (int m = j + 1; m <= n; ++m) conj[(size_t)(m - 1)] = dh[(size_t)(m - 1)];
            double norm = 0;
            for (int m = 0; m < n; ++m) norm = std::max(norm, std::abs(conj[(size_t)m] - dk[(size_t)m]));
            min_norm = std::min(min_norm, norm);
            if (!(norm <= 2.0 / j + 1e-15)) {
                r.pass = false;
                r.detail = "cycle bound failed at n=" + std::to_string(n) +
                           " j=" + std::to_string(j);
                return r;
            }
        }
        if (!(min_norm <= 2.0 / n)) {
            r.pass = false;
            r.detail = "minimum over cycles did not reach 2/n at n=" + std::to_string(n);
            return r;
        }

        // Matrix-level cross-check of the cycle conjugation at n = 10.
        if (n == 10) {
            CMat mh = CMat::Zero(n, n), mk = CMat::Zero(n, n);
            for (int m = 0; m < n; ++m) {
                mh(m, m) = dh[(size_t)m];
                mk(m, m) = dk[(size_t)m];
            }
            for (int j = 2; j <= n; j += 3) {
                CMat p = CMat::Zero(n, n);
                for (int m = 1; m < j; ++m) p(m, m - 1) = 1;
                p(0, j - 1) = 1;
                for (int m = j; m < n; ++m) p(m, m) = 1;
                double norm = operator_norm(p * mh * p.adjoint() - mk);
                if (!(norm <= 2.0 / j + 1e-12)) {
                    r.pass = false;
                    r.detail = "matrix cycle bound failed at j=" + std::to_string(j);
                    return r;
                }
            }
        }

        std::vector<Complex> lam, mu;
        for (double v : dh) lam.push_back(Complex(v, 0));
        for (double v : dk) mu.push_back(Complex(v, 0));
        double delta = bottleneck_match(lam, mu);
        if (!(delta <= 2.0 / n + 1e-15)) {
            r.pass = false;
            r.detail = "spectral distance above 2/n at n=" + std::to_string(n);
            return r;
        }

        int zeros_h = 0, zeros_k = 0;
        for (double v : dh) zeros_h += (v == 0.0);
        for (double v : dk) zeros_k += (v == 0.0);
        if (zeros_h == zeros_k) {
            r.pass = false;
            r.detail = "eigenvalue multiplicities at 0 should differ";
            return r;
        }
    }

    // Presentation-level absorption regression: the unit atom at the origin
    // is swallowed by an aleph_0 block whose closure contains it.
    FactorType f = FactorType::i_inf(0);
    Block tail{Box(Rational(0), Rational(0), Rational(1), Rational(0)), DimValue::aleph(f, 0)};
    SpectralMeasure h(f, {}, {tail});
    SpectralMeasure k(f, {{RatPoint{Rational(0), Rational(0)}, DimValue::finite_card(f, 1)}},
                      {tail});
    if (!same_norm_closure(h, k).holds) {
        r.pass = false;
        r.detail = "absorption regression: expected equal norm-closed orbits";
        return r;
    }
    r.detail = "norm decay 2/j verified for n in {10,50,200}; presentation regression holds";
    return r;
}

inline double sorted_hermitian_delta(const CVec& a, const CVec& b) {
    std::vector<double> x(a.size()), y(b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) x[(size_t)i] = a(i).real();
    for (Eigen::Index i = 0; i < b.size(); ++i) y[(size_t)i] = b(i).real();
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    double m = 0;
    for (size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

inline double brute_force_delta(const CVec& a, const CVec& b) {
    std::vector<int> idx((size_t)a.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = (int)i;
    double best = 1e300;
    do {
        double m = 0;
        for (size_t i = 0; i < idx.size(); ++i)
            m = std::max(m, std::abs(a((Eigen::Index)i) - b(idx[i])));
        best = std::min(best, m);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return best;
}

inline CriterionResult c4_weyl_equality(std::uint64_t seed) {
    CriterionResult r{4, "Weyl equality for Hermitian pairs", true, "", 0.0};
    std::mt19937_64 rng(seed ^ 0xC4u);
    for (int i = 0; i < 50; ++i) {
        Eigen::Index n = 2 + (i % 5);
        NormalMatrix h = random_normal_matrix(rng, n, true);
        NormalMatrix k = random_normal_matrix(rng, n, true);
        double delta = delta_matrix(h, k);
        CVec lh = eigen_normal(h).eigenvalues, lk = eigen_normal(k).eigenvalues;
        double sorted = sorted_hermitian_delta(lh, lk);
        double brute = brute_force_delta(lh, lk);
        if (std::abs(delta - sorted) > 1e-12 || std::abs(delta - brute) > 1e-12) {
            r.pass = false;
            r.detail = "bottleneck disagrees with sorted-eigenvalue formula on pair " +
                       std::to_string(i);
            return r;
        }
        DistanceReport rep = dist_upper_bound(h, k, 3, seed + (std::uint64_t)i);
        if (std::abs(rep.dist_ub - delta) > 1e-6) {
            r.pass = false;
            r.detail = "dist_ub " + std::to_string(rep.dist_ub) + " vs delta " +
                       std::to_string(delta) + " on pair " + std::to_string(i);
            return r;
        }
    }
    r.detail = "50 Hermitian pairs: |dist_ub - delta| <= 1e-6, formula match to 1e-12";
    return r;
}

inline CriterionResult c5_distance_left_inequality(std::uint64_t seed) {
    CriterionResult r{5, "orbit distance bounded by spectral distance", true, "", 0.0};
    std::mt19937_64 rng(seed ^ 0xC5u);
    for (int i = 0; i < 100; ++i) {
        Eigen::Index n = 2 + (i % 5);
        NormalMatrix h = random_normal_matrix(rng, n);
        NormalMatrix k = random_normal_matrix(rng, n);
        double delta = delta_matrix(h, k);
        DistanceReport rep = dist_upper_bound(h, k, 2, seed + (std::uint64_t)i);
        if (!(rep.dist_ub <= delta + 1e-9)) {
            r.pass = false;
            r.detail = "dist_ub " + std::to_string(rep.dist_ub) + " above delta " +
                       std::to_string(delta) + " on pair " + std::to_string(i);
            return r;
        }
    }
    r.detail = "100 normal pairs: dist_ub <= delta + 1e-9";
    return r;
}

inline CriterionResult c6_grid_construction(std::uint64_t seed) {
    CriterionResult r{6, "grid-matching unitary construction", true, "", 0.0};
    std::mt19937_64 rng(seed ^ 0xC6u);
    const double meshes[3] = {1.0 / 4, 1.0 / 16, 1.0 / 64};
    const double side_f = (1.0 / 64) / std::sqrt(2.0);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    for (int i = 0; i < 50; ++i) {
        Eigen::Index n = 3 + (i % 4);
        CVec dh(n), dk(n);
        for (Eigen::Index t = 0; t < n; ++t) {
            double cx = (std::floor(u(rng) / side_f) + 0.5) * side_f;
            double cy = (std::floor(u(rng) / side_f) + 0.5) * side_f;
            dh(t) = Complex(cx + u(rng) * side_f / 5, cy + u(rng) * side_f / 5);
            dk(t) = Complex(cx + u(rng) * side_f / 5, cy + u(rng) * side_f / 5);
        }
        CMat qh = random_unitary(rng, n), qk = random_unitary(rng, n);
        NormalMatrix h(qh * dh.asDiagonal() * qh.adjoint());
        NormalMatrix k(qk * dk.asDiagonal() * qk.adjoint());
        for (double mesh : meshes) {
            GridUnitary g = construct_unitary_grid(h, k, mesh);
            if (!(g.achieved_norm <= mesh)) {
                r.pass = false;
                r.detail = "achieved norm " + std::to_string(g.achieved_norm) +
                           " above mesh " + std::to_string(mesh);
                return r;
            }
        }

        // Deliberate mismatch: push one eigenvalue far from its cell.
        CVec dk2 = dk;
        dk2(0) += Complex(64 * side_f, 0);
        NormalMatrix k2(qk * dk2.asDiagonal() * qk.adjoint());
        bool caught = false;
        try {
            construct_unitary_grid(h, k2, 1.0 / 16);
        } catch (const MultiplicityMismatchError& e) {
            caught = true;
            // Re-verify the reported cell against the eigenvalue lists.
            auto count_in_cell = [&](const CVec& d) {
                int c = 0;
                for (Eigen::Index t = 0; t < n; ++t) {
                    auto cell = detail::grid_cell(d(t), e.cell_side);
                    if (cell.first == e.cell_x && cell.second == e.cell_y) ++c;
                }
                return c;
            };
            if (count_in_cell(dh) != e.count_h || count_in_cell(dk2) != e.count_k ||
                e.count_h == e.count_k) {
                r.pass = false;
                r.detail = "mismatch witness cell does not re-verify";
                return r;
            }
        }
        if (!caught) {
            r.pass = false;
            r.detail = "expected a multiplicity mismatch on the displaced pair";
            return r;
        }
    }
    r.detail = "50 matched pairs within mesh at 1/4, 1/16, 1/64; mismatches re-verified";
    return r;
}

inline SupportSet random_small_set(CorpusGen& gen) {
    for (int tries = 0; tries < 100; ++tries) {
        SupportSet s;
        int n_segs = 1 + (int)gen.pick(3);
        int n_pts = (int)gen.pick(3);
        for (int i = 0; i < n_segs; ++i) s.add_box(gen.segment());
        for (int i = 0; i < n_pts; ++i) s.add_point(gen.point());
        if (is_small(s)) return s;
    }
    SupportSet s;
    s.add_box(Box(Rational(0), Rational(0), Rational(1), Rational(0)));
    return s;
}

inline SupportSet random_subset(CorpusGen& gen, const SupportSet& s) {
    SupportSet out;
    for (const Box& seg : s.segs()) {
        long long mode = gen.pick(3);
        if (mode == 0) continue;  // drop
        if (mode == 1) {
            out.add_box(seg);
            continue;
        }
        // Keep a dyadic half of the segment.
        Rational half(1, 2);
        if (seg.horizontal()) {
            Rational mid = (seg.x0 + seg.x1) * half;
            out.add_box(gen.pick(2) == 0 ? Box(seg.x0, seg.y0, mid, seg.y1)
                                         : Box(mid, seg.y0, seg.x1, seg.y1));
        } else {
            Rational mid = (seg.y0 + seg.y1) * half;
            out.add_box(gen.pick(2) == 0 ? Box(seg.x0, seg.y0, seg.x1, mid)
                                         : Box(seg.x0, mid, seg.x1, seg.y1));
        }
    }
    for (const RatPoint& p : s.pts())
        if (gen.pick(2) == 0) out.add_point(p);
    return out;
}

inline CriterionResult c7_smallness_suite(std::uint64_t seed) {
    CriterionResult r{7, "smallness of compact sets", true, "", 0.0};

    SupportSet segment;
    segment.add_box(Box(Rational(0), Rational(0), Rational(1), Rational(0)));
    SupportSet square;
    square.add_box(Box(Rational(0), Rational(0), Rational(1), Rational(1)));
    SupportSet boundary;
    boundary.add_box(Box(Rational(0), Rational(0), Rational(1), Rational(0)));
    boundary.add_box(Box(Rational(0), Rational(1), Rational(1), Rational(1)));
    boundary.add_box(Box(Rational(0), Rational(0), Rational(0), Rational(1)));
    boundary.add_box(Box(Rational(1), Rational(0), Rational(1), Rational(1)));

    if (!is_small(segment) || is_small(square) || is_small(boundary)) {
        r.pass = false;
        r.detail = "fixture smallness verdicts wrong";
        return r;
    }
    if (complement_components(boundary) != 2) {
        r.pass = false;
        r.detail = "square boundary should split the frame into 2 components";
        return r;
    }
    SupportSet two = boundary;
    for (const Box& b : {Box(Rational(2), Rational(0), Rational(3), Rational(0)),
                         Box(Rational(2), Rational(1), Rational(3), Rational(1)),
                         Box(Rational(2), Rational(0), Rational(2), Rational(1)),
                         Box(Rational(3), Rational(0), Rational(3), Rational(1))})
        two.add_box(b);
    if (complement_components(two) != 3) {
        r.pass = false;
        r.detail = "two square boundaries should give 3 components";
        return r;
    }

    CorpusGen gen(seed ^ 0xC7u);
    std::vector<SupportSet> corpus{segment, square, boundary, two};
    for (int i = 0; i < 100; ++i) {
        SupportSet s = random_small_set(gen);
        SupportSet sub = random_subset(gen, s);
        if (!is_small(s) || !is_small(sub)) {
            r.pass = false;
            r.detail = "subset of a small set came out non-small at case " + std::to_string(i);
            return r;
        }
        corpus.push_back(s);
        corpus.push_back(sub);
    }
    for (size_t i = 0; i < corpus.size(); ++i) {
        const SupportSet& s = corpus[i];
        Box frame = s.default_frame();
        if (is_small(s, frame, 0) != is_small(s, frame, 1) ||
            complement_components(s, frame, 0) != complement_components(s, frame, 1)) {
            r.pass = false;
            r.detail = "refinement instability on corpus set " + std::to_string(i);
            return r;
        }
    }
    r.detail = "fixtures, 100 random subsets, and refinement stability all hold";
    return r;
}

inline CriterionResult c8_classifier_fixtures(std::uint64_t seed) {
    CriterionResult r{8, "topology-agreement classifiers", true, "", 0.0};
    auto fail = [&](const std::string& why) {
        r.pass = false;
        r.detail = why;
        return r;
    };

    FactorType ii1 = FactorType::ii_1();
    CorpusGen gen(seed ^ 0xC8u);
    for (int i = 0; i < 10; ++i) {
        SpectralMeasure h = gen.random_measure(ii1);
        if (!norm_eq_strongstar(h)) return fail("II_1 operator with norm != strong* closure");
        if (!strongstar_eq_strong(h)) return fail("II_1 operator with strong* != strong");
        if (!h.essential_spectrum().is_empty()) return fail("II_1 essential spectrum nonempty");
        if (!central_meet(h).is_empty() && !h.is_scalar())
            return fail("nonscalar II_1 orbit meets the scalars");
    }

    FactorType iiinf = FactorType::ii_inf();
    SpectralMeasure scalar(iiinf, {{RatPoint{Rational(0), Rational(0)}, DimValue::infinite(iiinf)}},
                           {});
    if (!norm_eq_strongstar(scalar)) return fail("II_inf scalar should close in norm");
    if (!strongstar_eq_strong(scalar)) return fail("II_inf scalar strong*/strong mismatch");

    SpectralMeasure nonscalar(
        iiinf,
        {{RatPoint{Rational(0), Rational(0)}, DimValue::infinite(iiinf)},
         {RatPoint{Rational(1), Rational(0)}, DimValue::trace(iiinf, Rational(1, 2))}},
        {});
    if (norm_eq_strongstar(nonscalar)) return fail("II_inf nonscalar should not close");
    // The defining condition: finite algebra or central element.
    if (norm_eq_strongstar(nonscalar) != (iiinf.is_finite() || nonscalar.is_scalar()))
        return fail("classifier disagrees with its defining condition");

    // Diagonal II_1 operator with dyadic masses at rational points.
    {
        std::vector<Atom> atoms;
        for (int n = 1; n <= 5; ++n)
            atoms.push_back({RatPoint{Rational(n - 1, 4), Rational(0)},
                             DimValue::trace(ii1, Rational(1, 1LL << n))});
        atoms.push_back({RatPoint{Rational(1, 2), Rational(1, 2)},
                         DimValue::trace(ii1, Rational(1, 32))});
        SpectralMeasure h(ii1, std::move(atoms), {});
        if (!orbit_norm_closed(h).closed) return fail("diagonal II_1 orbit should be norm-closed");
    }

    // II_inf operator with an infinite-mass square: essential spectrum has
    // interior, so strong* and strong closures differ; the orbit is not
    // norm-closed and the witness re-verifies.
    {
        SpectralMeasure h(
            iiinf, {},
            {{Box(Rational(0), Rational(0), Rational(1), Rational(1)), DimValue::infinite(iiinf)}});
        if (strongstar_eq_strong(h)) return fail("interior essential spectrum should separate");
        SupportSet ess = h.essential_spectrum();
        if (is_small(ess) || !ess.has_interior())
            return fail("essential spectrum of the infinite square should have interior");
        ClosednessReport c = orbit_norm_closed(h);
        if (c.closed || !c.failing_point || !c.radius)
            return fail("infinite block should break norm-closedness with a witness");
        DimValue punctured = h.deleted_neighborhood_class(*c.failing_point, *c.radius);
        DimValue at_point = DimValue::zero(iiinf);
        for (const Atom& a : h.atoms())
            if (a.pt == *c.failing_point) at_point = a.val;
        if (dim_lt(punctured, at_point)) return fail("closedness witness does not re-verify");
    }

    // Mixed II_inf operator: only the infinite atom is essential.
    {
        SpectralMeasure h(
            iiinf,
            {{RatPoint{Rational(0), Rational(0)}, DimValue::infinite(iiinf)}},
            {{Box(Rational(0), Rational(0), Rational(1), Rational(1)),
              DimValue::trace(iiinf, Rational(3, 2))}});
        SupportSet ess = h.essential_spectrum();
        if (ess.pts().size() != 1 || !ess.cells().empty() || !ess.segs().empty())
            return fail("essential spectrum should be a single point");
        if (!strongstar_eq_strong(h)) return fail("a point is small");
        SupportSet cm = central_meet(h);
        if (cm.pts().size() != 1 || !(cm.pts()[0] == RatPoint{Rational(0), Rational(0)}))
            return fail("central meet should be the essential point");
    }

    // I_inf(0) with segment essential spectrum: small, so strong* == strong.
    {
        FactorType f = FactorType::i_inf(0);
        SpectralMeasure h(
            f, {},
            {{Box(Rational(0), Rational(0), Rational(1), Rational(0)), DimValue::aleph(f, 0)}});
        if (!strongstar_eq_strong(h)) return fail("segment essential spectrum is small");
    }

    // Separable predual assumption enforced.
    {
        FactorType f = FactorType::i_inf(2);
        SpectralMeasure h(
            f, {}, {{Box(Rational(0), Rational(0), Rational(1), Rational(1)), DimValue::aleph(f, 2)}});
        bool thrown = false;
        try {
            strongstar_eq_strong(h);
        } catch (const NonSeparablePredualError&) {
            thrown = true;
        }
        if (!thrown) return fail("nonseparable predual should be refused");
    }

    // Type III: the strong-closed orbit meets the scalars in the full support.
    {
        FactorType f = FactorType::iii();
        SpectralMeasure h(
            f, {{RatPoint{Rational(0), Rational(0)}, DimValue::infinite(f)}},
            {{Box(Rational(0), Rational(0), Rational(1), Rational(1)), DimValue::infinite(f)}});
        if (!support_equal(central_meet(h), h.support()))
            return fail("type III central meet should be the full support");
    }

    r.detail = "all classifier fixtures match their defining conditions";
    return r;
}

inline CriterionResult c9_type_iii_spectra(std::uint64_t seed) {
    CriterionResult r{9, "type III closures determined by spectra", true, "", 0.0};
    FactorType f = FactorType::iii();
    CorpusGen gen(seed ^ 0xC9u);
    for (int i = 0; i < 50; ++i) {
        auto [h, k] = corpus_pair(gen, f, i);
        SupportSet sh = h.support(), sk = k.support();
        bool incl = support_subset(sk, sh);
        bool eq = support_equal(sh, sk);

        // Independent rasterized comparison on a fine lattice.
        int lev = std::max(h.refinement_level(), k.refinement_level()) + 2;
        Rational step = Rational::pow2(lev);
        bool incl_raster = true, eq_raster = true;
        for (Rational x = Rational(-1); x <= Rational(2); x += step)
            for (Rational y = Rational(-1); y <= Rational(2); y += step) {
                RatPoint p{x, y};
                bool ch = sh.covers(p), ck = sk.covers(p);
                if (ck && !ch) incl_raster = false;
                if (ch != ck) eq_raster = false;
            }
        if (incl != incl_raster || eq != eq_raster) {
            r.pass = false;
            r.detail = "support comparison disagrees with rasterized sampling at pair " +
                       std::to_string(i);
            return r;
        }
        if (member_strong_closure(k, h).holds != incl ||
            same_norm_closure(h, k).holds != eq) {
            r.pass = false;
            r.detail = "orbit verdicts disagree with support comparison at pair " +
                       std::to_string(i);
            return r;
        }
    }
    r.detail = "50 type III pairs: membership == support inclusion, equality == support equality";
    return r;
}

inline CriterionResult c10_delta_zero_consistency(std::uint64_t seed, int pairs_per_factor) {
    CriterionResult r{10, "spectral-distance bracket vanishes exactly on equal orbits", true,
                      "", 0.0};
    Rational tol(1, 256);
    for (const FactorType& f : corpus_factors()) {
        CorpusGen gen(seed ^ (0xCAu + std::hash<std::string>{}(f.str())));
        for (int i = 0; i < pairs_per_factor; ++i) {
            auto [h, k] = corpus_pair(gen, f, i);
            bool eq = same_norm_closure(h, k).holds;
            PresentationDistance d = delta_presentation(h, k, tol, seed + (std::uint64_t)i);
            bool zero_lo = d.exact_zero || d.lo.is_zero();
            if (zero_lo != eq) {
                r.pass = false;
                r.detail = "bracket lower endpoint " + d.lo.str() + " vs equality=" +
                           std::to_string(eq) + " on " + f.str() + " pair " +
                           std::to_string(i);
                return r;
            }
            if (!d.exact_zero && tol < d.hi - d.lo) {
                r.pass = false;
                r.detail = "bracket wider than tolerance on " + f.str() + " pair " +
                           std::to_string(i);
                return r;
            }
        }
    }
    r.detail = "bracket lower endpoint is 0 exactly on equal-orbit pairs (tol 1/256)";
    return r;
}

}  // namespace selftest

/// The acceptance battery.  Each criterion is seeded independently; the
/// corpus sizes follow the stated counts.
inline std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                                   std::ostream* progress = nullptr) {
    using Clock = std::chrono::steady_clock;
    std::vector<std::function<CriterionResult()>> criteria = {
        [&] { return selftest::c1_oracle_equivalence(seed, 200, 10000); },
        [&] { return selftest::c2_finite_factor_rigidity(seed, 200); },
        [&] { return selftest::c3_diagonal_cycle_family(seed); },
        [&] { return selftest::c4_weyl_equality(seed); },
        [&] { return selftest::c5_distance_left_inequality(seed); },
        [&] { return selftest::c6_grid_construction(seed); },
        [&] { return selftest::c7_smallness_suite(seed); },
        [&] { return selftest::c8_classifier_fixtures(seed); },
        [&] { return selftest::c9_type_iii_spectra(seed); },
        [&] { return selftest::c10_delta_zero_consistency(seed, 24); },
    };
    std::vector<CriterionResult> results;
    for (auto& fn : criteria) {
        auto t0 = Clock::now();
        CriterionResult res;
        try {
            res = fn();
        } catch (const std::exception& e) {
            res.pass = false;
            res.detail = std::string("exception: ") + e.what();
            res.id = (int)results.size() + 1;
            res.name = "criterion " + std::to_string(res.id);
        }
        res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        results.push_back(res);
        if (progress) {
            (*progress) << (res.pass ? "[PASS] " : "[FAIL] ") << "C" << res.id << ": "
                        << res.name << ": " << res.detail << " (" << res.seconds << "s)"
                        << std::endl;
        }
    }
    return results;
}

}  // namespace orbitlab
