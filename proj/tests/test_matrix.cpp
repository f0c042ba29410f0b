#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>

#include "orbitlab/bottleneck.hpp"

using namespace orbitlab;

namespace {

CMat diag2(Complex a, Complex b) {
    CMat m = CMat::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

}  // namespace

TEST_CASE("operator norm matches full SVD") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        Eigen::Index n = 1 + (i % 7);
        CMat m(n, n);
        for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index c = 0; c < n; ++c) m(r, c) = Complex(g(rng), g(rng));
        Eigen::JacobiSVD<CMat> svd(m);
        double expected = svd.singularValues()(0);
        CHECK(operator_norm(m) == doctest::Approx(expected).epsilon(1e-9));
    }
    CHECK(operator_norm(CMat::Zero(3, 3)) == 0.0);
}

TEST_CASE("normality is checked at construction") {
    CHECK_NOTHROW(NormalMatrix(diag2(Complex(1, 0), Complex(0, 1))));
    CMat u(2, 2);
    u << Complex(1, 0), Complex(1, 0), Complex(1, 0), Complex(-1, 0);
    u /= std::sqrt(2.0);
    CHECK_NOTHROW((NormalMatrix{u}));  // unitary, hence normal
    CMat nil = CMat::Zero(2, 2);
    nil(0, 1) = Complex(1, 0);
    CHECK_THROWS_AS((NormalMatrix{nil}), NotNormalError);
    CHECK_THROWS_AS((NormalMatrix{CMat::Zero(2, 3)}), NotNormalError);
}

TEST_CASE("spectral decomposition: unitary factor and tight residual") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 100; ++i) {
        Eigen::Index n = 2 + (i % 5);
        NormalMatrix m = random_normal_matrix(rng, n);
        SpectralDecomposition d = eigen_normal(m);
        CMat id = CMat::Identity(n, n);
        CHECK(operator_norm(d.unitary * d.unitary.adjoint() - id) < 1e-12);
        CMat rebuilt = d.unitary * d.eigenvalues.asDiagonal() * d.unitary.adjoint();
        CHECK(operator_norm(m.mat() - rebuilt) <= 1e-9 * std::max(1.0, operator_norm(m.mat())));
    }
}

TEST_CASE("skew exponential lands in the unitary group") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        Eigen::Index n = 2 + (i % 4);
        CMat z(n, n);
        for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index c = 0; c < n; ++c) z(r, c) = Complex(g(rng), g(rng));
        CMat s = (z - z.adjoint()) * 0.5;
        CMat u = exp_skew(s);
        CHECK(operator_norm(u * u.adjoint() - CMat::Identity(n, n)) < 1e-12);
    }
    CHECK(operator_norm(exp_skew(CMat::Zero(3, 3)) - CMat::Identity(3, 3)) < 1e-14);
}

TEST_CASE("bottleneck distance basics") {
    NormalMatrix h(diag2(Complex(0, 0), Complex(1, 0)));
    NormalMatrix k(diag2(Complex(0.5, 0), Complex(0.5, 0)));
    CHECK(delta_matrix(h, k) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(delta_matrix(h, h) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(delta_matrix(h, NormalMatrix(CMat::Zero(3, 3))), DimensionMismatchError);
}

TEST_CASE("bottleneck equals brute-force permutation minimax") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 60; ++i) {
        Eigen::Index n = 2 + (i % 6);  // up to 7
        NormalMatrix h = random_normal_matrix(rng, n);
        NormalMatrix k = random_normal_matrix(rng, n);
        CVec lh = eigen_normal(h).eigenvalues, lk = eigen_normal(k).eigenvalues;
        std::vector<int> idx((size_t)n);
        for (size_t t = 0; t < idx.size(); ++t) idx[t] = (int)t;
        double brute = 1e300;
        do {
            double m = 0;
            for (size_t t = 0; t < idx.size(); ++t)
                m = std::max(m, std::abs(lh((Eigen::Index)t) - lk(idx[t])));
            brute = std::min(brute, m);
        } while (std::next_permutation(idx.begin(), idx.end()));
        CHECK(delta_matrix(h, k) == doctest::Approx(brute).epsilon(1e-12));
    }
}

TEST_CASE("bottleneck distance is a unitarily invariant metric") {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 40; ++i) {
        Eigen::Index n = 2 + (i % 4);
        NormalMatrix a = random_normal_matrix(rng, n);
        NormalMatrix b = random_normal_matrix(rng, n);
        NormalMatrix c = random_normal_matrix(rng, n);
        double ab = delta_matrix(a, b), ba = delta_matrix(b, a);
        double bc = delta_matrix(b, c), ac = delta_matrix(a, c);
        CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
        CHECK(ac <= ab + bc + 1e-12);

        CMat u = random_unitary(rng, n), v = random_unitary(rng, n);
        NormalMatrix ua(u * a.mat() * u.adjoint());
        NormalMatrix vb(v * b.mat() * v.adjoint());
        CHECK(std::abs(delta_matrix(ua, vb) - ab) < 1e-9);
    }
}

TEST_CASE("bipartite matcher finds perfect matchings exactly when they exist") {
    BipartiteMatcher m(3, 3);
    m.add_edge(0, 0);
    m.add_edge(0, 1);
    m.add_edge(1, 0);
    m.add_edge(2, 2);
    std::vector<int> match;
    CHECK(m.solve(match) == 3);

    BipartiteMatcher bad(3, 3);
    bad.add_edge(0, 0);
    bad.add_edge(1, 0);
    bad.add_edge(2, 0);
    CHECK(bad.solve(match) == 1);
}
