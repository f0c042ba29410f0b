#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <complex>
#include <random>
#include <vector>

#include "orbitlab/errors.hpp"

namespace orbitlab {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// Largest singular value by power iteration on M*M.  The Rayleigh estimate
/// is sandwiched between the top two singular values, so the value converges
/// even when they nearly coincide.
inline double operator_norm(const CMat& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    CVec v = CVec::Zero(m.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = Complex(1.0 + 0.25 * (double)(i % 7), 0.125 * (double)(i % 3));
    v.normalize();
    double sigma = 0.0;
    for (int it = 0; it < 20000; ++it) {
        CVec w = m * v;
        double s = w.norm();
        if (s == 0.0) return 0.0;
        CVec v2 = m.adjoint() * w;
        double n2 = v2.norm();
        if (n2 == 0.0) return s;
        v2 /= n2;
        double prev = sigma;
        sigma = s;
        v = v2;
        if (it > 2 && std::abs(sigma - prev) <= 1e-13 * std::max(1.0, sigma)) break;
    }
    return sigma;
}

/// Top singular triple (sigma, u, v) with m v = sigma u; same iteration as
/// operator_norm but keeping the vectors.
inline double top_singular_pair(const CMat& m, CVec& u_out, CVec& v_out) {
    CVec v = CVec::Zero(m.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = Complex(1.0 + 0.25 * (double)(i % 7), 0.125 * (double)(i % 3));
    v.normalize();
    double sigma = 0.0;
    for (int it = 0; it < 20000; ++it) {
        CVec w = m * v;
        double s = w.norm();
        if (s == 0.0) break;
        CVec v2 = m.adjoint() * w;
        double n2 = v2.norm();
        if (n2 == 0.0) break;
        v2 /= n2;
        double prev = sigma;
        sigma = s;
        v = v2;
        if (it > 2 && std::abs(sigma - prev) <= 1e-13 * std::max(1.0, sigma)) break;
    }
    v_out = v;
    CVec w = m * v;
    double s = w.norm();
    u_out = s > 0 ? CVec(w / s) : CVec(CVec::Zero(m.rows()));
    return sigma;
}

/// Dense complex matrix asserted normal at construction.
class NormalMatrix {
public:
    explicit NormalMatrix(CMat a) : a_(std::move(a)) {
        if (a_.rows() != a_.cols()) throw NotNormalError("normal matrix must be square");
        double scale = operator_norm(a_);
        residual_ = operator_norm(a_ * a_.adjoint() - a_.adjoint() * a_);
        if (residual_ > 1e-10 * std::max(scale * scale, 1e-300) && scale > 0)
            throw NotNormalError("matrix is not normal: commutator norm " +
                                 std::to_string(residual_));
    }

    const CMat& mat() const { return a_; }
    Eigen::Index dim() const { return a_.rows(); }
    double normality_residual() const { return residual_; }

private:
    CMat a_;
    double residual_;
};

/// Unitary diagonalization of a normal matrix via the QR iteration with
/// accumulated unitary (complex Schur form; the triangular factor of a
/// normal matrix is diagonal).  Residual-checked.
struct SpectralDecomposition {
    CVec eigenvalues;
    CMat unitary;  // columns are orthonormal eigenvectors
};

inline SpectralDecomposition eigen_normal(const NormalMatrix& m) {
    Eigen::ComplexSchur<CMat> schur(m.mat(), true);
    if (schur.info() != Eigen::Success)
        throw Error("Schur iteration failed to converge");
    SpectralDecomposition d;
    d.unitary = schur.matrixU();
    d.eigenvalues = schur.matrixT().diagonal();
    CMat rebuilt = d.unitary * d.eigenvalues.asDiagonal() * d.unitary.adjoint();
    double scale = std::max(operator_norm(m.mat()), 1e-12);
    if (operator_norm(m.mat() - rebuilt) > 1e-9 * scale)
        throw NotNormalError("spectral decomposition residual above tolerance");
    return d;
}

/// Haar-ish random unitary: QR of a Gaussian matrix with phase fixing.
template <class Rng>
CMat random_unitary(Rng& rng, Eigen::Index n) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMat z(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) z(i, j) = Complex(g(rng), g(rng));
    Eigen::HouseholderQR<CMat> qr(z);
    CMat q = qr.householderQ();
    CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
        Complex d = r(i, i);
        double ad = std::abs(d);
        q.col(i) *= ad > 0 ? d / ad : Complex(1, 0);
    }
    return q;
}

template <class Rng>
NormalMatrix random_normal_matrix(Rng& rng, Eigen::Index n, bool hermitian = false) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CVec d(n);
    for (Eigen::Index i = 0; i < n; ++i)
        d(i) = hermitian ? Complex(u(rng), 0.0) : Complex(u(rng), u(rng));
    CMat q = random_unitary(rng, n);
    return NormalMatrix(q * d.asDiagonal() * q.adjoint());
}

/// exp(S) for skew-Hermitian S, through the unitary diagonalization of -iS.
inline CMat exp_skew(const CMat& s) {
    CMat herm = Complex(0, -1) * s;
    Eigen::SelfAdjointEigenSolver<CMat> es(herm);
    CVec phases(s.rows());
    for (Eigen::Index i = 0; i < s.rows(); ++i)
        phases(i) = std::exp(Complex(0, es.eigenvalues()(i)));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace orbitlab
