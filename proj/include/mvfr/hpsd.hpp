// Copyright 2026 The mvfr Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Dense Hermitian matrix kernel: spectral decomposition and the matrix
 * functions built on it (square root, log-determinant, inverse), PSD checks,
 * the complex-to-real block embedding and the symmetric Sylvester solve that
 * recovers a velocity potential from a tangent vector.
 *
 * Every matrix function goes through one eigendecomposition, so all of them
 * share a single tolerance policy (see the constants below).
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "mvfr/error.hpp"

namespace mvfr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
/// d x d complex Hermitian matrix. Hermitian symmetry is a checked property.
using HermitianMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

/// Per-entry tolerance for Hermitian symmetry.
inline constexpr double kHermitianTol = 1e-12;
/// Eigenvalues in [-kPsdTol, 0) are clamped to zero; below that is NotPSD.
inline constexpr double kPsdTol = 1e-10;
/// Eigenvalues below kRankTol * lambda_max count as zero for rank decisions.
inline constexpr double kRankTol = 1e-12;
/// log det is declared singular at or below this eigenvalue.
inline constexpr double kLogdetFloor = 1e-14;
/// Velocity potentials are undefined when lambda_min(g) is at or below this.
inline constexpr double kSylvesterFloor = 1e-12;

struct EigenDecomposition {
    Eigen::VectorXd eigenvalues;  // ascending
    Matrix eigenvectors;          // unitary, columns are eigenvectors

    Eigen::Index dim() const { return eigenvalues.size(); }
    double min() const { return eigenvalues.size() ? eigenvalues(0) : 0.0; }
    double max() const { return eigenvalues.size() ? eigenvalues(eigenvalues.size() - 1) : 0.0; }

    /// R diag(f(lambda)) R*.
    template <class F>
    Matrix apply(F&& f) const {
        Eigen::VectorXd mapped(eigenvalues.size());
        for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) mapped(k) = f(eigenvalues(k));
        return eigenvectors * mapped.asDiagonal() * eigenvectors.adjoint();
    }

    Matrix reconstruct() const {
        return apply([](double x) { return x; });
    }
};

inline void require_same_dim(const Matrix& a, const Matrix& b, const char* where) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream os;
        os << where << ": " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x" << b.cols();
        throw Error(Errc::DimensionMismatch, os.str());
    }
}

inline Matrix hermitian_part(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

/// (A U)^Sym = (AU + UA)/2 for Hermitian A, U.
inline Matrix sym_product(const Matrix& a, const Matrix& u) { return 0.5 * (a * u + u * a); }

inline bool is_hermitian(const Matrix& a, double tol = kHermitianTol) {
    if (a.rows() != a.cols()) return false;
    for (Eigen::Index j = 0; j < a.rows(); ++j)
        for (Eigen::Index k = j; k < a.cols(); ++k)
            if (std::abs(a(j, k) - std::conj(a(k, j))) > tol) return false;
    return true;
}

inline double trace_real(const Matrix& a) { return a.trace().real(); }

/// Real Frobenius product Re tr(a* b).
inline double frobenius_inner(const Matrix& a, const Matrix& b) {
    require_same_dim(a, b, "frobenius_inner");
    double s = 0.0;
    for (Eigen::Index j = 0; j < a.size(); ++j) {
        const Complex x = a.data()[j];
        const Complex y = b.data()[j];
        s += x.real() * y.real() + x.imag() * y.imag();
    }
    return s;
}

inline double frobenius_norm(const Matrix& a) { return a.norm(); }

/// Eigendecomposition of the Hermitian part of `a`, eigenvalues ascending.
inline EigenDecomposition eigh(const Matrix& a) {
    if (a.rows() != a.cols()) throw Error(Errc::DimensionMismatch, "eigh: matrix is not square");
    EigenDecomposition out;
    if (a.rows() == 0) return out;
    if (a.rows() == 1) {
        out.eigenvalues = Eigen::VectorXd::Constant(1, a(0, 0).real());
        out.eigenvectors = Matrix::Identity(1, 1);
        return out;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(a));
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
    return out;
}

/// Throws NotPSD when the smallest eigenvalue is below -kPsdTol.
inline void require_psd(const EigenDecomposition& e, const char* where) {
    if (e.min() < -kPsdTol) {
        std::ostringstream os;
        os.precision(17);
        os << where << ": minimum eigenvalue " << e.min() << " < -" << kPsdTol;
        throw Error(Errc::NotPSD, os.str());
    }
}

inline bool is_psd(const Matrix& a) { return is_hermitian(a, 1e-9) && eigh(a).min() >= -kPsdTol; }

/// Copy of the decomposition with eigenvalues in [-kPsdTol, 0) set to zero.
inline EigenDecomposition clamp_psd(EigenDecomposition e, const char* where) {
    require_psd(e, where);
    for (Eigen::Index k = 0; k < e.eigenvalues.size(); ++k) e.eigenvalues(k) = std::max(0.0, e.eigenvalues(k));
    return e;
}

/// Square root with eigenvalues at or below kRankTol * lambda_max set to zero,
/// so rounding noise in a kernel does not surface as O(sqrt(eps)) entries.
inline Matrix psd_sqrt(const EigenDecomposition& e) {
    const double cut = kRankTol * std::max(0.0, e.max());
    return e.apply([cut](double x) { return x > cut ? std::sqrt(x) : 0.0; });
}

inline Matrix psd_sqrt(const HermitianMatrix& a) { return psd_sqrt(clamp_psd(eigh(a), "psd_sqrt")); }

/// Numerical rank under the kRankTol * lambda_max policy.
inline Eigen::Index psd_rank(const EigenDecomposition& e) {
    const double cut = kRankTol * std::max(0.0, e.max());
    Eigen::Index r = 0;
    for (Eigen::Index k = 0; k < e.eigenvalues.size(); ++k)
        if (e.eigenvalues(k) > cut) ++r;
    return r;
}

inline bool is_positive_definite(const EigenDecomposition& e) {
    return e.dim() > 0 && e.min() > 0.0 && psd_rank(e) == e.dim();
}

/// log det, or nullopt when the matrix is singular (lambda_min <= 1e-14).
inline std::optional<double> checked_logdet(const EigenDecomposition& e) {
    if (e.min() <= kLogdetFloor) return std::nullopt;
    double s = 0.0;
    for (Eigen::Index k = 0; k < e.eigenvalues.size(); ++k) s += std::log(e.eigenvalues(k));
    return s;
}

inline std::optional<double> checked_logdet(const HermitianMatrix& a) { return checked_logdet(eigh(a)); }

inline double logdet(const HermitianMatrix& a) {
    const auto e = eigh(a);
    const auto v = checked_logdet(e);
    if (!v) {
        std::ostringstream os;
        os << "logdet: minimum eigenvalue " << e.min() << " <= " << kLogdetFloor;
        throw Error(Errc::Singular, os.str());
    }
    return *v;
}

/// Inverse through the eigendecomposition; Singular below the rank tolerance.
inline Matrix hermitian_inverse(const EigenDecomposition& e) {
    if (e.dim() == 0) return Matrix();
    const double scale = std::max(std::abs(e.min()), std::abs(e.max()));
    for (Eigen::Index k = 0; k < e.eigenvalues.size(); ++k)
        if (std::abs(e.eigenvalues(k)) <= kRankTol * scale || e.eigenvalues(k) == 0.0)
            throw Error(Errc::Singular, "hermitian_inverse: matrix is singular");
    return e.apply([](double x) { return 1.0 / x; });
}

inline Matrix hermitian_inverse(const HermitianMatrix& a) { return hermitian_inverse(eigh(a)); }

/// Replaces every complex entry x + iy by the real block [[x, -y], [y, x]].
inline RealMatrix real_embedding_real(const Matrix& a) {
    const Eigen::Index d = a.rows();
    RealMatrix out(2 * d, 2 * a.cols());
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            const double x = a(j, k).real();
            const double y = a(j, k).imag();
            out(2 * j, 2 * k) = x;
            out(2 * j, 2 * k + 1) = -y;
            out(2 * j + 1, 2 * k) = y;
            out(2 * j + 1, 2 * k + 1) = x;
        }
    return out;
}

/// Same embedding, returned as a (real-valued) Hermitian matrix of size 2d.
inline HermitianMatrix real_embedding(const HermitianMatrix& a) { return real_embedding_real(a).cast<Complex>(); }

/// Solves (gU + Ug)/2 = xi for Hermitian U. In the eigenbasis of g the
/// solution is U_jk = 2 xi_jk / (lambda_j + lambda_k).
inline HermitianMatrix solve_sylvester_velocity(const EigenDecomposition& g, const HermitianMatrix& xi) {
    if (xi.rows() != g.dim() || xi.cols() != g.dim())
        throw Error(Errc::DimensionMismatch, "solve_sylvester_velocity: dimension mismatch");
    if (g.min() <= kSylvesterFloor) {
        std::ostringstream os;
        os << "solve_sylvester_velocity: lambda_min(g) = " << g.min() << " <= " << kSylvesterFloor;
        throw Error(Errc::Singular, os.str());
    }
    Matrix hat = g.eigenvectors.adjoint() * xi * g.eigenvectors;
    for (Eigen::Index j = 0; j < hat.rows(); ++j)
        for (Eigen::Index k = 0; k < hat.cols(); ++k)
            hat(j, k) *= 2.0 / (g.eigenvalues(j) + g.eigenvalues(k));
    return hermitian_part(g.eigenvectors * hat * g.eigenvectors.adjoint());
}

inline HermitianMatrix solve_sylvester_velocity(const HermitianMatrix& g, const HermitianMatrix& xi) {
    require_same_dim(g, xi, "solve_sylvester_velocity");
    return solve_sylvester_velocity(eigh(g), xi);
}

}  // namespace mvfr
