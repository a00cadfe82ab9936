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
 * Bures-Wasserstein geometry on a single fiber: the closed-form distance,
 * the spherical (unit-trace) variant, and constant-speed geodesics with their
 * velocity potentials.
 */
#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "mvfr/error.hpp"
#include "mvfr/hpsd.hpp"

namespace mvfr {

namespace detail {

inline double sum_sqrt_eigenvalues(const Matrix& m) {
    const auto e = eigh(m);
    const double cut = kRankTol * std::max(0.0, e.max());
    double s = 0.0;
    for (Eigen::Index k = 0; k < e.eigenvalues.size(); ++k)
        if (e.eigenvalues(k) > cut) s += std::sqrt(e.eigenvalues(k));
    return s;
}

}  // namespace detail

/// tr a0 + tr a1 - 2 tr sqrt(sqrt(a0) a1 sqrt(a0)), in exactly this ordering.
inline double bures_distance_sq_ordered(const HermitianMatrix& a0, const HermitianMatrix& a1) {
    require_same_dim(a0, a1, "bures_distance_sq");
    const auto e0 = clamp_psd(eigh(a0), "bures_distance_sq");
    clamp_psd(eigh(a1), "bures_distance_sq");
    // Exact zero on the diagonal; the fidelity route leaves O(eps) residue.
    if (a0 == a1) return 0.0;
    const Matrix s0 = psd_sqrt(e0);
    const double fid = detail::sum_sqrt_eigenvalues(s0 * a1 * s0);
    return std::max(0.0, trace_real(a0) + trace_real(a1) - 2.0 * fid);
}

inline double bures_distance_sq(const HermitianMatrix& a0, const HermitianMatrix& a1) {
    return bures_distance_sq_ordered(a0, a1);
}

/// arccos(1 - d_B^2 / 2) on unit-trace fibers.
inline double spherical_bures(const HermitianMatrix& a0, const HermitianMatrix& a1) {
    for (const auto* a : {&a0, &a1})
        if (std::abs(trace_real(*a) - 1.0) > 1e-9) throw Error(Errc::NotUnitTrace, "spherical_bures: trace is not 1");
    const double c = std::clamp(1.0 - 0.5 * bures_distance_sq(a0, a1), -1.0, 1.0);
    return std::acos(c);
}

/// Square-root data of a PSD matrix, reused when the same matrix enters many
/// distance evaluations.
struct SqrtFactors {
    EigenDecomposition eig;
    Matrix sqrt;
    Matrix inv_sqrt;  // eigenvalues floored at 1e-300 before inverting

    explicit SqrtFactors(const HermitianMatrix& a) : eig(eigh(a)) {
        sqrt = psd_sqrt(eig);
        const double floor = std::max(1e-300, 1e-14 * std::max(0.0, eig.max()));
        inv_sqrt = eig.apply([floor](double x) { return 1.0 / std::sqrt(std::max(floor, x)); });
    }
};

struct BuresValueAndGradient {
    double value;
    Matrix grad;  // derivative with respect to the first argument
};

/// d_B^2(a, b) and its gradient I - T in `a`, where T is the optimal map from
/// a to b. `a` should be positive definite for the gradient to be exact.
inline BuresValueAndGradient bures_value_and_gradient(const SqrtFactors& a, const HermitianMatrix& b) {
    const Matrix m = hermitian_part(a.sqrt * b * a.sqrt);
    const Matrix root = psd_sqrt(eigh(m));
    const double value =
        std::max(0.0, a.eig.eigenvalues.sum() + trace_real(b) - 2.0 * trace_real(root));
    const Eigen::Index d = b.rows();
    const Matrix t = hermitian_part(a.inv_sqrt * root * a.inv_sqrt);
    return {value, Matrix::Identity(d, d) - t};
}

struct FiberSample {
    double t;
    HermitianMatrix a;
    std::optional<HermitianMatrix> u;  // velocity potential, where a_t is nonsingular
};

/// Sampled Bures geodesic between two PSD fibers.
struct FiberGeodesic {
    HermitianMatrix a0;
    HermitianMatrix a1;
    std::vector<FiberSample> samples;
    /// Regularization added to an endpoint; always 0 for the closed form.
    double delta = 0.0;
};

/// Closed-form constant-speed Bures geodesic, evaluated at arbitrary times.
///
/// With X0 = sqrt(a0) and X1 = sqrt(a1) W, where W is the unitary polar factor
/// that maximizes Re tr(X0^* X1), the path is a_t = X_t X_t^* with
/// X_t = (1-t) X0 + t X1. This is an optimal coupling for any pair of PSD
/// endpoints, singular ones included, and for positive definite a0 it equals
/// M_t a0 M_t with M_t = (1-t) I + t T and T the optimal map a0 -> a1.
class BuresGeodesicMap {
public:
    BuresGeodesicMap(const HermitianMatrix& a0, const HermitianMatrix& a1) : a0_(a0), a1_(a1) {
        require_same_dim(a0, a1, "bures_geodesic");
        x0_ = psd_sqrt(clamp_psd(eigh(a0), "bures_geodesic"));
        const Matrix s1 = psd_sqrt(clamp_psd(eigh(a1), "bures_geodesic"));
        // K = V S Y^* gives Re tr(W^* K) <= tr S, with equality at W = V Y^*.
        const Eigen::JacobiSVD<Matrix> svd(s1 * x0_, Eigen::ComputeFullU | Eigen::ComputeFullV);
        x1_ = s1 * svd.matrixU() * svd.matrixV().adjoint();
    }

    /// Kept for interface stability; the factor construction needs no regularization.
    double delta() const noexcept { return 0.0; }

    HermitianMatrix at(double t) const {
        if (t == 0.0) return a0_;
        if (t == 1.0) return a1_;
        const Matrix x = factor(t);
        return hermitian_part(x * x.adjoint());
    }

    /// dA/dt at time t.
    HermitianMatrix derivative(double t) const {
        const Matrix x = factor(t);
        const Matrix dx = x1_ - x0_;
        return hermitian_part(dx * x.adjoint() + x * dx.adjoint());
    }

    /// Potential U solving dA/dt = (A U)^Sym, when A_t is nonsingular.
    std::optional<HermitianMatrix> velocity(double t) const {
        const auto e = eigh(at(t));
        if (e.min() <= kSylvesterFloor) return std::nullopt;
        return solve_sylvester_velocity(e, derivative(t));
    }

    FiberGeodesic sample(const std::vector<double>& ts) const {
        FiberGeodesic out{a0_, a1_, {}, 0.0};
        out.samples.reserve(ts.size());
        for (double t : ts) out.samples.push_back({t, at(t), velocity(t)});
        return out;
    }

private:
    Matrix factor(double t) const { return (1.0 - t) * x0_ + t * x1_; }

    HermitianMatrix a0_, a1_;
    Matrix x0_, x1_;
};

inline FiberGeodesic bures_geodesic(const HermitianMatrix& a0, const HermitianMatrix& a1, const std::vector<double>& ts) {
    return BuresGeodesicMap(a0, a1).sample(ts);
}

struct EmbeddingCheck {
    double lhs;  // d_B^2 of the real embeddings
    double rhs;  // 2 d_B^2 of the complex matrices
};

inline EmbeddingCheck bures_real_embedding_check(const HermitianMatrix& a0, const HermitianMatrix& a1) {
    return {bures_distance_sq(real_embedding(a0), real_embedding(a1)), 2.0 * bures_distance_sq(a0, a1)};
}

}  // namespace mvfr
