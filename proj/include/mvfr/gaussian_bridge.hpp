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
 * Entropic interpolation between two centered Gaussians, used as an
 * independent oracle for the single-point Schrodinger bridge.
 *
 * With heat rate 2 eps the bridge covariance solves
 *
 *   A_t^{-1} = [B0 + 2 eps t I]^{-1} + [C1 + 2 eps (1-t) I]^{-1},
 *
 * where (B0, C1) is the fixed point of the marginal constraints at t = 0, 1.
 * B0 and C1 are indefinite for generic pairs, so the iteration runs on the
 * precisions P = B0^{-1}, Q = C1^{-1}, which stay finite throughout:
 *
 *   P <- A0^{-1} - h_1(Q),   Q <- A1^{-1} - h_1(P),   h_s(X) = X (I + 2 eps s X)^{-1}.
 */
#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "mvfr/error.hpp"
#include "mvfr/hpsd.hpp"

namespace mvfr {

struct GaussianBridgeOptions {
    int max_iters = 500;
    /// Stop when the max-entry change of (P, Q) is at most tol * max(1, |P|, |Q|).
    double tol = 1e-12;
};

struct GaussianBridge {
    std::vector<double> times;
    std::vector<HermitianMatrix> covariances;
    HermitianMatrix precision_b0;  // P = B0^{-1}
    HermitianMatrix precision_c1;  // Q = C1^{-1}
    int iterations = 0;

    /// B0 = P^{-1} when P is invertible.
    std::optional<HermitianMatrix> b0() const { return invert(precision_b0); }
    std::optional<HermitianMatrix> c1() const { return invert(precision_c1); }

private:
    static std::optional<HermitianMatrix> invert(const HermitianMatrix& x) {
        try {
            return hermitian_inverse(x);
        } catch (const Error&) {
            return std::nullopt;
        }
    }
};

namespace detail {

/// X (I + c X)^{-1}; throws FixedPointDiverged when I + c X is singular.
inline HermitianMatrix resolvent_product(const HermitianMatrix& x, double c) {
    const auto e = eigh(x);
    Eigen::VectorXd f(e.eigenvalues.size());
    for (Eigen::Index k = 0; k < f.size(); ++k) {
        const double den = 1.0 + c * e.eigenvalues(k);
        if (std::abs(den) <= 1e-12 * std::max(1.0, std::abs(c * e.eigenvalues(k))))
            throw Error(Errc::FixedPointDiverged, "gaussian_bridge_oracle: heat resolvent became singular");
        f(k) = e.eigenvalues(k) / den;
    }
    return hermitian_part(e.eigenvectors * f.asDiagonal() * e.eigenvectors.adjoint());
}

}  // namespace detail

inline GaussianBridge gaussian_bridge_oracle(const HermitianMatrix& a0, const HermitianMatrix& a1, double epsilon,
                                             const std::vector<double>& ts, GaussianBridgeOptions options = {}) {
    require_same_dim(a0, a1, "gaussian_bridge_oracle");
    if (!(epsilon > 0.0)) throw Error(Errc::InvalidArgument, "gaussian_bridge_oracle: epsilon must be positive");
    const auto e0 = eigh(a0), e1 = eigh(a1);
    if (e0.min() <= kSylvesterFloor || e1.min() <= kSylvesterFloor)
        throw Error(Errc::Singular, "gaussian_bridge_oracle: endpoints must be positive definite");
    const HermitianMatrix inv0 = hermitian_inverse(e0), inv1 = hermitian_inverse(e1);
    const double c = 2.0 * epsilon;

    GaussianBridge out;
    HermitianMatrix p = 0.5 * inv0, q = 0.5 * inv1;
    bool done = false;
    for (int it = 1; it <= options.max_iters; ++it) {
        const HermitianMatrix pn = hermitian_part(inv0 - detail::resolvent_product(q, c));
        const HermitianMatrix qn = hermitian_part(inv1 - detail::resolvent_product(pn, c));
        const double change = std::max((pn - p).cwiseAbs().maxCoeff(), (qn - q).cwiseAbs().maxCoeff());
        const double scale = std::max({1.0, pn.cwiseAbs().maxCoeff(), qn.cwiseAbs().maxCoeff()});
        p = pn;
        q = qn;
        out.iterations = it;
        if (!std::isfinite(change)) break;
        if (change <= options.tol * scale) {
            done = true;
            break;
        }
    }
    if (!done) throw Error(Errc::FixedPointDiverged, "gaussian_bridge_oracle: no fixed point within the iteration cap");

    out.times = ts;
    out.precision_b0 = p;
    out.precision_c1 = q;
    for (double t : ts) {
        const HermitianMatrix inv_t =
            hermitian_part(detail::resolvent_product(p, c * t) + detail::resolvent_product(q, c * (1.0 - t)));
        const auto e = eigh(inv_t);
        if (e.min() <= 0.0) throw Error(Errc::FixedPointDiverged, "gaussian_bridge_oracle: covariance lost definiteness");
        out.covariances.push_back(hermitian_inverse(e));
    }
    return out;
}

}  // namespace mvfr
