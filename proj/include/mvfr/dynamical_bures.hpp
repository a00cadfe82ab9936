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
 * Time-discretized kinetic formulation of the Bures distance:
 *
 *   d_B^2(a0, a1) = 1/4 min  int_0^1 a_t u_t : u_t dt,   da_t/dt = (a_t u_t)^Sym.
 *
 * Interior nodes a_k = C_k C_k^* are free (PSD by construction), the endpoints
 * are imposed exactly. On each step the velocity is recovered from the
 * midpoint rule (a_{k+1} - a_k) / dt = (abar_k u_k)^Sym, abar_k = (a_k + a_{k+1}) / 2.
 * Nothing here uses the closed-form distance, so the two can check each other.
 */
#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "mvfr/bures.hpp"
#include "mvfr/error.hpp"
#include "mvfr/hpsd.hpp"
#include "mvfr/lbfgs.hpp"

namespace mvfr {

struct DynamicalBuresResult {
    double value = 0.0;
    FiberGeodesic path;
    bool converged = false;
    int iterations = 0;
    /// Exact by construction; kept to report the endpoint constraint explicitly.
    double endpoint_error = 0.0;
};

namespace detail {

/// Packs Hermitian-factor parameters: one complex d x d block per node.
inline void pack_factor(const Matrix& c, Eigen::VectorXd& x, Eigen::Index offset) {
    for (Eigen::Index j = 0; j < c.size(); ++j) {
        x(offset + 2 * j) = c.data()[j].real();
        x(offset + 2 * j + 1) = c.data()[j].imag();
    }
}

inline Matrix unpack_factor(const Eigen::VectorXd& x, Eigen::Index offset, Eigen::Index d) {
    Matrix c(d, d);
    for (Eigen::Index j = 0; j < c.size(); ++j) c.data()[j] = Complex(x(offset + 2 * j), x(offset + 2 * j + 1));
    return c;
}

inline void pack_gradient(const Matrix& dc, Eigen::VectorXd& g, Eigen::Index offset) { pack_factor(dc, g, offset); }

}  // namespace detail

inline DynamicalBuresResult dynamical_bures_solver(const HermitianMatrix& a0_in, const HermitianMatrix& a1_in, int n_steps,
                                                   DescentOptions options = {}) {
    if (n_steps < 8) throw Error(Errc::InvalidArgument, "dynamical_bures_solver: n_steps must be >= 8");
    require_same_dim(a0_in, a1_in, "dynamical_bures_solver");
    const Eigen::Index d = a0_in.rows();
    const Matrix id = Matrix::Identity(d, d);

    HermitianMatrix a0 = a0_in, a1 = a1_in;
    const auto e0 = clamp_psd(eigh(a0), "dynamical_bures_solver");
    const auto e1 = clamp_psd(eigh(a1), "dynamical_bures_solver");
    const double reg = 1e-8 * std::max({1.0, e0.max(), e1.max()});
    if (!is_positive_definite(e0) || e0.min() <= reg) a0 += reg * id;
    if (!is_positive_definite(e1) || e1.min() <= reg) a1 += reg * id;

    const int n = n_steps;
    const double dt = 1.0 / n;
    const Eigen::Index block = 2 * d * d;

    auto nodes_from = [&](const Eigen::VectorXd& x) {
        std::vector<Matrix> a(n + 1);
        a[0] = a0;
        a[n] = a1;
        for (int k = 1; k < n; ++k) {
            const Matrix c = detail::unpack_factor(x, (k - 1) * block, d);
            a[k] = c * c.adjoint();
        }
        return a;
    };

    const DescentObjective objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
        const auto a = nodes_from(x);
        std::vector<Matrix> ga(n + 1, Matrix::Zero(d, d));
        double total = 0.0;
        for (int k = 0; k < n; ++k) {
            const Matrix delta = a[k + 1] - a[k];
            const auto mid = eigh(0.5 * (a[k] + a[k + 1]));
            if (mid.min() <= kSylvesterFloor) return std::numeric_limits<double>::infinity();
            const Matrix v = solve_sylvester_velocity(mid, delta);
            total += frobenius_inner(delta, v);
            if (grad) {
                const Matrix v2 = v * v;
                ga[k + 1] += 2.0 * v - 0.5 * v2;
                ga[k] += -2.0 * v - 0.5 * v2;
            }
        }
        const double scale = 0.25 / dt;
        if (grad) {
            grad->resize(x.size());
            for (int k = 1; k < n; ++k) {
                const Matrix c = detail::unpack_factor(x, (k - 1) * block, d);
                detail::pack_gradient(2.0 * scale * hermitian_part(ga[k]) * c, *grad, (k - 1) * block);
            }
        }
        return scale * total;
    };

    Eigen::VectorXd x((n - 1) * block);
    for (int k = 1; k < n; ++k) {
        const double t = k * dt;
        detail::pack_factor(psd_sqrt(hermitian_part((1.0 - t) * a0 + t * a1)), x, (k - 1) * block);
    }
    options.objective_tol = std::min(options.objective_tol, 1e-12);
    const auto res = minimize_lbfgs(objective, x, options);

    DynamicalBuresResult out;
    out.value = res.value;
    out.converged = res.converged;
    out.iterations = res.iterations;
    const auto a = nodes_from(res.x);
    out.path.a0 = a0_in;
    out.path.a1 = a1_in;
    out.path.delta = reg;
    for (int k = 0; k <= n; ++k) {
        const int lo = std::max(0, k - 1), hi = std::min(n, k + 1);
        const auto e = eigh(a[k]);
        std::optional<HermitianMatrix> u;
        if (e.min() > kSylvesterFloor) u = solve_sylvester_velocity(e, (a[hi] - a[lo]) / ((hi - lo) * dt));
        out.path.samples.push_back({k * dt, a[k], u});
    }
    out.endpoint_error = (a[0] - a0).norm() + (a[n] - a1).norm();
    return out;
}

}  // namespace mvfr
