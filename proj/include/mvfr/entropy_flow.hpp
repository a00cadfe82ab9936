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
 * Canonical entropy relative to a reference measure, its explicit heat flow,
 * the Fisher information, and the tangent norm on the unit-mass sphere.
 *
 * Entropy and Fisher information are extended reals: a singular density at a
 * point with positive reference weight yields +infinity, never an exception.
 */
#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "mvfr/error.hpp"
#include "mvfr/hpsd.hpp"
#include "mvfr/measure.hpp"

namespace mvfr {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// sum_{lambda_i > 0} lambda_i (-logdet(G_i / lambda_i)). Atoms with zero
/// weight are the singular part and contribute nothing.
inline double entropy(const MatrixMeasure& g, const ReferenceMeasure& lam) {
    lam.require_compatible(g, "entropy");
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (lam[i] <= 0.0) continue;
        const auto ld = checked_logdet(eigh(g[i] / lam[i]));
        if (!ld) return kInfinity;
        s -= lam[i] * *ld;
    }
    return s;
}

/// Per-atom entropy contributions (zero on the singular part).
inline std::vector<double> entropy_atoms(const MatrixMeasure& g, const ReferenceMeasure& lam) {
    lam.require_compatible(g, "entropy_atoms");
    std::vector<double> out(g.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (lam[i] <= 0.0) continue;
        const auto ld = checked_logdet(eigh(g[i] / lam[i]));
        out[i] = ld ? -lam[i] * *ld : kInfinity;
    }
    return out;
}

/// sum_{lambda_i > 0} lambda_i tr[(G_i / lambda_i)^{-1} - I].
inline double fisher_information(const MatrixMeasure& g, const ReferenceMeasure& lam) {
    lam.require_compatible(g, "fisher_information");
    double s = 0.0;
    const double d = g.dim();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (lam[i] <= 0.0) continue;
        const auto e = eigh(g[i]);
        if (e.min() <= kLogdetFloor * lam[i]) return kInfinity;
        double tr_inv = 0.0;
        for (Eigen::Index k = 0; k < e.eigenvalues.size(); ++k) tr_inv += 1.0 / e.eigenvalues(k);
        s += lam[i] * lam[i] * tr_inv - lam[i] * d;
    }
    return s;
}

/// S_t(G)_i = lambda_i I + e^{-t} (G_i - lambda_i I); singular atoms decay as e^{-t}.
inline MatrixMeasure heat_flow(const MatrixMeasure& g, const ReferenceMeasure& lam, double t) {
    lam.require_compatible(g, "heat_flow");
    if (!(t >= 0.0)) throw Error(Errc::InvalidArgument, "heat_flow: time must be nonnegative");
    const double decay = std::exp(-t);
    const Eigen::Index d = g.dim();
    MatrixMeasure out = g;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Matrix eq = lam[i] * Matrix::Identity(d, d);
        out[i] = eq + decay * (g[i] - eq);
    }
    return out;
}

/// ||(S_{t+dt} G - S_t G) / dt - (lambda I - S_t G)||_TV.
inline double heat_flow_residual(const MatrixMeasure& g, const ReferenceMeasure& lam, double t, double dt) {
    if (!(dt > 0.0)) throw Error(Errc::InvalidArgument, "heat_flow_residual: dt must be positive");
    const MatrixMeasure a = heat_flow(g, lam, t);
    const MatrixMeasure b = heat_flow(g, lam, t + dt);
    const MatrixMeasure eq = lam.as_measure();
    double r = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) r += frobenius_norm((b[i] - a[i]) / dt - (eq[i] - a[i]));
    return r;
}

struct EntropyDecay {
    double lhs;  // E(S_t G)
    double rhs;  // e^{-(t-s)} E(S_s G)
    std::vector<double> atom_lhs;
    std::vector<double> atom_rhs;
};

inline EntropyDecay entropy_decay_check(const MatrixMeasure& g, const ReferenceMeasure& lam, double s, double t) {
    if (!(0.0 <= s && s <= t)) throw Error(Errc::InvalidArgument, "entropy_decay_check: need 0 <= s <= t");
    const MatrixMeasure gs = heat_flow(g, lam, s);
    const MatrixMeasure gt = heat_flow(g, lam, t);
    const double factor = std::exp(-(t - s));
    EntropyDecay out{entropy(gt, lam), factor * entropy(gs, lam), entropy_atoms(gt, lam), entropy_atoms(gs, lam)};
    for (auto& v : out.atom_rhs) v *= factor;
    return out;
}

/// G_i - lambda_i I, a signed measure of total trace zero.
inline MatrixMeasure fr_gradient_entropy(const MatrixMeasure& g, const ReferenceMeasure& lam) {
    lam.require_compatible(g, "fr_gradient_entropy");
    require_probability(g, "fr_gradient_entropy");
    return g - lam.as_measure();
}

/// Potential U on a unit-mass base point; the realized tangent vector is
/// (G_i U_i)^Sym - G_i sum_j G_j : U_j.
struct TangentVector {
    MatrixMeasure base;
    std::vector<HermitianMatrix> potential;

    MatrixMeasure realized() const {
        double rate = 0.0;
        for (std::size_t i = 0; i < base.size(); ++i) rate += frobenius_inner(base[i], potential[i]);
        MatrixMeasure out = base;
        for (std::size_t i = 0; i < base.size(); ++i) out[i] = sym_product(base[i], potential[i]) - rate * base[i];
        return out;
    }
};

/// sum_i G_i U_i : U_i - (sum_i G_i : U_i)^2, clamped at zero.
inline double tangent_norm_sq(const TangentVector& v) {
    require_probability(v.base, "tangent_norm_sq");
    if (v.potential.size() != v.base.size())
        throw Error(Errc::SupportMismatch, "tangent_norm_sq: potential count does not match support");
    double energy = 0.0, rate = 0.0;
    for (std::size_t i = 0; i < v.base.size(); ++i) {
        energy += frobenius_inner(v.base[i] * v.potential[i], v.potential[i]);
        rate += frobenius_inner(v.base[i], v.potential[i]);
    }
    return std::max(0.0, energy - rate * rate);
}

/// U_i = (G_i / lambda_i)^{-1}. Its realized vector is lambda I - G, the heat
/// flow velocity and minus the entropy gradient; its tangent norm is the
/// Fisher information.
inline TangentVector entropy_gradient_potential(const MatrixMeasure& g, const ReferenceMeasure& lam) {
    lam.require_compatible(g, "entropy_gradient_potential");
    std::vector<HermitianMatrix> u;
    u.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (lam[i] <= 0.0) {
            u.push_back(Matrix::Zero(g.dim(), g.dim()));
            continue;
        }
        u.push_back(lam[i] * hermitian_inverse(g[i]));
    }
    return {g, std::move(u)};
}

/// tr(A log A) with 0 log 0 = 0. Diagnostic only.
inline double von_neumann_entropy(const HermitianMatrix& a) {
    const auto e = clamp_psd(eigh(a), "von_neumann_entropy");
    double s = 0.0;
    for (Eigen::Index k = 0; k < e.eigenvalues.size(); ++k) {
        const double x = e.eigenvalues(k);
        if (x > 0.0) s += x * std::log(x);
    }
    return s;
}

}  // namespace mvfr
