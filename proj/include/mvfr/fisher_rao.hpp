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
 * Hellinger and Fisher-Rao geometry of matrix-valued measures.
 *
 * (H+, d_H / 2) is a Euclidean cone over (P, d_FR / 2) with radial coordinate
 * sqrt(mass). Every operation below is fiberwise Bures geometry plus that cone
 * law, so all distances and geodesics are closed form.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "mvfr/bures.hpp"
#include "mvfr/error.hpp"
#include "mvfr/hpsd.hpp"
#include "mvfr/measure.hpp"

namespace mvfr {

enum class Metric { Hellinger, FisherRao };

/// Mass tolerance for inputs of the sphere metric.
inline constexpr double kSphereTol = 1e-8;
/// Fisher-Rao geodesics are refused at or beyond this distance.
inline constexpr double kAntipodalCutoff = std::numbers::pi - 1e-6;

/// Time-indexed slices on a shared support, with optional per-atom potentials
/// U satisfying dG/dt = (G U)^Sym.
struct MeasurePath {
    std::vector<double> times;
    std::vector<MatrixMeasure> slices;
    std::optional<std::vector<std::vector<HermitianMatrix>>> velocities;
    bool spherical = false;
    /// max_k ||(G_{k+1} - G_k) / dt - (G_k U_k)^Sym||_TV; NaN without velocities.
    double ode_residual = std::numeric_limits<double>::quiet_NaN();

    std::size_t size() const noexcept { return slices.size(); }
};

/// Forward-difference residual of the continuity equation along `path`.
inline double continuity_residual(const MeasurePath& path) {
    if (!path.velocities || path.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        const double dt = path.times[k + 1] - path.times[k];
        double r = 0.0;
        for (std::size_t i = 0; i < path.slices[k].size(); ++i) {
            const Matrix lhs = (path.slices[k + 1][i] - path.slices[k][i]) / dt;
            r += frobenius_norm(lhs - sym_product(path.slices[k][i], (*path.velocities)[k][i]));
        }
        worst = std::max(worst, r);
    }
    return worst;
}

/// 4 sum_i d_B^2(G0_i, G1_i).
inline double hellinger_distance_sq(const MatrixMeasure& g0, const MatrixMeasure& g1) {
    g0.require_compatible(g1, "hellinger_distance_sq");
    double s = 0.0;
    for (std::size_t i = 0; i < g0.size(); ++i) s += bures_distance_sq(g0[i], g1[i]);
    return 4.0 * s;
}

inline double hellinger_distance(const MatrixMeasure& g0, const MatrixMeasure& g1) {
    return std::sqrt(hellinger_distance_sq(g0, g1));
}

/// Inverts the cone law for two unit-mass points: 2 arccos(1 - d_H^2 / 8),
/// evaluated as 4 arcsin(d_H / 4), which stays accurate near zero.
inline double fisher_rao_from_hellinger_sq(double dh2) {
    return 4.0 * std::asin(std::sqrt(std::clamp(dh2, 0.0, 8.0)) / 4.0);
}

inline double fisher_rao_distance(const MatrixMeasure& g0, const MatrixMeasure& g1) {
    require_probability(g0, "fisher_rao_distance", kSphereTol);
    require_probability(g1, "fisher_rao_distance", kSphereTol);
    return fisher_rao_from_hellinger_sq(hellinger_distance_sq(g0, g1));
}

inline double distance(const MatrixMeasure& g0, const MatrixMeasure& g1, Metric metric) {
    return metric == Metric::Hellinger ? hellinger_distance(g0, g1) : fisher_rao_distance(g0, g1);
}

struct ConeScalingCheck {
    double lhs;  // d_H^2(r0^2 g0, r1^2 g1)
    double rhs;  // r0 r1 d_H^2(g0, g1) + 4 (r1 - r0)^2
};

inline ConeScalingCheck cone_scaling_check(const MatrixMeasure& g0, const MatrixMeasure& g1, double r0, double r1) {
    require_probability(g0, "cone_scaling_check", kSphereTol);
    require_probability(g1, "cone_scaling_check", kSphereTol);
    if (!(r0 >= 0.0) || !(r1 >= 0.0)) throw Error(Errc::InvalidArgument, "cone_scaling_check: radii must be nonnegative");
    const double lhs = hellinger_distance_sq(g0.scaled(r0 * r0), g1.scaled(r1 * r1));
    const double rhs = r0 * r1 * hellinger_distance_sq(g0, g1) + 4.0 * (r1 - r0) * (r1 - r0);
    return {lhs, rhs};
}

/// Atomwise Bures geodesic maps; evaluates slices, their time derivatives and
/// potentials of the Hellinger geodesic at arbitrary times.
class HellingerGeodesicMap {
public:
    HellingerGeodesicMap(const MatrixMeasure& g0, const MatrixMeasure& g1) : g0_(g0) {
        g0.require_compatible(g1, "hellinger_geodesic");
        g0.require_psd("hellinger_geodesic");
        g1.require_psd("hellinger_geodesic");
        maps_.reserve(g0.size());
        for (std::size_t i = 0; i < g0.size(); ++i) maps_.emplace_back(g0[i], g1[i]);
    }

    MatrixMeasure at(double t) const {
        MatrixMeasure out = g0_;
        for (std::size_t i = 0; i < maps_.size(); ++i) out[i] = maps_[i].at(t);
        return out;
    }

    MatrixMeasure derivative(double t) const {
        MatrixMeasure out = g0_;
        for (std::size_t i = 0; i < maps_.size(); ++i) out[i] = maps_[i].derivative(t);
        return out;
    }

    /// Potentials at t; nullopt if some nonzero atom is singular there.
    std::optional<std::vector<HermitianMatrix>> velocity(double t) const {
        std::vector<HermitianMatrix> u;
        u.reserve(maps_.size());
        for (const auto& m : maps_) {
            const HermitianMatrix a = m.at(t);
            if (a.norm() == 0.0) {
                u.push_back(Matrix::Zero(a.rows(), a.cols()));
                continue;
            }
            auto v = m.velocity(t);
            if (!v) return std::nullopt;
            u.push_back(std::move(*v));
        }
        return u;
    }

private:
    MatrixMeasure g0_;
    std::vector<BuresGeodesicMap> maps_;
};

namespace detail {

inline void finish_path(MeasurePath& path, std::vector<std::optional<std::vector<HermitianMatrix>>>& us) {
    if (std::all_of(us.begin(), us.end(), [](const auto& u) { return u.has_value(); })) {
        std::vector<std::vector<HermitianMatrix>> v;
        v.reserve(us.size());
        for (auto& u : us) v.push_back(std::move(*u));
        path.velocities = std::move(v);
        path.ode_residual = continuity_residual(path);
    }
}

}  // namespace detail

/// Fiberwise Bures geodesic; d_H(G_s, G_t) = |t - s| d_H(G_0, G_1).
inline MeasurePath hellinger_geodesic(const MatrixMeasure& g0, const MatrixMeasure& g1, const std::vector<double>& ts) {
    const HellingerGeodesicMap map(g0, g1);
    MeasurePath path;
    path.times = ts;
    std::vector<std::optional<std::vector<HermitianMatrix>>> us;
    for (double t : ts) {
        path.slices.push_back(map.at(t));
        us.push_back(map.velocity(t));
    }
    detail::finish_path(path, us);
    return path;
}

/// Unit-mass geodesic between g0 and g1, evaluated at arbitrary times.
///
/// The Hellinger chord point at tau(s) = sin(s a) / (sin(s a) + sin((1-s) a)),
/// a = d_FR / 2, projects radially onto the sphere point at angle s a, so
/// normalizing that chord point gives the constant-speed sphere geodesic with
/// no numerical reparametrization.
class FisherRaoGeodesicMap {
public:
    FisherRaoGeodesicMap(const MatrixMeasure& g0, const MatrixMeasure& g1) : chord_(g0, g1), g0_(g0), g1_(g1) {
        distance_ = fisher_rao_distance(g0, g1);
        if (distance_ >= kAntipodalCutoff)
            throw Error(Errc::Antipodal, "fisher_rao_geodesic: endpoints are antipodal, the chord meets the apex");
        half_ = 0.5 * distance_;
    }

    double length() const noexcept { return distance_; }

    MatrixMeasure at(double s) const {
        if (s == 0.0 || half_ == 0.0) return g0_;
        if (s == 1.0) return g1_;
        const MatrixMeasure h = chord_.at(chord_time(s));
        return h.scaled(1.0 / mass(h));
    }

    /// Potentials of the unit-mass path at s, or nullopt at singular atoms.
    std::optional<std::vector<HermitianMatrix>> velocity(double s) const {
        const Eigen::Index d = g0_.dim();
        if (half_ == 0.0) return std::vector<HermitianMatrix>(g0_.size(), Matrix::Zero(d, d));
        const double tau = chord_time(s);
        auto u = chord_.velocity(tau);
        if (!u) return std::nullopt;
        const double m = mass(chord_.at(tau));
        const double mdot = mass(chord_.derivative(tau));
        const double rate = chord_rate(s);
        for (auto& ui : *u) ui = rate * (ui - (mdot / m) * Matrix::Identity(d, d));
        return u;
    }

private:
    double chord_time(double s) const {
        const double a = std::sin(s * half_), b = std::sin((1.0 - s) * half_);
        return a / (a + b);
    }

    double chord_rate(double s) const {
        const double a = std::sin(s * half_), b = std::sin((1.0 - s) * half_);
        const double da = half_ * std::cos(s * half_), db = -half_ * std::cos((1.0 - s) * half_);
        return (da * b - a * db) / ((a + b) * (a + b));
    }

    HellingerGeodesicMap chord_;
    MatrixMeasure g0_;
    MatrixMeasure g1_;
    double distance_ = 0.0;
    double half_ = 0.0;
};

inline MeasurePath fisher_rao_geodesic(const MatrixMeasure& g0, const MatrixMeasure& g1, const std::vector<double>& ts) {
    const FisherRaoGeodesicMap map(g0, g1);
    MeasurePath path;
    path.times = ts;
    path.spherical = true;
    std::vector<std::optional<std::vector<HermitianMatrix>>> us;
    for (double t : ts) {
        path.slices.push_back(map.at(t));
        us.push_back(map.velocity(t));
    }
    detail::finish_path(path, us);
    return path;
}

/// Uniform grid of n + 1 times on [0, 1].
inline std::vector<double> uniform_times(int n) {
    std::vector<double> ts(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) ts[k] = static_cast<double>(k) / n;
    ts.back() = 1.0;
    return ts;
}

/// Resamples `path` by arc length on a uniform grid with the same number of
/// slices, interpolating along geodesics of `metric` between neighbours.
/// Velocities are dropped.
inline MeasurePath constant_speed_reparametrize(const MeasurePath& path, Metric metric) {
    if (path.size() <= 2) return path;
    const std::size_t n = path.size() - 1;
    std::vector<double> seg(n), cum(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        seg[k] = distance(path.slices[k], path.slices[k + 1], metric);
        cum[k + 1] = cum[k] + seg[k];
    }
    const double total = cum[n];
    if (!(total > 1e-14)) throw Error(Errc::ZeroLength, "constant_speed_reparametrize: path has zero length");

    MeasurePath out;
    out.spherical = path.spherical;
    const double t0 = path.times.front(), t1 = path.times.back();
    std::size_t k = 0;
    for (std::size_t j = 0; j <= n; ++j) {
        out.times.push_back(j == n ? t1 : t0 + (t1 - t0) * static_cast<double>(j) / n);
        if (j == 0 || j == n) {
            out.slices.push_back(path.slices[j]);
            continue;
        }
        const double target = total * static_cast<double>(j) / n;
        while (k + 1 < n && cum[k + 1] < target) ++k;
        const double f = seg[k] > 0.0 ? std::clamp((target - cum[k]) / seg[k], 0.0, 1.0) : 0.0;
        const auto& a = path.slices[k];
        const auto& b = path.slices[k + 1];
        out.slices.push_back(metric == Metric::Hellinger ? HellingerGeodesicMap(a, b).at(f)
                                                         : FisherRaoGeodesicMap(a, b).at(f));
    }
    return out;
}

struct MetricSpeed {
    /// d(G_{k-1}, G_{k+1}) / (t_{k+1} - t_{k-1}), one-sided at the ends.
    std::vector<double> finite_difference;
    /// Norm of the attached potentials, when present.
    std::optional<std::vector<double>> from_velocity;
};

inline MetricSpeed metric_speed(const MeasurePath& path, Metric metric) {
    if (path.size() < 2) throw Error(Errc::InvalidArgument, "metric_speed: need at least two slices");
    const std::size_t n = path.size() - 1;
    MetricSpeed out;
    for (std::size_t k = 0; k <= n; ++k) {
        const std::size_t lo = k == 0 ? 0 : k - 1;
        const std::size_t hi = k == n ? n : k + 1;
        out.finite_difference.push_back(distance(path.slices[lo], path.slices[hi], metric) /
                                        (path.times[hi] - path.times[lo]));
    }
    if (path.velocities) {
        std::vector<double> v;
        for (std::size_t k = 0; k <= n; ++k) {
            double energy = 0.0, rate = 0.0;
            for (std::size_t i = 0; i < path.slices[k].size(); ++i) {
                const auto& g = path.slices[k][i];
                const auto& u = (*path.velocities)[k][i];
                energy += frobenius_inner(g * u, u);
                rate += frobenius_inner(g, u);
            }
            if (metric == Metric::FisherRao) energy -= rate * rate;
            v.push_back(std::sqrt(std::max(0.0, energy)));
        }
        out.from_velocity = std::move(v);
    }
    return out;
}

struct TvComparison {
    double lower;  // d_H^2 / (4 sqrt(d))
    double mid;    // ||G1 - G0||_TV
    double upper;  // sqrt(m0 + m1) d_H
};

inline TvComparison tv_comparison_check(const MatrixMeasure& g0, const MatrixMeasure& g1) {
    const double dh2 = hellinger_distance_sq(g0, g1);
    return {dh2 / (4.0 * std::sqrt(static_cast<double>(g0.dim()))), tv_distance(g0, g1),
            std::sqrt(std::max(0.0, mass(g0) + mass(g1))) * std::sqrt(dh2)};
}

}  // namespace mvfr
