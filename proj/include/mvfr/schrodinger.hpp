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
 * Dynamical Schrodinger problem on the unit-mass sphere,
 *
 *   S_eps(G0, G1) = min 1/2 int |dG/dt|^2_FR dt + eps^2 / 2 int F(G_t) dt,
 *
 * discretized on a uniform grid of N + 1 slices with the kinetic term
 * (N / 2) sum_k d_FR^2(G_k, G_{k+1}) and a trapezoid rule for F. Also hosts
 * the heat-flow recovery sequence and the experiment drivers built on it.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "mvfr/bures.hpp"
#include "mvfr/dynamical_bures.hpp"
#include "mvfr/entropy_flow.hpp"
#include "mvfr/error.hpp"
#include "mvfr/fisher_rao.hpp"
#include "mvfr/lbfgs.hpp"
#include "mvfr/measure.hpp"

namespace mvfr {

struct SchrodingerConfig {
    double epsilon = 0.1;
    int n_steps = 32;
    int max_iters = 5000;
    /// Relative objective decrease over 10 iterations that counts as converged.
    double objective_tol = 1e-9;
    double step_init = 1.0;
    double step_shrink = 0.5;

    void validate() const {
        if (!(epsilon > 0.0)) throw Error(Errc::InvalidArgument, "epsilon must be positive");
        if (n_steps < 8) throw Error(Errc::InvalidArgument, "n_steps must be >= 8");
        if (max_iters < 1) throw Error(Errc::InvalidArgument, "max_iters must be positive");
    }
};

struct ObjectiveParts {
    double kinetic = 0.0;
    double fisher_term = 0.0;
    double total() const { return kinetic + fisher_term; }
};

struct BridgeResult {
    MeasurePath path;
    double kinetic = 0.0;
    double fisher_term = 0.0;
    double objective = 0.0;
    bool converged = false;
    int iterations = 0;
    /// Objective of the starting path.
    double initial_objective = 0.0;
    /// Objective after each accepted step, starting with the initial path.
    std::vector<double> history;
};

/// Kinetic and Fisher parts of the discrete action of a unit-mass path on a
/// uniform grid. Singular interior densities make the Fisher part +infinity.
inline ObjectiveParts discrete_objective(const MeasurePath& path, const ReferenceMeasure& lam, double epsilon) {
    if (path.size() < 2) throw Error(Errc::InvalidArgument, "discrete_objective: need at least two slices");
    const std::size_t n = path.size() - 1;
    ObjectiveParts out;
    for (std::size_t k = 0; k < n; ++k) {
        const double d = fisher_rao_distance(path.slices[k], path.slices[k + 1]);
        out.kinetic += d * d;
    }
    out.kinetic *= 0.5 * static_cast<double>(n);
    double integral = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        const double f = fisher_information(path.slices[k], lam);
        integral += (k == 0 || k == n) ? 0.5 * f : f;
    }
    out.fisher_term = epsilon == 0.0 ? 0.0 : 0.5 * epsilon * epsilon * integral / static_cast<double>(n);
    return out;
}

/// Slicewise heat flow for time eps min(t, 1 - t); endpoints are untouched.
inline MeasurePath recovery_sequence(const MeasurePath& path, const ReferenceMeasure& lam, double epsilon) {
    if (path.size() < 2) throw Error(Errc::InvalidArgument, "recovery_sequence: need at least two slices");
    if (!(epsilon >= 0.0)) throw Error(Errc::InvalidArgument, "recovery_sequence: epsilon must be nonnegative");
    if (!std::isfinite(entropy(path.slices.front(), lam)) || !std::isfinite(entropy(path.slices.back(), lam)))
        throw Error(Errc::InfiniteEndpointEntropy, "recovery_sequence: an endpoint has infinite entropy");
    MeasurePath out;
    out.times = path.times;
    out.spherical = path.spherical;
    for (std::size_t k = 0; k < path.size(); ++k) {
        const double h = epsilon * std::min(path.times[k], 1.0 - path.times[k]);
        out.slices.push_back(h > 0.0 ? heat_flow(path.slices[k], lam, h) : path.slices[k]);
    }
    return out;
}

namespace detail {

/// d/ds of (2 arccos(1 - s / 8))^2.
inline double fisher_rao_sq_slope(double s) {
    if (s < 1e-6) return 1.0 + s / 24.0;
    const double c = 1.0 - s / 8.0;
    const double x = 2.0 * std::acos(std::clamp(c, -1.0, 1.0));
    return x / (2.0 * std::sqrt(std::max(0.0, 1.0 - c * c)));
}

/// Objective of the factor parametrization G_{k,i} = C C^* / sum_j |C_j|^2 of
/// the interior slices, with its analytic gradient.
class BridgeObjective {
public:
    BridgeObjective(const MatrixMeasure& g0, const MatrixMeasure& g1, const ReferenceMeasure& lam, double epsilon, int n)
        : g0_(g0), g1_(g1), lam_(lam), epsilon_(epsilon), n_(n), atoms_(g0.size()), d_(g0.dim()) {}

    Eigen::Index block() const { return 2 * d_ * d_; }
    Eigen::Index parameters() const { return static_cast<Eigen::Index>(n_ - 1) * atoms_ * block(); }

    Eigen::VectorXd pack(const MeasurePath& path) const {
        Eigen::VectorXd x(parameters());
        for (int k = 1; k < n_; ++k)
            for (std::size_t i = 0; i < atoms_; ++i)
                pack_factor(psd_sqrt(path.slices[k][i]), x, offset(k, i));
        return x;
    }

    MatrixMeasure slice(const Eigen::VectorXd& x, int k) const {
        if (k == 0) return g0_;
        if (k == n_) return g1_;
        MatrixMeasure g = g0_;
        double total = 0.0;
        for (std::size_t i = 0; i < atoms_; ++i) {
            const Matrix c = unpack_factor(x, offset(k, i), d_);
            g[i] = hermitian_part(c * c.adjoint());
            total += c.squaredNorm();
        }
        for (auto& a : g.atoms()) a /= total;
        return g;
    }

    MeasurePath path(const Eigen::VectorXd& x) const {
        MeasurePath p;
        p.times = uniform_times(n_);
        p.spherical = true;
        for (int k = 0; k <= n_; ++k) p.slices.push_back(slice(x, k));
        return p;
    }

    double operator()(const Eigen::VectorXd& x, Eigen::VectorXd* grad) const {
        std::vector<MatrixMeasure> g;
        g.reserve(n_ + 1);
        for (int k = 0; k <= n_; ++k) g.push_back(slice(x, k));

        // Interior densities must be nonsingular wherever the reference weight is positive.
        std::vector<std::vector<SqrtFactors>> roots(n_ + 1);
        for (int k = 1; k < n_; ++k) {
            roots[k].reserve(atoms_);
            for (std::size_t i = 0; i < atoms_; ++i) {
                roots[k].emplace_back(g[k][i]);
                if (lam_[i] > 0.0 && roots[k][i].eig.min() <= kLogdetFloor * lam_[i]) return kInfinity;
            }
        }
        std::vector<std::vector<Matrix>> gam(n_ + 1, std::vector<Matrix>(atoms_, Matrix::Zero(d_, d_)));

        const double half_n = 0.5 * n_;
        double kinetic = 0.0;
        for (int k = 0; k < n_; ++k) {
            double s = 0.0;
            std::vector<Matrix> left(atoms_), right(atoms_);
            for (std::size_t i = 0; i < atoms_; ++i) {
                if (k > 0) {
                    auto vg = bures_value_and_gradient(roots[k][i], g[k + 1][i]);
                    s += vg.value;
                    left[i] = std::move(vg.grad);
                    if (k + 1 < n_) right[i] = bures_value_and_gradient(roots[k + 1][i], g[k][i]).grad;
                } else {
                    auto vg = bures_value_and_gradient(roots[k + 1][i], g[k][i]);
                    s += vg.value;
                    right[i] = std::move(vg.grad);
                }
            }
            s *= 4.0;
            if (s >= 8.0 - 1e-9) return kInfinity;
            const double dfr = fisher_rao_from_hellinger_sq(s);
            kinetic += dfr * dfr;
            if (grad) {
                const double w = half_n * fisher_rao_sq_slope(s) * 4.0;
                for (std::size_t i = 0; i < atoms_; ++i) {
                    if (k > 0) gam[k][i] += w * left[i];
                    if (k + 1 < n_) gam[k + 1][i] += w * right[i];
                }
            }
        }
        kinetic *= half_n;

        double fisher = 0.0;
        const double weight = 0.5 * epsilon_ * epsilon_ / n_;
        for (int k = 0; k <= n_; ++k) {
            const double f = fisher_information(g[k], lam_);
            if (!std::isfinite(f)) return kInfinity;
            fisher += (k == 0 || k == n_) ? 0.5 * f : f;
            if (grad && k > 0 && k < n_) {
                for (std::size_t i = 0; i < atoms_; ++i) {
                    if (lam_[i] <= 0.0) continue;
                    const Matrix inv = roots[k][i].eig.apply([](double v) { return 1.0 / (v * v); });
                    gam[k][i] -= weight * lam_[i] * lam_[i] * inv;
                }
            }
        }
        fisher *= weight;

        if (grad) {
            grad->resize(x.size());
            for (int k = 1; k < n_; ++k) {
                double total = 0.0, mu = 0.0;
                std::vector<Matrix> c(atoms_);
                for (std::size_t i = 0; i < atoms_; ++i) {
                    c[i] = unpack_factor(x, offset(k, i), d_);
                    total += c[i].squaredNorm();
                    mu += frobenius_inner(gam[k][i], g[k][i]);
                }
                for (std::size_t i = 0; i < atoms_; ++i) {
                    const Matrix dc = (2.0 / total) * (hermitian_part(gam[k][i]) - mu * Matrix::Identity(d_, d_)) * c[i];
                    pack_factor(dc, *grad, offset(k, i));
                }
            }
        }
        return kinetic + fisher;
    }

private:
    Eigen::Index offset(int k, std::size_t i) const {
        return (static_cast<Eigen::Index>(k - 1) * static_cast<Eigen::Index>(atoms_) + static_cast<Eigen::Index>(i)) *
               block();
    }

    const MatrixMeasure& g0_;
    const MatrixMeasure& g1_;
    const ReferenceMeasure& lam_;
    double epsilon_;
    int n_;
    std::size_t atoms_;
    Eigen::Index d_;
};

inline void require_bridge_endpoints(const MatrixMeasure& g0, const MatrixMeasure& g1, const ReferenceMeasure& lam,
                                     const char* where) {
    g0.require_compatible(g1, where);
    lam.require_compatible(g0, where);
    g0.require_psd(where);
    g1.require_psd(where);
    require_probability(g0, where, kSphereTol);
    require_probability(g1, where, kSphereTol);
    if (!std::isfinite(entropy(g0, lam)) || !std::isfinite(entropy(g1, lam)))
        throw Error(Errc::InfiniteEndpointEntropy, std::string(where) + ": an endpoint has infinite entropy");
}

}  // namespace detail

/// Minimizes the discrete action over the interior slices with L-BFGS.
///
/// The default start is the recovery sequence of the Fisher-Rao geodesic;
/// `warm_start`, if given and of matching size, is used instead when its
/// action is lower. The result never has a larger action than the start.
inline BridgeResult solve_bridge(const MatrixMeasure& g0, const MatrixMeasure& g1, const ReferenceMeasure& lam,
                                 const SchrodingerConfig& cfg, const MeasurePath* warm_start = nullptr) {
    cfg.validate();
    detail::require_bridge_endpoints(g0, g1, lam, "solve_bridge");
    const auto ts = uniform_times(cfg.n_steps);
    const MeasurePath init = recovery_sequence(fisher_rao_geodesic(g0, g1, ts), lam, cfg.epsilon);

    const detail::BridgeObjective objective(g0, g1, lam, cfg.epsilon, cfg.n_steps);
    Eigen::VectorXd x0 = objective.pack(init);
    double f0 = objective(x0, nullptr);
    if (warm_start && warm_start->size() == ts.size()) {
        const Eigen::VectorXd xw = objective.pack(*warm_start);
        const double fw = objective(xw, nullptr);
        if (fw < f0) {
            x0 = xw;
            f0 = fw;
        }
    }

    DescentOptions opt;
    opt.max_iters = cfg.max_iters;
    opt.objective_tol = cfg.objective_tol;
    opt.step_init = cfg.step_init;
    opt.step_shrink = cfg.step_shrink;
    const auto res = minimize_lbfgs([&](const Eigen::VectorXd& x, Eigen::VectorXd* g) { return objective(x, g); }, x0, opt);

    BridgeResult out;
    out.path = objective.path(res.x);
    // Interior endpoints of the path are the inputs themselves.
    const auto parts = discrete_objective(out.path, lam, cfg.epsilon);
    out.kinetic = parts.kinetic;
    out.fisher_term = parts.fisher_term;
    out.objective = out.kinetic + out.fisher_term;
    out.converged = res.converged;
    out.iterations = res.iterations;
    out.initial_objective = f0;
    out.history = res.history;
    return out;
}

struct SweepRow {
    double epsilon = 0.0;
    double objective = 0.0;
    double kinetic = 0.0;
    double fisher_term = 0.0;
    double dfr_sq = 0.0;
    /// max_k ||bridge_k - geodesic_k||_TV.
    double tv_gap = 0.0;
    bool converged = false;
    int iterations = 0;
    /// Empty unless the row failed.
    std::string error;

    double objective_x2() const { return 2.0 * objective; }
};

/// solve_bridge for each epsilon in order. With jobs == 1 each row starts
/// from the previous row's path; with more jobs rows run cold in parallel.
/// Rows are returned in input order either way.
inline std::vector<SweepRow> gamma_sweep(const MatrixMeasure& g0, const MatrixMeasure& g1, const ReferenceMeasure& lam,
                                         const std::vector<double>& epsilons, const SchrodingerConfig& cfg,
                                         int jobs = 1) {
    detail::require_bridge_endpoints(g0, g1, lam, "gamma_sweep");
    const auto ts = uniform_times(cfg.n_steps);
    const MeasurePath geodesic = fisher_rao_geodesic(g0, g1, ts);
    const double dfr = fisher_rao_distance(g0, g1);

    auto run = [&](double eps, const MeasurePath* warm, MeasurePath* out_path) {
        SweepRow row;
        row.epsilon = eps;
        row.dfr_sq = dfr * dfr;
        try {
            SchrodingerConfig c = cfg;
            c.epsilon = eps;
            const BridgeResult r = solve_bridge(g0, g1, lam, c, warm);
            row.objective = r.objective;
            row.kinetic = r.kinetic;
            row.fisher_term = r.fisher_term;
            row.converged = r.converged;
            row.iterations = r.iterations;
            for (std::size_t k = 0; k < ts.size(); ++k)
                row.tv_gap = std::max(row.tv_gap, tv_distance(r.path.slices[k], geodesic.slices[k]));
            if (out_path) *out_path = r.path;
        } catch (const Error& e) {
            row.error = e.what();
        }
        return row;
    };

    std::vector<SweepRow> rows(epsilons.size());
    if (jobs <= 1) {
        MeasurePath prev;
        bool have_prev = false;
        for (std::size_t j = 0; j < epsilons.size(); ++j) {
            MeasurePath next;
            rows[j] = run(epsilons[j], have_prev ? &prev : nullptr, &next);
            if (rows[j].error.empty()) {
                prev = std::move(next);
                have_prev = true;
            }
        }
        return rows;
    }
    std::size_t next = 0;
    while (next < epsilons.size()) {
        std::vector<std::future<SweepRow>> batch;
        const std::size_t first = next;
        for (; next < epsilons.size() && next - first < static_cast<std::size_t>(jobs); ++next)
            batch.push_back(std::async(std::launch::async, run, epsilons[next], nullptr, nullptr));
        for (std::size_t j = 0; j < batch.size(); ++j) rows[first + j] = batch[j].get();
    }
    return rows;
}

struct ConvexityRow {
    double theta = 0.0;
    double lhs = 0.0;  // E(G_theta)
    double rhs = 0.0;  // (1 - theta) E0 + theta E1 - theta (1 - theta) d_FR^2 / 4
    double slack() const { return rhs - lhs; }
};

/// Entropy along the Fisher-Rao geodesic against the 1/2-convexity bound.
inline std::vector<ConvexityRow> convexity_experiment(const MatrixMeasure& g0, const MatrixMeasure& g1,
                                                      const ReferenceMeasure& lam, const std::vector<double>& thetas) {
    detail::require_bridge_endpoints(g0, g1, lam, "convexity_experiment");
    const FisherRaoGeodesicMap geodesic(g0, g1);
    const double e0 = entropy(g0, lam), e1 = entropy(g1, lam);
    const double dfr = geodesic.length();
    std::vector<ConvexityRow> rows;
    for (double th : thetas) {
        if (!(th >= 0.0 && th <= 1.0)) throw Error(Errc::InvalidArgument, "convexity_experiment: theta outside [0, 1]");
        rows.push_back({th, entropy(geodesic.at(th), lam),
                        (1.0 - th) * e0 + th * e1 - 0.25 * th * (1.0 - th) * dfr * dfr});
    }
    return rows;
}

}  // namespace mvfr
