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
 * Seeded invariant checks shared by the acceptance suite and the CLI
 * selftest. Each check draws its own instances from the given generator and
 * reports the worst observed margin next to its tolerance.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mvfr/mvfr.hpp"

namespace mvfr::checks {

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string detail;
};

namespace detail {

/// Records the worst value of a quantity that must stay at or below `limit`.
class Bound {
public:
    Bound(std::string label, double limit) : label_(std::move(label)), limit_(limit) {}
    void observe(double v) {
        if (std::isnan(v)) nan_ = true;
        worst_ = std::max(worst_, v);
    }
    bool ok() const { return !nan_ && worst_ <= limit_; }
    std::string str() const {
        std::ostringstream os;
        os.precision(3);
        os << label_ << " worst " << (nan_ ? std::string("nan") : fmt(worst_)) << " (limit " << limit_ << ")";
        return os.str();
    }

private:
    static std::string fmt(double v) {
        std::ostringstream os;
        os.precision(3);
        os << v;
        return os.str();
    }
    std::string label_;
    double limit_;
    double worst_ = -std::numeric_limits<double>::infinity();
    bool nan_ = false;
};

inline CheckResult combine(std::string name, const std::vector<Bound>& bounds, const std::vector<std::string>& extra = {}) {
    CheckResult r{std::move(name), true, {}};
    for (const auto& b : bounds) {
        r.passed = r.passed && b.ok();
        r.detail += (r.detail.empty() ? "" : "; ") + b.str();
    }
    for (const auto& e : extra) r.detail += (r.detail.empty() ? "" : "; ") + e;
    return r;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline MatrixMeasure random_measure(Random& rng, std::size_t n, int d) { return rng.measure(n, d); }

/// Unit-mass pair at Fisher-Rao distance below pi - 1e-3.
inline std::pair<MatrixMeasure, MatrixMeasure> sphere_pair(Random& rng, std::size_t n, int d, bool dense) {
    for (;;) {
        auto a = dense ? rng.dense_probability(n, d) : rng.probability(n, d);
        auto b = dense ? rng.dense_probability(n, d) : rng.probability(n, d);
        if (fisher_rao_distance(a, b) < std::numbers::pi - 1e-3) return {std::move(a), std::move(b)};
    }
}

}  // namespace detail

using detail::Bound;

// ---------------------------------------------------------------- hpsd_core

inline CheckResult hpsd_invariants(Random& rng, int count) {
    Bound sqrt_err("sqrt^2 rel err", 1e-9), embed_sign("embedding PSD disagreements", 0.0),
        logdet_err("logdet additivity", 1e-9), sylv("sylvester round trip rel", 1e-9),
        frob_sym("frobenius symmetry", 1e-12);
    for (int k = 0; k < count; ++k) {
        const int d = 1 + k % 4;
        const HermitianMatrix a = rng.psd(d, rng.integer(1, d));
        const Matrix s = psd_sqrt(a);
        sqrt_err.observe((s * s - a).norm() / std::max(a.norm(), 1e-300));

        const HermitianMatrix h = rng.hermitian(d);
        const bool psd_c = eigh(h).min() >= 0.0;
        const bool psd_r = eigh(real_embedding(h)).min() >= -1e-12 * std::max(1.0, h.norm());
        embed_sign.observe(psd_c == psd_r ? 0.0 : 1.0);

        const Matrix u = rng.unitary(d);
        Eigen::VectorXd x(d), y(d);
        for (int j = 0; j < d; ++j) x(j) = rng.uniform(0.1, 3.0), y(j) = rng.uniform(0.1, 3.0);
        const Matrix p = u * x.cast<Complex>().asDiagonal() * u.adjoint();
        const Matrix q = u * y.cast<Complex>().asDiagonal() * u.adjoint();
        logdet_err.observe(std::abs(logdet(hermitian_part(p * q)) - logdet(hermitian_part(p)) - logdet(hermitian_part(q))));

        const HermitianMatrix g = rng.spd(d, 0.1, 3.0);
        const HermitianMatrix v = rng.hermitian(d);
        sylv.observe((solve_sylvester_velocity(g, sym_product(g, v)) - v).norm() / std::max(v.norm(), 1e-300));
        frob_sym.observe(std::abs(frobenius_inner(g, v) - frobenius_inner(v, g)));
    }
    return detail::combine("hpsd_core invariants", {sqrt_err, embed_sign, logdet_err, sylv, frob_sym});
}

// ----------------------------------------------------------- matrix_measure

inline CheckResult measure_invariants(Random& rng, int count) {
    Bound tri("tv triangle violation", 1e-10), split("lebesgue split error", 0.0), sphere("sphere round trip", 1e-12);
    for (int k = 0; k < count; ++k) {
        const std::size_t n = rng.integer(1, 6);
        const int d = rng.integer(1, 4);
        const auto a = rng.measure(n, d), b = rng.measure(n, d), c = rng.measure(n, d);
        tri.observe(tv_distance(a, c) - tv_distance(a, b) - tv_distance(b, c));

        std::vector<double> w(n);
        double total = 0.0;
        for (auto& x : w) total += (x = rng.uniform() < 0.3 ? 0.0 : rng.uniform(0.1, 1.0));
        if (total == 0.0) total += (w[0] = 1.0);
        for (auto& x : w) x /= total * d;
        // Rounding can leave d * sum(w) a few ulps from 1; fold it into one weight.
        double s = 0.0;
        for (double x : w) s += x;
        const auto imax = std::max_element(w.begin(), w.end()) - w.begin();
        w[imax] += (1.0 / d - s);
        const ReferenceMeasure lam(Support::numbered(n), d, w);
        const auto parts = lebesgue_split(a, lam);
        double e = tv_distance(parts.absolutely_continuous + parts.singular, a);
        for (std::size_t i = 0; i < n; ++i)
            e += lam[i] > 0.0 ? parts.singular[i].norm() : parts.absolutely_continuous[i].norm();
        split.observe(e);

        if (mass(a) > 1e-14) {
            const auto sp = normalize_to_sphere(a);
            sphere.observe(tv_distance(sp.direction.scaled(sp.radius * sp.radius), a) / std::max(1.0, tv_norm(a)));
        }
    }
    return detail::combine("matrix_measure invariants", {tri, split, sphere});
}

// -------------------------------------------------------------------- bures

/// Symmetric orderings agree and commuting pairs match |sqrt A1 - sqrt A0|^2.
inline CheckResult bures_closed_form(Random& rng, int pairs) {
    Bound sym("ordering asymmetry", 1e-9), comm("commuting-case error", 1e-9), tri("triangle violation", 1e-9),
        ps("Powers-Stormer violation", 1e-9);
    for (int k = 0; k < pairs; ++k) {
        const int d = 1 + k % 4;
        const auto a = rng.psd(d, rng.integer(1, d)), b = rng.psd(d, rng.integer(1, d)), c = rng.psd(d);
        sym.observe(std::abs(bures_distance_sq_ordered(a, b) - bures_distance_sq_ordered(b, a)));
        tri.observe(std::sqrt(bures_distance_sq(a, c)) - std::sqrt(bures_distance_sq(a, b)) -
                    std::sqrt(bures_distance_sq(b, c)));
        const double sq = (psd_sqrt(b) - psd_sqrt(a)).squaredNorm();
        const auto ev = eigh(b - a).eigenvalues;
        ps.observe(bures_distance_sq(a, b) - sq);
        ps.observe(sq - ev.cwiseAbs().sum());

        const Matrix u = rng.unitary(d);
        Eigen::VectorXd x(d), y(d);
        for (int j = 0; j < d; ++j) x(j) = rng.uniform() < 0.2 ? 0.0 : rng.uniform(0.0, 3.0), y(j) = rng.uniform(0.0, 3.0);
        const HermitianMatrix p = hermitian_part(u * x.cast<Complex>().asDiagonal() * u.adjoint());
        const HermitianMatrix q = hermitian_part(u * y.cast<Complex>().asDiagonal() * u.adjoint());
        double expected = 0.0;
        for (int j = 0; j < d; ++j) expected += std::pow(std::sqrt(y(j)) - std::sqrt(x(j)), 2);
        comm.observe(std::abs(bures_distance_sq(p, q) - expected));
    }
    return detail::combine("bures closed form", {sym, comm, tri, ps});
}

inline CheckResult real_embedding_identity(Random& rng, int pairs) {
    Bound err("|lhs - rhs|", 1e-9);
    for (int k = 0; k < pairs; ++k) {
        const int d = 1 + k % 4;
        const auto chk = bures_real_embedding_check(rng.psd(d), rng.psd(d, rng.integer(1, d)));
        err.observe(std::abs(chk.lhs - chk.rhs));
    }
    return detail::combine("real embedding identity", {err});
}

/// Dynamical solver at n_steps within 2% of the closed form; the error
/// summed over pairs decreases as the grid doubles.
inline CheckResult dynamical_bures(Random& rng, int pairs, int n_steps = 64) {
    Bound err("rel err at N=" + std::to_string(n_steps), 0.02), unconverged("unconverged solves", 0.0);
    std::vector<int> grid{n_steps / 4, n_steps / 2, n_steps};
    std::vector<double> total(grid.size(), 0.0);
    for (int k = 0; k < pairs; ++k) {
        const int d = 1 + k % 3;
        const auto a0 = rng.spd(d, 0.2, 3.0), a1 = rng.spd(d, 0.2, 3.0);
        const double exact = bures_distance_sq(a0, a1);
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const auto r = dynamical_bures_solver(a0, a1, grid[j]);
            unconverged.observe(r.converged ? 0.0 : 1.0);
            total[j] += std::abs(r.value - exact);
            if (grid[j] == n_steps) err.observe(detail::rel(r.value, exact));
        }
    }
    Bound order("error ratio N/(N/2)", 1.0);
    for (std::size_t j = 1; j < grid.size(); ++j) order.observe(total[j] / std::max(total[j - 1], 1e-300));
    std::ostringstream os;
    os.precision(3);
    os << "summed errors";
    for (std::size_t j = 0; j < grid.size(); ++j) os << " N=" << grid[j] << ":" << total[j];
    return detail::combine("dynamical = static Bures", {err, order, unconverged}, {os.str()});
}

// --------------------------------------------------------------- fisher_rao

inline CheckResult hellinger_identities(Random& rng, int pairs) {
    Bound apex("|d_H^2(G,0) - 4m|", 0.0), upper("d_H^2 - 4(m0+m1)", 1e-9);
    for (int k = 0; k < pairs; ++k) {
        const std::size_t n = rng.integer(1, 6);
        const int d = rng.integer(1, 4);
        const auto a = rng.measure(n, d), b = rng.measure(n, d);
        apex.observe(std::abs(hellinger_distance_sq(a, MatrixMeasure::zero(a.support(), d)) - 4.0 * mass(a)));
        upper.observe(hellinger_distance_sq(a, b) - 4.0 * (mass(a) + mass(b)));
    }
    return detail::combine("hellinger identities", {apex, upper});
}

inline CheckResult cone_scaling(Random& rng, int cases) {
    Bound err("|lhs - rhs| / max(1, rhs)", 1e-8), law("cone law rel err", 1e-8);
    for (int k = 0; k < cases; ++k) {
        const std::size_t n = rng.integer(1, 6);
        const int d = rng.integer(1, 4);
        const auto [a, b] = detail::sphere_pair(rng, n, d, false);
        const double r0 = k % 10 == 0 ? 0.0 : rng.uniform(0.0, 3.0), r1 = rng.uniform(0.0, 3.0);
        const auto chk = cone_scaling_check(a, b, r0, r1);
        err.observe(std::abs(chk.lhs - chk.rhs) / std::max(1.0, chk.rhs));
        const double dfr = fisher_rao_distance(a, b);
        const double cone = 4.0 * (r0 * r0 + r1 * r1 - 2.0 * r0 * r1 * std::cos(0.5 * dfr));
        law.observe(std::abs(chk.lhs - cone) / std::max(1.0, cone));
    }
    return detail::combine("cone scaling", {err, law});
}

inline CheckResult metric_axioms(Random& rng, int triples) {
    Bound tri_h("d_H triangle violation", 1e-8), tri_fr("d_FR triangle violation", 1e-8),
        diam("d_FR - pi", 1e-9), sym("asymmetry", 1e-12), lip("Lipschitz violation", 1e-12),
        ident("d(G, G)", 1e-6);
    for (int k = 0; k < triples; ++k) {
        const std::size_t n = rng.integer(1, 6);
        const int d = rng.integer(1, 4);
        const auto a = rng.probability(n, d), b = rng.probability(n, d), c = rng.probability(n, d);
        const double ab = fisher_rao_distance(a, b), bc = fisher_rao_distance(b, c), ac = fisher_rao_distance(a, c);
        tri_fr.observe(ac - ab - bc);
        tri_h.observe(hellinger_distance(a, c) - hellinger_distance(a, b) - hellinger_distance(b, c));
        diam.observe(std::max({ab, bc, ac}) - std::numbers::pi);
        sym.observe(std::abs(ab - fisher_rao_distance(b, a)));
        sym.observe(std::abs(hellinger_distance(a, b) - hellinger_distance(b, a)));
        const double dh = hellinger_distance(a, b);
        lip.observe(dh - ab);
        lip.observe(ab - 0.5 * std::numbers::pi * dh);
        ident.observe(fisher_rao_distance(a, a));
        ident.observe(hellinger_distance(a, a));
    }
    return detail::combine("metric axioms", {tri_h, tri_fr, diam, sym, lip, ident});
}

inline CheckResult tv_sandwich(Random& rng, int pairs) {
    Bound low("lower - TV", 1e-9), up("TV - upper", 1e-9);
    for (int k = 0; k < pairs; ++k) {
        const std::size_t n = rng.integer(1, 6);
        const int d = rng.integer(1, 4);
        const auto a = rng.measure(n, d);
        const auto b = k % 10 == 0 ? MatrixMeasure::zero(a.support(), d) : rng.measure(n, d);
        const auto chk = tv_comparison_check(a, b);
        low.observe(chk.lower - chk.mid);
        up.observe(chk.mid - chk.upper);
    }
    return detail::combine("TV sandwich", {low, up});
}

/// Midpoint bisection of Fisher-Rao geodesics, the sphere mass bound and the
/// exact mass interpolation along Hellinger geodesics.
inline CheckResult geodesic_structure(Random& rng, int pairs) {
    Bound bisect("midpoint bisection rel err", 1e-5), circ("m_t shortfall below 1 - 2t(1-t)", 1e-9),
        interp("mass interpolation rel err", 1e-6), unit("FR slice mass error", 1e-8),
        speed("constant-speed rel err", 1e-5);
    const std::vector<double> ts{0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0};
    for (int k = 0; k < pairs; ++k) {
        const std::size_t n = rng.integer(1, 5);
        const int d = rng.integer(1, 3);
        const auto [a, b] = detail::sphere_pair(rng, n, d, k % 2 == 0);
        const double dfr = fisher_rao_distance(a, b);
        const FisherRaoGeodesicMap fr(a, b);
        const auto mid = fr.at(0.5);
        // Rounding in d_H^2 puts a ~1e-8 floor under resolvable distances.
        if (dfr > 1e-6) {
            bisect.observe(detail::rel(fisher_rao_distance(a, mid), 0.5 * dfr));
            bisect.observe(detail::rel(fisher_rao_distance(mid, b), 0.5 * dfr));
            speed.observe(detail::rel(fisher_rao_distance(fr.at(0.2), fr.at(0.7)), 0.5 * dfr));
        }
        const double dh2 = hellinger_distance_sq(a, b);
        const auto hp = hellinger_geodesic(a, b, ts);
        for (std::size_t j = 0; j < ts.size(); ++j) {
            const double t = ts[j], m = mass(hp.slices[j]);
            circ.observe(1.0 - 2.0 * t * (1.0 - t) - m);
            unit.observe(std::abs(mass(fr.at(t)) - 1.0));
        }
        // General (unnormalized) endpoints for the interpolation law.
        const auto g0 = rng.measure(n, d), g1 = rng.measure(n, d);
        const double m0 = mass(g0), m1 = mass(g1), h2 = hellinger_distance_sq(g0, g1);
        const auto gp = hellinger_geodesic(g0, g1, ts);
        for (std::size_t j = 0; j < ts.size(); ++j) {
            const double t = ts[j];
            const double expected = (1.0 - t) * m0 + t * m1 - t * (1.0 - t) * h2 / 4.0;
            interp.observe(std::abs(mass(gp.slices[j]) - expected) / std::max({m0, m1, 1e-12}));
        }
        (void)dh2;
    }
    return detail::combine("geodesic structure", {bisect, circ, interp, unit, speed});
}

// ------------------------------------------------------------- entropy_flow

inline CheckResult heat_flow_entropy(Random& rng, int measures) {
    Bound semi("semigroup error", 1e-12), decay("entropy decay violation", 1e-10),
        fiber("fiberwise decay violation", 1e-10), prod("-dE/dt vs F rel err", 1e-3),
        grad("tangent norm vs F", 1e-9), massc("mass drift", 1e-12), nonneg("negative entropy", 1e-12);
    for (int k = 0; k < measures; ++k) {
        const std::size_t n = rng.integer(1, 5);
        const int d = rng.integer(1, 3);
        const auto lam = ReferenceMeasure::uniform(Support::numbered(n), d);
        const auto g = rng.dense_probability(n, d, 0.1, 3.0);
        const double s = rng.uniform(0.0, 1.0), t = s + rng.uniform(0.0, 2.0);

        const auto lhs = heat_flow(heat_flow(g, lam, s), lam, t);
        const auto rhs = heat_flow(g, lam, s + t);
        for (std::size_t i = 0; i < n; ++i) semi.observe(detail::max_abs(lhs[i] - rhs[i]));
        massc.observe(std::abs(mass(rhs) - mass(g)));
        nonneg.observe(-entropy(g, lam));

        const auto chk = entropy_decay_check(g, lam, s, t);
        decay.observe(chk.lhs - chk.rhs);
        for (std::size_t i = 0; i < n; ++i) fiber.observe(chk.atom_lhs[i] - chk.atom_rhs[i]);

        const double dt = 1e-5;
        const auto gs = heat_flow(g, lam, s);
        const double rate = (entropy(gs, lam) - entropy(heat_flow(g, lam, s + dt), lam)) / dt;
        const double f = fisher_information(gs, lam);
        prod.observe(detail::rel(rate, f));

        grad.observe(std::abs(tangent_norm_sq(entropy_gradient_potential(g, lam)) - fisher_information(g, lam)) /
                     std::max(1.0, fisher_information(g, lam)));
    }
    return detail::combine("heat flow and entropy", {semi, massc, nonneg, decay, fiber, prod, grad});
}

// -------------------------------------------------------------- schrodinger

/// Discrete action of the recovery sequence of a geodesic against
/// kinetic(geodesic) + eps (E0 + E1), with a 2% slack on the right side.
inline CheckResult recovery_bound(Random& rng, int geodesics, const std::vector<double>& epsilons, int n_steps = 32) {
    Bound excess("(lhs - rhs) / rhs", 0.02);
    const auto ts = uniform_times(n_steps);
    for (int k = 0; k < geodesics; ++k) {
        const std::size_t n = rng.integer(2, 4);
        const int d = rng.integer(1, 3);
        const auto lam = ReferenceMeasure::uniform(Support::numbered(n), d);
        const auto [a, b] = detail::sphere_pair(rng, n, d, true);
        const auto geo = fisher_rao_geodesic(a, b, ts);
        const double kinetic = discrete_objective(geo, lam, 0.0).kinetic;
        const double e = entropy(a, lam) + entropy(b, lam);
        for (double eps : epsilons) {
            const auto parts = discrete_objective(recovery_sequence(geo, lam, eps), lam, eps);
            const double rhs = kinetic + eps * e;
            excess.observe((parts.total() - rhs) / std::max(rhs, 1e-12));
        }
    }
    return detail::combine("recovery-sequence bound", {excess});
}

/// 2 S_eps approaches d_FR^2 at the last epsilon and the TV gap to the
/// geodesic shrinks across the sweep, up to 5% noise.
inline CheckResult gamma_convergence(Random& rng, int pairs, const std::vector<double>& epsilons, int n_steps = 32,
                                     std::size_t n = 3, int d = 2) {
    Bound limit("|2S - d_FR^2| / d_FR^2 at last eps", 0.05), gap("TV gap growth ratio", 1.05),
        obj("objective growth ratio", 1.01), below("d_FR^2 - 2S", 1e-9), failed("failed rows", 0.0);
    SchrodingerConfig cfg;
    cfg.n_steps = n_steps;
    for (int k = 0; k < pairs; ++k) {
        const auto lam = ReferenceMeasure::uniform(Support::numbered(n), d);
        const auto [a, b] = detail::sphere_pair(rng, n, d, true);
        const auto rows = gamma_sweep(a, b, lam, epsilons, cfg);
        for (std::size_t j = 0; j < rows.size(); ++j) {
            failed.observe(rows[j].error.empty() && rows[j].converged ? 0.0 : 1.0);
            below.observe(rows[j].dfr_sq - rows[j].objective_x2());
            if (j > 0) {
                gap.observe(rows[j].tv_gap / std::max(rows[j - 1].tv_gap, 1e-300));
                obj.observe(rows[j].objective / std::max(rows[j - 1].objective, 1e-300));
            }
        }
        const auto& last = rows.back();
        limit.observe(std::abs(last.objective_x2() - last.dfr_sq) / last.dfr_sq);
    }
    return detail::combine("Gamma-convergence", {limit, gap, obj, below, failed});
}

inline CheckResult convexity(Random& rng, int pairs) {
    Bound viol("lhs - rhs", 1e-6);
    std::vector<double> thetas;
    for (int j = 1; j <= 9; ++j) thetas.push_back(0.1 * j);
    for (int k = 0; k < pairs; ++k) {
        const std::size_t n = rng.integer(1, 5);
        const int d = rng.integer(1, 3);
        const auto lam = ReferenceMeasure::uniform(Support::numbered(n), d);
        const auto [a, b] = detail::sphere_pair(rng, n, d, true);
        for (const auto& row : convexity_experiment(a, b, lam, thetas)) viol.observe(-row.slack());
    }
    return detail::combine("1/2-geodesic convexity", {viol});
}

/// Iteration count at eps = 1, marginals, the scalar closed form and the
/// small-eps approach to the Bures geodesic.
inline CheckResult gaussian_oracle(Random& rng, int pairs, int limit_pairs = 10) {
    Bound iters("iterations at eps=1", 200), marg("marginal error", 1e-9), scalar("scalar closed-form error", 1e-12),
        trend("limit violations (err(0.01) >= err(0.1))", 0.0);
    const std::vector<double> ends{0.0, 1.0};
    for (int k = 0; k < pairs; ++k) {
        const int d = 1 + k % 3;
        const auto a0 = rng.spd(d, 0.2, 3.0, true), a1 = rng.spd(d, 0.2, 3.0, true);
        const auto r = gaussian_bridge_oracle(a0, a1, 1.0, ends);
        iters.observe(r.iterations);
        marg.observe(detail::max_abs(r.covariances[0] - a0) / std::max(1.0, detail::max_abs(a0)));
        marg.observe(detail::max_abs(r.covariances[1] - a1) / std::max(1.0, detail::max_abs(a1)));
        if (k < limit_pairs) {
            const std::vector<double> ts{0.25, 0.5, 0.75};
            const auto bures = bures_geodesic(a0, a1, ts);
            auto err = [&](double eps, int cap) {
                const auto g = gaussian_bridge_oracle(a0, a1, eps, ts, {cap, 1e-12});
                double e = 0.0;
                for (std::size_t j = 0; j < ts.size(); ++j) e = std::max(e, detail::max_abs(g.covariances[j] - bures.samples[j].a));
                return e;
            };
            trend.observe(err(0.01, 50000) < err(0.1, 5000) ? 0.0 : 1.0);
        }
    }
    const HermitianMatrix one = HermitianMatrix::Identity(1, 1);
    for (double eps : {0.01, 0.1, 0.5, 1.0, 2.0}) {
        const auto r = gaussian_bridge_oracle(one, one, eps, {0.5});
        scalar.observe(std::abs(r.covariances[0](0, 0).real() - 0.5 * (1.0 + std::sqrt(1.0 + eps * eps))));
    }
    return detail::combine("Gaussian oracle", {iters, marg, scalar, trend});
}

}  // namespace mvfr::checks
