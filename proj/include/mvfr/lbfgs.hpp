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
 * Limited-memory quasi-Newton descent with a backtracking (Armijo) line
 * search. Objectives may return +infinity; such trial points are rejected by
 * the line search, so the iterates never leave the finite-objective region.
 */
#pragma once

#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace mvfr {

struct DescentOptions {
    int max_iters = 5000;
    /// Converged when the objective decreased by less than this fraction over
    /// `window` iterations.
    double objective_tol = 1e-9;
    int window = 10;
    double step_init = 1.0;
    double step_shrink = 0.5;
    int memory = 8;
    double armijo = 1e-4;
    int max_backtracks = 60;
};

struct DescentResult {
    Eigen::VectorXd x;
    double value = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;  // objective after every accepted step, starting with x0
};

/// Objective callback: returns f(x) and, when `grad` is non-null, fills it.
using DescentObjective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)>;

inline DescentResult minimize_lbfgs(const DescentObjective& f, Eigen::VectorXd x, const DescentOptions& opt) {
    DescentResult res;
    Eigen::VectorXd g(x.size());
    double fx = f(x, &g);
    res.history.push_back(fx);
    if (!std::isfinite(fx)) {
        res.x = std::move(x);
        res.value = fx;
        return res;
    }

    std::deque<Eigen::VectorXd> s_hist, y_hist;
    std::deque<double> rho_hist;
    Eigen::VectorXd gn(x.size());

    auto window_converged = [&]() {
        const auto& h = res.history;
        if (static_cast<int>(h.size()) <= opt.window) return false;
        const double old = h[h.size() - 1 - opt.window];
        const double now = h.back();
        return (old - now) <= opt.objective_tol * std::max(std::abs(now), 1e-300);
    };

    for (int it = 0; it < opt.max_iters; ++it) {
        if (g.squaredNorm() == 0.0) {
            res.converged = true;
            break;
        }
        // Two-loop recursion.
        Eigen::VectorXd q = g;
        std::vector<double> alpha(s_hist.size());
        for (int k = static_cast<int>(s_hist.size()) - 1; k >= 0; --k) {
            alpha[k] = rho_hist[k] * s_hist[k].dot(q);
            q -= alpha[k] * y_hist[k];
        }
        double step = opt.step_init;
        if (!s_hist.empty()) {
            q *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
            step = 1.0;
        }
        for (std::size_t k = 0; k < s_hist.size(); ++k) {
            const double beta = rho_hist[k] * y_hist[k].dot(q);
            q += (alpha[k] - beta) * s_hist[k];
        }
        Eigen::VectorXd dir = -q;
        double slope = g.dot(dir);
        if (!(slope < 0.0)) {
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            dir = -g;
            slope = -g.squaredNorm();
            step = opt.step_init;
        }
        if (s_hist.empty()) step = std::min(step, opt.step_init / std::max(1.0, std::sqrt(g.squaredNorm())));

        bool accepted = false;
        Eigen::VectorXd xn;
        double fn = fx;
        for (int b = 0; b < opt.max_backtracks; ++b) {
            xn = x + step * dir;
            fn = f(xn, &gn);
            if (std::isfinite(fn) && fn <= fx + opt.armijo * step * slope) {
                accepted = true;
                break;
            }
            step *= opt.step_shrink;
        }
        if (!accepted) {
            if (!s_hist.empty()) {
                // Retry once from steepest descent before declaring a stall.
                s_hist.clear();
                y_hist.clear();
                rho_hist.clear();
                continue;
            }
            // No representable decrease is left along the gradient.
            res.converged = true;
            break;
        }

        Eigen::VectorXd s = xn - x;
        Eigen::VectorXd y = gn - g;
        const double sy = s.dot(y);
        if (sy > 1e-16 * s.norm() * y.norm()) {
            s_hist.push_back(std::move(s));
            y_hist.push_back(std::move(y));
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > opt.memory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }
        x = std::move(xn);
        g = gn;
        fx = fn;
        res.history.push_back(fx);
        res.iterations = it + 1;
        if (window_converged()) {
            res.converged = true;
            break;
        }
    }
    res.x = std::move(x);
    res.value = fx;
    return res;
}

}  // namespace mvfr
