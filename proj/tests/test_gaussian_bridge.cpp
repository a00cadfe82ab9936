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

#include <gtest/gtest.h>

#include <cmath>

#include "test_util.hpp"

namespace mvfr {
namespace {

using namespace test;

/// Independent closed form of the Gaussian bridge with Brownian variance
/// sigma^2 = 2 epsilon, for real SPD endpoints:
/// S_t = (1-t)^2 A + t^2 B + t(1-t)(C + C^T + sigma^2 I),
/// C = (A^{1/2} D A^{-1/2} - sigma^2 I) / 2, D = (4 A^{1/2} B A^{1/2} + sigma^4 I)^{1/2}.
Matrix closed_form(const Matrix& a, const Matrix& b, double eps, double t) {
    const Eigen::Index d = a.rows();
    const double s2 = 2.0 * eps;
    const Matrix ra = psd_sqrt(a), ira = hermitian_inverse(ra);
    const Matrix dm = psd_sqrt(hermitian_part(4.0 * ra * b * ra + s2 * s2 * eye(d)));
    const Matrix c = 0.5 * (ra * dm * ira - s2 * eye(d));
    return (1 - t) * (1 - t) * a + t * t * b + t * (1 - t) * (c + c.adjoint() + s2 * eye(d));
}

const Matrix kA0 = mat({{2.0, 0.5}, {0.5, 1.0}});
const Matrix kA1 = mat({{1.0, -0.3}, {-0.3, 3.0}});

TEST(GaussianOracle, ScalarClosedForm) {
    for (double eps : {0.01, 0.1, 0.5, 1.0, 2.0}) {
        const auto r = gaussian_bridge_oracle(diag({1.0}), diag({1.0}), eps, {0.5});
        const double root = std::sqrt(1 + eps * eps);
        ASSERT_TRUE(r.b0().has_value());
        // The stopping rule bounds successive changes, so the factors carry the
        // slow-contraction error; the covariance is accurate to 1e-12.
        EXPECT_NEAR((*r.b0())(0, 0).real(), 1 - eps + root, 1e-9);
        EXPECT_NEAR((*r.c1())(0, 0).real(), 1 - eps + root, 1e-9);
        EXPECT_NEAR(r.covariances[0](0, 0).real(), (1 + root) / 2, 1e-12);
    }
}

TEST(GaussianOracle, FrozenMidpoint) {
    // tests/oracle/fixtures.py
    const auto r = gaussian_bridge_oracle(kA0, kA1, 0.5, {0.5, 0.3});
    const Matrix half = mat({{1.4715275387004426346, 0.13597151648160959004},
                             {0.13597151648160959004, 1.8778393868488236976}});
    const Matrix early = mat({{1.676083132508371813, 0.2902160738445520543},
                              {0.2902160738445520543, 1.497385084953011906}});
    EXPECT_LE((r.covariances[0] - half).cwiseAbs().maxCoeff(), 1e-11);
    EXPECT_LE((r.covariances[1] - early).cwiseAbs().maxCoeff(), 1e-11);
}

TEST(GaussianOracle, MatchesClosedFormOnRandomPairs) {
    Random rng(51);
    for (int k = 0; k < 50; ++k) {
        const int d = 1 + k % 3;
        const auto a0 = rng.spd(d, 0.3, 3.0, true), a1 = rng.spd(d, 0.3, 3.0, true);
        const double eps = rng.uniform(0.05, 2.0);
        const std::vector<double> ts{0.0, 0.2, 0.5, 0.9, 1.0};
        const auto r = gaussian_bridge_oracle(a0, a1, eps, ts);
        for (std::size_t j = 0; j < ts.size(); ++j)
            EXPECT_LE((r.covariances[j] - closed_form(a0, a1, eps, ts[j])).norm(), 1e-9 * (1 + a0.norm() + a1.norm()));
    }
}

TEST(GaussianOracle, MarginalsAreEnforced) {
    const auto r = gaussian_bridge_oracle(kA0, kA1, 1.0, {0.0, 1.0});
    EXPECT_LE((r.covariances[0] - kA0).norm(), 1e-9);
    EXPECT_LE((r.covariances[1] - kA1).norm(), 1e-9);
    EXPECT_LE(r.iterations, 200);
}

TEST(GaussianOracle, SmallTemperatureApproachesBuresGeodesic) {
    const BuresGeodesicMap geo(kA0, kA1);
    auto err = [&](double eps) {
        GaussianBridgeOptions opt;
        opt.max_iters = 50000;
        const auto r = gaussian_bridge_oracle(kA0, kA1, eps, {0.5}, opt);
        return (r.covariances[0] - geo.at(0.5)).norm() / geo.at(0.5).norm();
    };
    const double e1 = err(0.1), e2 = err(0.01);
    EXPECT_LT(e2, e1);
    EXPECT_LE(e2, 0.05);
}

TEST(GaussianOracle, EqualEndpointsInflateTheMidpoint) {
    Random rng(52);
    for (int k = 0; k < 30; ++k) {
        const auto a = rng.spd(2, 0.3, 3.0, true);
        const auto r = gaussian_bridge_oracle(a, a, 0.5, {0.5});
        EXPECT_GE(eigh(hermitian_part(r.covariances[0] - a)).min(), -1e-12);
    }
}

TEST(GaussianOracle, MidpointInflationDecreasesWithTemperature) {
    double prev = kInfinity;
    for (double eps : {1.0, 0.5, 0.2, 0.1}) {
        const double ld = logdet(gaussian_bridge_oracle(kA0, kA1, eps, {0.5}).covariances[0]);
        EXPECT_LT(ld, prev);
        prev = ld;
    }
}

TEST(GaussianOracle, Errors) {
    EXPECT_THROW(gaussian_bridge_oracle(kA0, kA1, 0.0, {0.5}), Error);
    try {
        gaussian_bridge_oracle(diag({1.0, 0.0}), kA1, 0.5, {0.5});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::Singular);
    }
    GaussianBridgeOptions opt;
    opt.max_iters = 2;
    try {
        gaussian_bridge_oracle(kA0, kA1, 0.5, {0.5}, opt);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::FixedPointDiverged);
    }
}

}  // namespace
}  // namespace mvfr
