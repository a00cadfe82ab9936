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
#include <numbers>

#include "test_util.hpp"

namespace mvfr {
namespace {

using namespace test;
constexpr double kPi = std::numbers::pi;

template <class F>
Errc error_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an mvfr::Error";
    return Errc::InvalidArgument;
}

TEST(Hellinger, Examples) {
    const auto g = fixture_g0();
    EXPECT_NEAR(hellinger_distance_sq(g, g), 0.0, 1e-14);
    const auto big = g.scaled(3.5);
    EXPECT_EQ(hellinger_distance_sq(big, MatrixMeasure::zero(g.support(), 2)), 4.0 * mass(big));
}

TEST(Hellinger, FrozenFixturePair) {
    // tests/oracle/fixtures.py
    EXPECT_NEAR(hellinger_distance_sq(fixture_g0(), fixture_g1()), 0.23404548542379778119, 1e-13);
    EXPECT_NEAR(fisher_rao_distance(fixture_g0(), fixture_g1()), 0.48496975842923661919, 1e-12);
}

TEST(Hellinger, MassBound) {
    Random rng(31);
    for (int k = 0; k < 200; ++k) {
        const auto a = rng.measure(4, 1 + k % 4), b = rng.measure(4, 1 + k % 4);
        EXPECT_LE(hellinger_distance_sq(a, b), 4.0 * (mass(a) + mass(b)) + 1e-9);
        const auto p = rng.probability(3, 2), q = rng.probability(3, 2);
        EXPECT_LE(hellinger_distance_sq(p, q), 8.0 + 1e-9);
    }
}

TEST(FisherRao, Examples) {
    const auto g = fixture_g0();
    EXPECT_NEAR(fisher_rao_distance(g, g), 0.0, 1e-7);
    const auto p = measure({diag({0.5, 0.5}), Matrix::Zero(2, 2)});
    const auto q = measure({Matrix::Zero(2, 2), diag({0.25, 0.75})});
    EXPECT_DOUBLE_EQ(fisher_rao_distance(p, q), kPi);

    // One point: d_FR = 2 arccos(1 - d_B^2 / 2), twice the spherical Bures angle.
    const Matrix a0 = fixture_a() / 3.0, a1 = fixture_b() / 4.0;
    const double d = fisher_rao_distance(measure({a0}), measure({a1}));
    EXPECT_NEAR(d, 2.0 * std::acos(1.0 - bures_distance_sq(a0, a1) * 4.0 / 8.0), 1e-14);
    EXPECT_NEAR(d, 2.0 * spherical_bures(a0, a1), 1e-14);
}

TEST(FisherRao, RejectsNonProbability) {
    EXPECT_EQ(error_of([] { fisher_rao_distance(fixture_g0().scaled(1.1), fixture_g1()); }), Errc::NotProbability);
}

TEST(FisherRao, DiameterAndLipschitzComparison) {
    Random rng(32);
    for (int k = 0; k < 200; ++k) {
        const auto a = rng.probability(3, 1 + k % 3), b = rng.probability(3, 1 + k % 3);
        const double dfr = fisher_rao_distance(a, b), dh = hellinger_distance(a, b);
        EXPECT_LE(dfr, kPi + 1e-9);
        EXPECT_LE(dh, dfr + 1e-12);
        EXPECT_LE(dfr, kPi / 2 * dh + 1e-12);
    }
}

TEST(ConeScaling, Examples) {
    const auto g0 = fixture_g0(), g1 = fixture_g1();
    auto c = cone_scaling_check(g0, g1, 1.0, 1.0);
    EXPECT_NEAR(c.lhs, hellinger_distance_sq(g0, g1), 1e-15);
    EXPECT_NEAR(c.rhs, c.lhs, 1e-15);
    c = cone_scaling_check(g0, g1, 0.0, 1.7);
    EXPECT_NEAR(c.lhs, 4.0 * 1.7 * 1.7, 1e-13);
    EXPECT_NEAR(c.rhs, c.lhs, 1e-13);
    c = cone_scaling_check(g0, g1, 2.0, 3.0);
    EXPECT_NEAR(c.lhs, c.rhs, 1e-8 * std::max(1.0, c.rhs));
}

TEST(HellingerGeodesic, Examples) {
    const auto g = fixture_g0();
    const auto constant = hellinger_geodesic(g, g, {0.0, 0.5, 1.0});
    for (const auto& s : constant.slices) EXPECT_LE(tv_distance(s, g), 1e-13);

    const auto apex = hellinger_geodesic(g, MatrixMeasure::zero(g.support(), 2), {0.0, 0.3, 0.7, 1.0});
    for (std::size_t k = 0; k < apex.size(); ++k) {
        const double t = apex.times[k];
        EXPECT_LE(tv_distance(apex.slices[k], g.scaled((1 - t) * (1 - t))), 1e-14);
    }
}

TEST(HellingerGeodesic, LinearDistanceAndMass) {
    const auto g0 = fixture_g0(), g1 = fixture_g1();
    const double full = hellinger_distance(g0, g1), h2 = full * full;
    const auto path = hellinger_geodesic(g0, g1, {0.0, 0.2, 0.5, 0.9, 1.0});
    for (std::size_t j = 0; j < path.size(); ++j)
        for (std::size_t k = j + 1; k < path.size(); ++k)
            EXPECT_NEAR(hellinger_distance(path.slices[j], path.slices[k]), (path.times[k] - path.times[j]) * full,
                        1e-6 * full);
    for (std::size_t k = 0; k < path.size(); ++k) {
        const double t = path.times[k];
        EXPECT_NEAR(mass(path.slices[k]), 1.0 - t * (1 - t) * h2 / 4, 1e-12);
        EXPECT_GE(mass(path.slices[k]), 1.0 - 2 * t * (1 - t) - 1e-9);
    }
    // tests/oracle/fixtures.py
    EXPECT_NEAR(mass(path.slices[2]), 0.98537215716101263868, 1e-13);
    ASSERT_TRUE(path.velocities.has_value());
    EXPECT_TRUE(std::isfinite(path.ode_residual));
}

TEST(FisherRaoGeodesic, AntipodalPairsAreRejected) {
    const auto p = measure({diag({1, 0})}), q = measure({diag({0, 1})});
    EXPECT_EQ(error_of([&] { fisher_rao_geodesic(p, q, {0.5}); }), Errc::Antipodal);
}

TEST(FisherRaoGeodesic, ConstantPathForEqualEndpoints) {
    const auto g = fixture_g0();
    const auto path = fisher_rao_geodesic(g, g, {0.0, 0.4, 1.0});
    for (const auto& s : path.slices) EXPECT_LE(tv_distance(s, g), 1e-14);
}

TEST(FisherRaoGeodesic, MidpointBisectsAndSlicesStayOnSphere) {
    Random rng(33);
    for (int k = 0; k < 30; ++k) {
        const auto a = rng.dense_probability(3, 2), b = rng.dense_probability(3, 2);
        const double d = fisher_rao_distance(a, b);
        const auto path = fisher_rao_geodesic(a, b, {0.0, 0.25, 0.5, 0.75, 1.0});
        EXPECT_NEAR(fisher_rao_distance(a, path.slices[2]), d / 2, 1e-5 * d);
        EXPECT_NEAR(fisher_rao_distance(path.slices[2], b), d / 2, 1e-5 * d);
        EXPECT_NEAR(fisher_rao_distance(path.slices[1], path.slices[3]), d / 2, 1e-5 * d);
        for (const auto& s : path.slices) {
            EXPECT_NEAR(mass(s), 1.0, 1e-8);
            for (const auto& atom : s.atoms()) EXPECT_GE(eigh(atom).min(), -1e-12);
        }
    }
}

TEST(FisherRaoGeodesic, FrozenMidpointEntropy) {
    const auto lam = ReferenceMeasure::uniform(Support::numbered(2), 2);
    const auto mid = FisherRaoGeodesicMap(fixture_g0(), fixture_g1()).at(0.5);
    // tests/oracle/fixtures.py
    EXPECT_NEAR(entropy(mid, lam), 0.092455023963442215839, 1e-12);
}

TEST(FisherRaoGeodesic, VelocityIsTangentAndHasGeodesicSpeed) {
    const auto g0 = fixture_g0(), g1 = fixture_g1();
    const auto path = fisher_rao_geodesic(g0, g1, uniform_times(64));
    ASSERT_TRUE(path.velocities.has_value());
    const double d = fisher_rao_distance(g0, g1);
    const auto speed = metric_speed(path, Metric::FisherRao);
    ASSERT_TRUE(speed.from_velocity.has_value());
    for (std::size_t k = 0; k < path.size(); ++k) {
        EXPECT_NEAR((*speed.from_velocity)[k], d, 1e-9);
        EXPECT_NEAR(speed.finite_difference[k], d, 0.02 * d);
        double rate = 0.0;
        for (std::size_t i = 0; i < g0.size(); ++i) rate += frobenius_inner(path.slices[k][i], (*path.velocities)[k][i]);
        EXPECT_NEAR(rate, 0.0, 1e-12);
    }
    EXPECT_LE(path.ode_residual, 0.05);
}

TEST(MetricSpeed, ConstantPathIsZero) {
    MeasurePath p;
    p.times = {0.0, 0.5, 1.0};
    p.slices = {fixture_g0(), fixture_g0(), fixture_g0()};
    for (double v : metric_speed(p, Metric::Hellinger).finite_difference) EXPECT_EQ(v, 0.0);
}

TEST(MetricSpeed, HeatFlowSpeedIsFinite) {
    const auto lam = ReferenceMeasure::uniform(Support::numbered(2), 2);
    MeasurePath p;
    for (int k = 0; k <= 10; ++k) {
        p.times.push_back(0.01 * k);
        p.slices.push_back(heat_flow(fixture_g0(), lam, 0.01 * k));
    }
    const auto v = metric_speed(p, Metric::FisherRao).finite_difference;
    EXPECT_TRUE(std::isfinite(v[0]));
    // Gradient-flow speed equals the gradient norm, sqrt(F).
    EXPECT_NEAR(v[0], std::sqrt(fisher_information(fixture_g0(), lam)), 0.02);
}

TEST(ConstantSpeedReparametrize, EqualizesAWarpedGeodesic) {
    const auto g0 = fixture_g0(), g1 = fixture_g1();
    const FisherRaoGeodesicMap map(g0, g1);
    MeasurePath warped;
    warped.spherical = true;
    for (int k = 0; k <= 32; ++k) {
        const double t = k / 32.0;
        warped.times.push_back(t);
        warped.slices.push_back(map.at(t * t));
    }
    double before = 0.0;
    for (int k = 0; k < 32; ++k) before += std::pow(fisher_rao_distance(warped.slices[k], warped.slices[k + 1]), 2);
    const auto out = constant_speed_reparametrize(warped, Metric::FisherRao);
    ASSERT_EQ(out.size(), warped.size());
    std::vector<double> seg;
    double after = 0.0, total = 0.0;
    for (int k = 0; k < 32; ++k) {
        seg.push_back(fisher_rao_distance(out.slices[k], out.slices[k + 1]));
        after += seg.back() * seg.back();
        total += seg.back();
    }
    const auto [lo, hi] = std::minmax_element(seg.begin(), seg.end());
    EXPECT_LE((*hi - *lo) / *hi, 0.01);
    EXPECT_NEAR(total, map.length(), 1e-6);
    EXPECT_LT(after, before);
}

TEST(ConstantSpeedReparametrize, EdgeCases) {
    MeasurePath two;
    two.times = {0.0, 1.0};
    two.slices = {fixture_g0(), fixture_g1()};
    const auto same = constant_speed_reparametrize(two, Metric::Hellinger);
    EXPECT_EQ(tv_distance(same.slices[1], two.slices[1]), 0.0);

    MeasurePath flat;
    flat.times = {0.0, 0.5, 1.0};
    flat.slices = {fixture_g0(), fixture_g0(), fixture_g0()};
    EXPECT_EQ(error_of([&] { constant_speed_reparametrize(flat, Metric::Hellinger); }), Errc::ZeroLength);

    const auto geo = hellinger_geodesic(fixture_g0(), fixture_g1(), uniform_times(8));
    const auto re = constant_speed_reparametrize(geo, Metric::Hellinger);
    for (std::size_t k = 0; k < geo.size(); ++k) EXPECT_LE(tv_distance(re.slices[k], geo.slices[k]), 1e-9);
}

TEST(TvComparison, Examples) {
    const auto g = fixture_g0();
    auto c = tv_comparison_check(g, g);
    EXPECT_NEAR(c.lower, 0.0, 1e-14);
    EXPECT_EQ(c.mid, 0.0);
    EXPECT_NEAR(c.upper, 0.0, 1e-6);

    const auto big = g.scaled(2.5);
    c = tv_comparison_check(big, MatrixMeasure::zero(g.support(), 2));
    EXPECT_NEAR(c.lower, mass(big) / std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(c.upper, 2.0 * mass(big), 1e-13);
    EXPECT_LE(c.lower, c.mid);
    EXPECT_LE(c.mid, c.upper);
}

TEST(TvComparison, ChainHolds) {
    Random rng(34);
    for (int k = 0; k < 500; ++k) {
        const auto a = rng.measure(3, 1 + k % 4), b = rng.measure(3, 1 + k % 4);
        const auto c = tv_comparison_check(a, b);
        EXPECT_LE(c.lower, c.mid + 1e-9);
        EXPECT_LE(c.mid, c.upper + 1e-9);
    }
}

}  // namespace
}  // namespace mvfr
