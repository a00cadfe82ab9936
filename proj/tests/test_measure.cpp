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

TEST(Support, RejectsDuplicateLabels) {
    EXPECT_EQ(error_of([] { Support({"a", "b", "a"}); }), Errc::InvalidArgument);
    EXPECT_EQ(Support::numbered(3).ids(), (std::vector<std::string>{"p1", "p2", "p3"}));
}

TEST(TvNorm, Examples) {
    EXPECT_EQ(tv_norm(MatrixMeasure::zero(Support::numbered(3), 2)), 0.0);
    EXPECT_DOUBLE_EQ(tv_norm(measure({eye(2)})), std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(tv_norm(measure({diag({1, 0}), diag({0, 1})})), 2.0);
}

TEST(TvDistance, SupportMismatchThrows) {
    const auto a = measure({eye(2)});
    const MatrixMeasure b(Support({"q"}), 2, {eye(2)});
    EXPECT_EQ(error_of([&] { tv_distance(a, b); }), Errc::SupportMismatch);
}

TEST(TvDistance, TriangleInequality) {
    Random rng(11);
    for (int k = 0; k < 100; ++k) {
        const auto a = rng.measure(4, 3), b = rng.measure(4, 3), c = rng.measure(4, 3);
        EXPECT_LE(tv_distance(a, c), tv_distance(a, b) + tv_distance(b, c) + 1e-10);
    }
}

TEST(Mass, Examples) {
    const auto lam = ReferenceMeasure::uniform(Support::numbered(5), 3);
    EXPECT_NEAR(mass(lam.as_measure()), 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(mass(measure({3.0 * eye(2)})), 6.0);
    EXPECT_EQ(mass(MatrixMeasure::zero(Support::numbered(2), 2)), 0.0);
}

TEST(ReferenceMeasure, NormalizationIsEnforced) {
    EXPECT_NO_THROW(ReferenceMeasure(Support::numbered(2), 2, {0.25, 0.25}));
    EXPECT_NO_THROW(ReferenceMeasure(Support::numbered(2), 2, {0.5, 0.0}));
    EXPECT_EQ(error_of([] { ReferenceMeasure(Support::numbered(2), 2, {0.5, 0.5}); }), Errc::InvalidArgument);
    EXPECT_EQ(error_of([] { ReferenceMeasure(Support::numbered(2), 1, {1.5, -0.5}); }), Errc::InvalidArgument);
}

TEST(TraceDensity, Examples) {
    const auto g = measure({5.0 * eye(2), diag({3, 1}), Matrix::Zero(2, 2)});
    EXPECT_LE((trace_density(g, 0) - 0.5 * eye(2)).norm(), 1e-15);
    EXPECT_LE((trace_density(g, 1) - diag({0.75, 0.25})).norm(), 1e-15);
    EXPECT_EQ(error_of([&] { trace_density(g, 2); }), Errc::ZeroAtom);
}

TEST(LebesgueSplit, PointwiseSplit) {
    const auto g = measure({fixture_a(), fixture_b()});
    const ReferenceMeasure positive(g.support(), 2, {0.25, 0.25});
    auto parts = lebesgue_split(g, positive);
    EXPECT_EQ(tv_distance(parts.absolutely_continuous, g), 0.0);
    EXPECT_EQ(tv_norm(parts.singular), 0.0);

    const ReferenceMeasure mixed(g.support(), 2, {0.5, 0.0});
    parts = lebesgue_split(g, mixed);
    EXPECT_EQ(parts.absolutely_continuous[0], fixture_a());
    EXPECT_EQ(parts.absolutely_continuous[1].norm(), 0.0);
    EXPECT_EQ(parts.singular[0].norm(), 0.0);
    EXPECT_EQ(parts.singular[1], fixture_b());
    EXPECT_EQ(tv_distance(parts.absolutely_continuous + parts.singular, g), 0.0);
}

TEST(NormalizeToSphere, ScalesAndRejectsApex) {
    const auto g = fixture_g0();
    auto sp = normalize_to_sphere(g);
    EXPECT_NEAR(sp.radius, 1.0, 1e-15);
    sp = normalize_to_sphere(g.scaled(4.0));
    EXPECT_NEAR(sp.radius, 2.0, 1e-15);
    EXPECT_LE(tv_distance(sp.direction, g), 1e-15);
    EXPECT_LE(tv_distance(sp.direction.scaled(sp.radius * sp.radius), g.scaled(4.0)), 1e-12);
    EXPECT_EQ(error_of([&] { normalize_to_sphere(MatrixMeasure::zero(g.support(), 2)); }), Errc::ZeroMass);
}

TEST(MatrixMeasure, RequirePsdNamesThePoint) {
    const MatrixMeasure g(Support({"left", "right"}), 2, {eye(2), diag({1, -1})});
    try {
        g.require_psd("test");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotPSD);
        EXPECT_NE(std::string(e.what()).find("right"), std::string::npos);
    }
}

}  // namespace
}  // namespace mvfr
