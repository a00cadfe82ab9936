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

// Determinant by cofactor expansion; independent of any eigensolver.
Complex cofactor_det(const Matrix& a) {
    const Eigen::Index d = a.rows();
    if (d == 1) return a(0, 0);
    Complex s = 0.0;
    for (Eigen::Index c = 0; c < d; ++c) {
        Matrix minor(d - 1, d - 1);
        for (Eigen::Index r = 1; r < d; ++r)
            for (Eigen::Index k = 0, j = 0; k < d; ++k)
                if (k != c) minor(r - 1, j++) = a(r, k);
        s += ((c % 2) ? -1.0 : 1.0) * a(0, c) * cofactor_det(minor);
    }
    return s;
}

TEST(FrobeniusInner, Examples) {
    EXPECT_DOUBLE_EQ(frobenius_inner(eye(2), eye(2)), 2.0);
    EXPECT_DOUBLE_EQ(frobenius_inner(fixture_a(), Matrix::Zero(2, 2)), 0.0);
    EXPECT_DOUBLE_EQ(frobenius_inner(diag({1, 2}), diag({3, 4})), 11.0);
}

TEST(FrobeniusInner, SymmetricAndNormSquared) {
    Random rng(1);
    for (int k = 0; k < 50; ++k) {
        const auto a = rng.hermitian(3), b = rng.hermitian(3);
        EXPECT_NEAR(frobenius_inner(a, b), frobenius_inner(b, a), 1e-12);
        EXPECT_NEAR(frobenius_inner(a, a), a.squaredNorm(), 1e-12);
    }
}

TEST(FrobeniusInner, DimensionMismatchThrows) {
    try {
        frobenius_inner(eye(2), eye(3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DimensionMismatch);
    }
}

TEST(EigenDecomposition, ReconstructsAndIsUnitary) {
    Random rng(2);
    for (int d = 1; d <= 4; ++d) {
        const auto a = rng.hermitian(d);
        const auto e = eigh(a);
        EXPECT_LE((e.reconstruct() - a).norm(), 1e-10 * std::max(1.0, a.norm()));
        EXPECT_LE((e.eigenvectors.adjoint() * e.eigenvectors - eye(d)).norm(), 1e-10);
        for (Eigen::Index k = 1; k < d; ++k) EXPECT_LE(e.eigenvalues(k - 1), e.eigenvalues(k));
    }
}

TEST(PsdSqrt, Examples) {
    EXPECT_LE((psd_sqrt(eye(3)) - eye(3)).norm(), 1e-15);
    EXPECT_LE((psd_sqrt(diag({4, 9})) - diag({2, 3})).norm(), 1e-14);
}

TEST(PsdSqrt, SquaresBackAcrossRanks) {
    Random rng(3);
    for (int k = 0; k < 200; ++k) {
        const int d = 1 + k % 4;
        const auto a = rng.psd(d, rng.integer(1, d));
        const Matrix s = psd_sqrt(a);
        EXPECT_LE((s * s - a).norm(), 1e-9 * a.norm());
        EXPECT_GE(eigh(s).min(), -1e-12);
    }
}

TEST(PsdSqrt, ClampsSmallNegativesAndRejectsLargeOnes) {
    EXPECT_NO_THROW(psd_sqrt(diag({1.0, -5e-11})));
    try {
        psd_sqrt(diag({1.0, -1e-6}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotPSD);
    }
}

TEST(Logdet, Examples) {
    EXPECT_DOUBLE_EQ(logdet(eye(3)), 0.0);
    EXPECT_NEAR(logdet(diag({std::numbers::e, std::numbers::e})), 2.0, 1e-15);
}

TEST(Logdet, MatchesCofactorExpansion) {
    Random rng(4);
    for (int k = 0; k < 60; ++k) {
        const int d = 1 + k % 3;
        const auto a = rng.spd(d, 0.1, 4.0);
        EXPECT_NEAR(logdet(a), std::log(cofactor_det(a).real()), 1e-10);
    }
}

TEST(Logdet, SingularThrows) {
    try {
        logdet(diag({1.0, 0.0}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::Singular);
    }
    EXPECT_FALSE(checked_logdet(diag({1.0, 1e-15})).has_value());
}

TEST(Logdet, AdditiveOnCommutingPairs) {
    Random rng(5);
    for (int k = 0; k < 50; ++k) {
        const int d = 1 + k % 4;
        const Matrix u = rng.unitary(d);
        Eigen::VectorXd x(d), y(d);
        for (int j = 0; j < d; ++j) x(j) = rng.uniform(0.1, 3), y(j) = rng.uniform(0.1, 3);
        const Matrix p = hermitian_part(u * x.cast<Complex>().asDiagonal() * u.adjoint());
        const Matrix q = hermitian_part(u * y.cast<Complex>().asDiagonal() * u.adjoint());
        EXPECT_NEAR(logdet(hermitian_part(p * q)), logdet(p) + logdet(q), 1e-9);
    }
}

TEST(RealEmbedding, Examples) {
    EXPECT_EQ(real_embedding_real(eye(1)), Eigen::MatrixXd::Identity(2, 2));
    Eigen::MatrixXd expected(4, 4);
    expected << 0, 0, 0, -1,  //
        0, 0, 1, 0,           //
        0, 1, 0, 0,           //
        -1, 0, 0, 0;
    EXPECT_EQ(real_embedding_real(mat({{0.0, 1i}, {-1i, 0.0}})), expected);
    const auto a = fixture_a();
    EXPECT_DOUBLE_EQ(trace_real(real_embedding(a)), 2.0 * trace_real(a));
}

TEST(RealEmbedding, PreservesPsdStatus) {
    Random rng(6);
    for (int k = 0; k < 200; ++k) {
        const int d = 1 + k % 4;
        const auto h = rng.hermitian(d);
        const auto e = real_embedding_real(h);
        EXPECT_TRUE((e - e.transpose()).norm() == 0.0);
        const bool psd_complex = eigh(h).min() >= 0.0;
        const bool psd_real = eigh(real_embedding(h)).min() >= -1e-12 * h.norm();
        EXPECT_EQ(psd_complex, psd_real);
    }
}

TEST(SylvesterVelocity, Examples) {
    const auto xi = fixture_a();
    EXPECT_LE((solve_sylvester_velocity(eye(2), xi) - xi).norm(), 1e-14);
    EXPECT_LE((solve_sylvester_velocity(diag({1, 3}), diag({2, 6})) - diag({2, 2})).norm(), 1e-14);
}

TEST(SylvesterVelocity, RoundTripAndResidual) {
    Random rng(7);
    for (int k = 0; k < 200; ++k) {
        const int d = 1 + k % 4;
        const auto g = rng.spd(d, 0.05, 5.0);
        const auto u = rng.hermitian(d);
        const Matrix xi = sym_product(g, u);
        const Matrix back = solve_sylvester_velocity(g, xi);
        EXPECT_LE((back - u).norm(), 1e-9 * std::max(1.0, u.norm()));
        EXPECT_LE((sym_product(g, back) - xi).norm(), 1e-9 * xi.norm());
    }
}

TEST(SylvesterVelocity, SingularBaseThrows) {
    try {
        solve_sylvester_velocity(diag({1.0, 0.0}), eye(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::Singular);
    }
}

}  // namespace
}  // namespace mvfr
