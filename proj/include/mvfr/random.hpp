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
 * Seeded generators of random Hermitian matrices and matrix measures. All
 * draws come from one std::mt19937_64, so a seed fixes every instance.
 */
#pragma once

#include <cstdint>
#include <random>

#include "mvfr/hpsd.hpp"
#include "mvfr/measure.hpp"

namespace mvfr {

class Random {
public:
    explicit Random(std::uint64_t seed = 0) : engine_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    double normal() { return normal_(engine_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

    /// Complex Ginibre matrix; `real_only` zeroes the imaginary parts.
    Matrix ginibre(Eigen::Index d, bool real_only = false) {
        Matrix m(d, d);
        for (Eigen::Index j = 0; j < m.size(); ++j) m.data()[j] = Complex(normal(), real_only ? 0.0 : normal());
        return m;
    }

    HermitianMatrix hermitian(Eigen::Index d) { return hermitian_part(ginibre(d)); }

    /// Haar-ish unitary from the QR factor of a Ginibre matrix.
    Matrix unitary(Eigen::Index d, bool real_only = false) {
        Eigen::HouseholderQR<Matrix> qr(ginibre(d, real_only));
        return qr.householderQ() * Matrix::Identity(d, d);
    }

    /// W W^* with W of size d x rank; rank-deficient when rank < d.
    HermitianMatrix psd(Eigen::Index d, Eigen::Index rank = -1, bool real_only = false) {
        if (rank < 0) rank = d;
        Matrix w(d, rank);
        for (Eigen::Index j = 0; j < w.size(); ++j) w.data()[j] = Complex(normal(), real_only ? 0.0 : normal());
        return hermitian_part(w * w.adjoint() / static_cast<double>(d));
    }

    /// SPD with eigenvalues drawn uniformly from [lo, hi].
    HermitianMatrix spd(Eigen::Index d, double lo, double hi, bool real_only = false) {
        const Matrix u = unitary(d, real_only);
        Eigen::VectorXd ev(d);
        for (Eigen::Index k = 0; k < d; ++k) ev(k) = uniform(lo, hi);
        return hermitian_part(u * ev.cast<Complex>().asDiagonal() * u.adjoint());
    }

    /// Random PSD atoms with random ranks (including zero atoms).
    MatrixMeasure measure(std::size_t n, int d) {
        std::vector<HermitianMatrix> atoms;
        for (std::size_t i = 0; i < n; ++i) atoms.push_back(uniform() < 0.1 ? psd(d, 0) : psd(d, integer(1, d)));
        return MatrixMeasure(Support::numbered(n), d, std::move(atoms));
    }

    MatrixMeasure probability(std::size_t n, int d) {
        auto g = measure(n, d);
        const double m = mass(g);
        return m > 0.0 ? g.scaled(1.0 / m) : probability(n, d);
    }

    /// Unit-mass measure whose densities relative to the uniform reference have
    /// eigenvalues in roughly [lo, hi] before normalization.
    MatrixMeasure dense_probability(std::size_t n, int d, double lo = 0.3, double hi = 2.0) {
        std::vector<HermitianMatrix> atoms;
        for (std::size_t i = 0; i < n; ++i) atoms.push_back(spd(d, lo, hi));
        MatrixMeasure g(Support::numbered(n), d, std::move(atoms));
        return g.scaled(1.0 / mass(g));
    }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace mvfr
