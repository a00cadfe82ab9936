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
 * Finitely supported matrix-valued measures: one Hermitian atom per support
 * point, plus the scalar reference weights used by the entropy.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "mvfr/error.hpp"
#include "mvfr/hpsd.hpp"

namespace mvfr {

/// Mass tolerance for membership in the unit-mass sphere.
inline constexpr double kProbabilityTol = 1e-9;

/// Ordered list of distinct point labels.
class Support {
public:
    Support() = default;

    explicit Support(std::vector<std::string> ids) : ids_(std::move(ids)) {
        std::unordered_set<std::string> seen;
        for (const auto& id : ids_)
            if (!seen.insert(id).second) throw Error(Errc::InvalidArgument, "duplicate support label '" + id + "'");
    }

    /// Labels p1..pn.
    static Support numbered(std::size_t n) {
        std::vector<std::string> ids;
        ids.reserve(n);
        for (std::size_t i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i + 1));
        return Support(std::move(ids));
    }

    std::size_t size() const noexcept { return ids_.size(); }
    const std::vector<std::string>& ids() const noexcept { return ids_; }
    const std::string& operator[](std::size_t i) const { return ids_.at(i); }

    std::ptrdiff_t index_of(const std::string& id) const {
        for (std::size_t i = 0; i < ids_.size(); ++i)
            if (ids_[i] == id) return static_cast<std::ptrdiff_t>(i);
        return -1;
    }

    friend bool operator==(const Support& a, const Support& b) { return a.ids_ == b.ids_; }

private:
    std::vector<std::string> ids_;
};

/// Hermitian atom per support point. Atoms of an element of H+ are PSD; signed
/// measures (differences, gradients) reuse the same type.
class MatrixMeasure {
public:
    MatrixMeasure() = default;

    MatrixMeasure(Support support, int dim, std::vector<HermitianMatrix> atoms)
        : support_(std::move(support)), dim_(dim), atoms_(std::move(atoms)) {
        if (dim_ <= 0) throw Error(Errc::InvalidArgument, "measure dimension must be positive");
        if (atoms_.size() != support_.size())
            throw Error(Errc::SupportMismatch, "atom count does not match support size");
        for (const auto& a : atoms_)
            if (a.rows() != dim_ || a.cols() != dim_)
                throw Error(Errc::DimensionMismatch, "atom has wrong dimension");
    }

    static MatrixMeasure zero(Support support, int dim) {
        std::vector<HermitianMatrix> atoms(support.size(), HermitianMatrix::Zero(dim, dim));
        return MatrixMeasure(std::move(support), dim, std::move(atoms));
    }

    const Support& support() const noexcept { return support_; }
    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return atoms_.size(); }
    const std::vector<HermitianMatrix>& atoms() const noexcept { return atoms_; }
    std::vector<HermitianMatrix>& atoms() noexcept { return atoms_; }
    const HermitianMatrix& operator[](std::size_t i) const { return atoms_[i]; }
    HermitianMatrix& operator[](std::size_t i) { return atoms_[i]; }

    MatrixMeasure scaled(double s) const {
        MatrixMeasure out = *this;
        for (auto& a : out.atoms_) a *= s;
        return out;
    }

    friend MatrixMeasure operator+(const MatrixMeasure& a, const MatrixMeasure& b) {
        a.require_compatible(b, "operator+");
        MatrixMeasure out = a;
        for (std::size_t i = 0; i < a.size(); ++i) out.atoms_[i] += b.atoms_[i];
        return out;
    }

    friend MatrixMeasure operator-(const MatrixMeasure& a, const MatrixMeasure& b) {
        a.require_compatible(b, "operator-");
        MatrixMeasure out = a;
        for (std::size_t i = 0; i < a.size(); ++i) out.atoms_[i] -= b.atoms_[i];
        return out;
    }

    void require_compatible(const MatrixMeasure& other, const char* where) const {
        if (dim_ != other.dim_) throw Error(Errc::DimensionMismatch, std::string(where) + ": dimension mismatch");
        if (!(support_ == other.support_)) throw Error(Errc::SupportMismatch, std::string(where) + ": support mismatch");
    }

    /// Throws NotPSD naming the first offending point.
    void require_psd(const char* where) const {
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            if (!is_hermitian(atoms_[i], 1e-9))
                throw Error(Errc::InvalidArgument, std::string(where) + ": atom '" + support_[i] + "' is not Hermitian");
            if (eigh(atoms_[i]).min() < -kPsdTol)
                throw Error(Errc::NotPSD, std::string(where) + ": atom '" + support_[i] + "' is not PSD");
        }
    }

private:
    Support support_;
    int dim_ = 0;
    std::vector<HermitianMatrix> atoms_;
};

/// Scalar weights lambda_i >= 0 with d * sum(lambda) = 1, so that the trace of
/// lambda I is a probability measure.
class ReferenceMeasure {
public:
    ReferenceMeasure() = default;

    ReferenceMeasure(Support support, int dim, std::vector<double> weights)
        : support_(std::move(support)), dim_(dim), weights_(std::move(weights)) {
        if (dim_ <= 0) throw Error(Errc::InvalidArgument, "reference dimension must be positive");
        if (weights_.size() != support_.size())
            throw Error(Errc::SupportMismatch, "weight count does not match support size");
        double total = 0.0;
        for (double w : weights_) {
            if (!(w >= 0.0) || !std::isfinite(w)) throw Error(Errc::InvalidArgument, "reference weights must be nonnegative");
            total += w;
        }
        if (std::abs(dim_ * total - 1.0) > 1e-12)
            throw Error(Errc::InvalidArgument, "reference weights must satisfy dim * sum = 1");
    }

    /// lambda_i = 1 / (n d).
    static ReferenceMeasure uniform(Support support, int dim) {
        const std::size_t n = support.size();
        std::vector<double> w(n, 1.0 / (static_cast<double>(n) * dim));
        return ReferenceMeasure(std::move(support), dim, std::move(w));
    }

    const Support& support() const noexcept { return support_; }
    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return weights_.size(); }
    const std::vector<double>& weights() const noexcept { return weights_; }
    double operator[](std::size_t i) const { return weights_[i]; }

    /// The measure lambda I.
    MatrixMeasure as_measure() const {
        std::vector<HermitianMatrix> atoms;
        atoms.reserve(weights_.size());
        for (double w : weights_) atoms.push_back(w * HermitianMatrix::Identity(dim_, dim_));
        return MatrixMeasure(support_, dim_, std::move(atoms));
    }

    void require_compatible(const MatrixMeasure& g, const char* where) const {
        if (g.dim() != dim_) throw Error(Errc::DimensionMismatch, std::string(where) + ": dimension mismatch");
        if (!(g.support() == support_)) throw Error(Errc::SupportMismatch, std::string(where) + ": support mismatch");
    }

private:
    Support support_;
    int dim_ = 0;
    std::vector<double> weights_;
};

/// Sum of atom Frobenius norms.
inline double tv_norm(const MatrixMeasure& g) {
    double s = 0.0;
    for (const auto& a : g.atoms()) s += frobenius_norm(a);
    return s;
}

inline double tv_distance(const MatrixMeasure& a, const MatrixMeasure& b) {
    a.require_compatible(b, "tv_distance");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += frobenius_norm(a[i] - b[i]);
    return s;
}

/// Total trace.
inline double mass(const MatrixMeasure& g) {
    double s = 0.0;
    for (const auto& a : g.atoms()) s += trace_real(a);
    return s;
}

inline bool is_probability(const MatrixMeasure& g, double tol = kProbabilityTol) {
    return std::abs(mass(g) - 1.0) <= tol;
}

inline void require_probability(const MatrixMeasure& g, const char* where, double tol = kProbabilityTol) {
    const double m = mass(g);
    if (std::abs(m - 1.0) > tol) {
        std::ostringstream os;
        os.precision(17);
        os << where << ": mass " << m << " is not 1";
        throw Error(Errc::NotProbability, os.str());
    }
}

/// G_i / tr G_i.
inline HermitianMatrix trace_density(const MatrixMeasure& g, std::size_t i) {
    const double tr = trace_real(g[i]);
    if (tr <= 1e-14) throw Error(Errc::ZeroAtom, "trace_density: atom '" + g.support()[i] + "' has zero trace");
    return g[i] / tr;
}

struct LebesgueSplit {
    MatrixMeasure absolutely_continuous;
    MatrixMeasure singular;
};

/// Splits the atoms by whether the reference weight is positive.
inline LebesgueSplit lebesgue_split(const MatrixMeasure& g, const ReferenceMeasure& lam) {
    lam.require_compatible(g, "lebesgue_split");
    LebesgueSplit out{MatrixMeasure::zero(g.support(), g.dim()), MatrixMeasure::zero(g.support(), g.dim())};
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (lam[i] > 0.0)
            out.absolutely_continuous[i] = g[i];
        else
            out.singular[i] = g[i];
    }
    return out;
}

struct SpherePoint {
    MatrixMeasure direction;  // unit mass
    double radius;            // sqrt(mass)
};

/// G -> (G / m, sqrt(m)).
inline SpherePoint normalize_to_sphere(const MatrixMeasure& g) {
    const double m = mass(g);
    if (m <= 1e-14) throw Error(Errc::ZeroMass, "normalize_to_sphere: the cone apex has no sphere representative");
    return {g.scaled(1.0 / m), std::sqrt(m)};
}

}  // namespace mvfr
