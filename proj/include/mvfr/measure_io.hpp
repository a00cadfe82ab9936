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
 * JSON files for measures, reference measures and paths, and CSV tables.
 *
 *   measure:   { "dim": d, "support": [...], "atoms": [ { "point": id, "matrix": [[[re, im], ...], ...] } ] }
 *   reference: { "dim": d, "support": [...], "weights": [...] }
 *   path:      [ { "time": t, "measure": <measure> }, ... ]
 *
 * Numbers are written in shortest round-trip form, so save -> load -> save is
 * byte-identical and every double survives exactly. Any malformed input is
 * reported as Errc::Parse.
 */
#pragma once

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mvfr/error.hpp"
#include "mvfr/fisher_rao.hpp"
#include "mvfr/hpsd.hpp"
#include "mvfr/measure.hpp"

namespace mvfr {

using Json = nlohmann::ordered_json;

/// Tolerance for Hermitian symmetry of loaded atoms.
inline constexpr double kLoadHermitianTol = 1e-9;

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& msg) { throw Error(Errc::Parse, msg); }

inline Support support_from_json(const Json& j) {
    if (!j.contains("support") || !j["support"].is_array()) parse_fail("missing \"support\" array");
    std::vector<std::string> ids;
    for (const auto& s : j["support"]) {
        if (!s.is_string()) parse_fail("support labels must be strings");
        ids.push_back(s.get<std::string>());
    }
    try {
        return Support(std::move(ids));
    } catch (const Error& e) {
        parse_fail(e.what());
    }
}

inline int dim_from_json(const Json& j) {
    if (!j.contains("dim") || !j["dim"].is_number_integer()) parse_fail("missing integer \"dim\"");
    const auto d = j["dim"].get<long long>();
    if (d <= 0 || d > 16) parse_fail("\"dim\" must be in [1, 16]");
    return static_cast<int>(d);
}

inline double number(const Json& j, const std::string& where) {
    if (!j.is_number()) parse_fail(where + ": expected a number");
    return j.get<double>();
}

}  // namespace detail

inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const Json& j, int d, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != d) detail::parse_fail(where + ": matrix must have " + std::to_string(d) + " rows");
    Matrix m(d, d);
    for (int r = 0; r < d; ++r) {
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != d)
            detail::parse_fail(where + ": row " + std::to_string(r) + " must have " + std::to_string(d) + " entries");
        for (int c = 0; c < d; ++c) {
            const auto& e = j[r][c];
            const std::string at = where + " entry [" + std::to_string(r) + "][" + std::to_string(c) + "]";
            if (!e.is_array() || e.size() != 2) detail::parse_fail(at + ": expected [re, im]");
            m(r, c) = Complex(detail::number(e[0], at), detail::number(e[1], at));
        }
    }
    for (int r = 0; r < d; ++r)
        for (int c = r; c < d; ++c)
            if (std::abs(m(r, c) - std::conj(m(c, r))) > kLoadHermitianTol)
                detail::parse_fail(where + " entry [" + std::to_string(r) + "][" + std::to_string(c) +
                           "] breaks Hermitian symmetry");
    return m;
}

inline Json measure_to_json(const MatrixMeasure& g) {
    Json j;
    j["dim"] = g.dim();
    j["support"] = g.support().ids();
    Json atoms = Json::array();
    for (std::size_t i = 0; i < g.size(); ++i) atoms.push_back({{"point", g.support()[i]}, {"matrix", matrix_to_json(g[i])}});
    j["atoms"] = std::move(atoms);
    return j;
}

/// Points without an atom entry get the zero matrix.
inline MatrixMeasure measure_from_json(const Json& j) {
    if (!j.is_object()) detail::parse_fail("measure must be a JSON object");
    const int d = detail::dim_from_json(j);
    Support support = detail::support_from_json(j);
    std::vector<HermitianMatrix> atoms(support.size(), HermitianMatrix::Zero(d, d));
    std::vector<bool> seen(support.size(), false);
    if (!j.contains("atoms") || !j["atoms"].is_array()) detail::parse_fail("missing \"atoms\" array");
    for (const auto& a : j["atoms"]) {
        if (!a.is_object() || !a.contains("point") || !a["point"].is_string() || !a.contains("matrix"))
            detail::parse_fail("each atom needs \"point\" and \"matrix\"");
        const auto id = a["point"].get<std::string>();
        const auto idx = support.index_of(id);
        if (idx < 0) detail::parse_fail("atom for unknown point '" + id + "'");
        if (seen[idx]) detail::parse_fail("duplicate atom for point '" + id + "'");
        seen[idx] = true;
        atoms[idx] = matrix_from_json(a["matrix"], d, "atom '" + id + "'");
    }
    return MatrixMeasure(std::move(support), d, std::move(atoms));
}

inline Json reference_to_json(const ReferenceMeasure& lam) {
    Json j;
    j["dim"] = lam.dim();
    j["support"] = lam.support().ids();
    j["weights"] = lam.weights();
    return j;
}

inline ReferenceMeasure reference_from_json(const Json& j) {
    if (!j.is_object()) detail::parse_fail("reference measure must be a JSON object");
    const int d = detail::dim_from_json(j);
    Support support = detail::support_from_json(j);
    if (!j.contains("weights") || !j["weights"].is_array()) detail::parse_fail("missing \"weights\" array");
    std::vector<double> w;
    for (const auto& x : j["weights"]) w.push_back(detail::number(x, "weights"));
    try {
        return ReferenceMeasure(std::move(support), d, std::move(w));
    } catch (const Error& e) {
        detail::parse_fail(e.what());
    }
}

inline Json path_to_json(const MeasurePath& path) {
    Json j = Json::array();
    for (std::size_t k = 0; k < path.size(); ++k) j.push_back({{"time", path.times[k]}, {"measure", measure_to_json(path.slices[k])}});
    return j;
}

inline MeasurePath path_from_json(const Json& j) {
    if (!j.is_array()) detail::parse_fail("path must be a JSON array");
    MeasurePath path;
    for (const auto& e : j) {
        if (!e.is_object() || !e.contains("time") || !e.contains("measure")) detail::parse_fail("path entries need \"time\" and \"measure\"");
        path.times.push_back(detail::number(e["time"], "time"));
        path.slices.push_back(measure_from_json(e["measure"]));
    }
    return path;
}

inline Json parse_json(const std::string& text, const std::string& name) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        detail::parse_fail(name + ": " + e.what());
    }
}

inline std::string read_text(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) detail::parse_fail("cannot open '" + file + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_text(const std::string& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error(Errc::InvalidArgument, "cannot write '" + file + "'");
    out << text;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline MatrixMeasure load_measure(const std::string& file) { return measure_from_json(parse_json(read_text(file), file)); }
inline ReferenceMeasure load_reference(const std::string& file) {
    return reference_from_json(parse_json(read_text(file), file));
}
inline void save_measure(const std::string& file, const MatrixMeasure& g) { write_text(file, dump(measure_to_json(g))); }
inline void save_reference(const std::string& file, const ReferenceMeasure& lam) {
    write_text(file, dump(reference_to_json(lam)));
}
inline void save_path(const std::string& file, const MeasurePath& path) { write_text(file, dump(path_to_json(path))); }

/// Comma-separated table with a header row; doubles at 17 significant digits.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
        os_ << std::setprecision(std::numeric_limits<double>::max_digits10);
        for (std::size_t c = 0; c < header.size(); ++c) os_ << (c ? "," : "") << header[c];
        os_ << '\n';
    }

    void row(const std::vector<double>& values) {
        if (values.size() != columns_) throw Error(Errc::InvalidArgument, "csv row has the wrong number of columns");
        for (std::size_t c = 0; c < values.size(); ++c) os_ << (c ? "," : "") << values[c];
        os_ << '\n';
    }

    std::string str() const { return os_.str(); }

private:
    std::size_t columns_;
    std::ostringstream os_;
};

}  // namespace mvfr
