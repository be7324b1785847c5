// Copyright 2026 The qre Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qre/eraser.hpp"
#include "qre/mzi.hpp"
#include "qre/tomography.hpp"

namespace qre::io {

using nlohmann::json;

inline constexpr const char* kSweepSchema = "qre.sweep.v1";
inline constexpr const char* kMziSchema = "qre.mzi.v1";
inline constexpr const char* kMatrixCsvSchema = "qre.matrix.v1";

/// Fixed textual form for doubles so repeated runs are byte-identical.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// ---- tomography dataset -------------------------------------------------

inline json dataset_to_json(const tomo::TomographyDataset& data) {
    json j;
    j["n_qubits"] = data.n_qubits;
    j["shots_per_setting"] = data.shots_per_setting;
    j["seed"] = data.seed;
    if (!data.labels.empty()) {
        j["labels"] = data.labels;
    }
    j["settings"] = json::array();
    for (const auto& s : data.settings) {
        json bases = json::array();
        for (auto b : s.setting.bases) {
            bases.push_back(std::string(1, tomo::to_char(b)));
        }
        j["settings"].push_back({{"bases", bases}, {"counts", s.counts}});
    }
    return j;
}

namespace detail {

inline const json& require(const json& j, const char* field, const std::string& where) {
    if (!j.is_object() || !j.contains(field)) {
        throw ParseError(where + ": missing field '" + field + "'");
    }
    return j.at(field);
}

inline std::int64_t require_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) {
        throw ParseError(where + ": expected an integer");
    }
    return j.get<std::int64_t>();
}

}  // namespace detail

inline tomo::TomographyDataset dataset_from_json(const json& j) {
    using detail::require;
    using detail::require_int;
    tomo::TomographyDataset d;
    if (!j.is_object()) {
        throw ParseError("dataset: expected a JSON object");
    }
    std::int64_t n = require_int(require(j, "n_qubits", "dataset"), "n_qubits");
    if (n < 1 || n > 10) {
        throw ParseError("n_qubits: must be between 1 and 10");
    }
    d.n_qubits = static_cast<std::size_t>(n);
    d.shots_per_setting = require_int(require(j, "shots_per_setting", "dataset"), "shots_per_setting");
    const json& seed = require(j, "seed", "dataset");
    if (!seed.is_number_integer()) {
        throw ParseError("seed: expected an integer");
    }
    d.seed = seed.get<std::uint64_t>();
    if (j.contains("labels")) {
        const json& labels = j.at("labels");
        if (!labels.is_array()) {
            throw ParseError("labels: expected an array of strings");
        }
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (!labels[i].is_string()) {
                throw ParseError("labels[" + std::to_string(i) + "]: expected a string");
            }
            d.labels.push_back(labels[i].get<std::string>());
        }
    }
    const json& settings = require(j, "settings", "dataset");
    if (!settings.is_array()) {
        throw ParseError("settings: expected an array");
    }
    for (std::size_t i = 0; i < settings.size(); ++i) {
        std::string where = "settings[" + std::to_string(i) + "]";
        const json& bases = require(settings[i], "bases", where);
        const json& counts = require(settings[i], "counts", where);
        if (!bases.is_array() || !counts.is_array()) {
            throw ParseError(where + ": bases and counts must be arrays");
        }
        tomo::SettingCounts sc;
        for (std::size_t q = 0; q < bases.size(); ++q) {
            std::string bw = where + ".bases[" + std::to_string(q) + "]";
            if (!bases[q].is_string() || bases[q].get<std::string>().size() != 1) {
                throw ParseError(bw + ": expected one of \"Z\", \"X\", \"Y\"");
            }
            try {
                sc.setting.bases.push_back(tomo::basis_from_char(bases[q].get<std::string>()[0]));
            } catch (const ParseError& e) {
                throw ParseError(bw + ": " + e.what());
            }
        }
        for (std::size_t k = 0; k < counts.size(); ++k) {
            sc.counts.push_back(require_int(counts[k], where + ".counts[" + std::to_string(k) + "]"));
        }
        d.settings.push_back(std::move(sc));
    }
    d.validate();
    return d;
}

/// Parses dataset text; syntax errors carry the line and column of the fault.
inline tomo::TomographyDataset parse_dataset(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return dataset_from_json(j);
}

inline tomo::TomographyDataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_dataset(ss.str());
}

// ---- matrices -----------------------------------------------------------

inline json matrix_to_json(const Matrix& m, const std::vector<std::string>& labels) {
    json re = json::array(), im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json rr = json::array(), ii = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            rr.push_back(m(r, c).real());
            ii.push_back(m(r, c).imag());
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    return {{"labels", labels}, {"real", re}, {"imag", im}};
}

inline Matrix matrix_from_json(const json& j) {
    const json& re = detail::require(j, "real", "matrix");
    const json& im = detail::require(j, "imag", "matrix");
    if (!re.is_array() || !im.is_array() || re.size() != im.size()) {
        throw ParseError("matrix: real and imag must be arrays of equal size");
    }
    auto n = static_cast<Eigen::Index>(re.size());
    Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        if (!re[r].is_array() || re[r].size() != re.size() || !im[r].is_array() || im[r].size() != re.size()) {
            throw ParseError("matrix: row " + std::to_string(r) + " has the wrong length");
        }
        for (Eigen::Index c = 0; c < n; ++c) {
            m(r, c) = Complex(re[r][c].get<double>(), im[r][c].get<double>());
        }
    }
    return m;
}

inline std::string basis_label(std::size_t index, std::size_t n_qubits) {
    std::string s(n_qubits, '0');
    for (std::size_t q = 0; q < n_qubits; ++q) {
        if ((index >> (n_qubits - 1 - q)) & 1u) {
            s[q] = '1';
        }
    }
    return s;
}

/// Long-format entries of a density matrix for 3D bar charts.
inline void write_matrix_csv(std::ostream& os, const Matrix& m, std::size_t n_qubits) {
    os << "# schema: " << kMatrixCsvSchema << "\n";
    os << "row,col,ket,bra,real,imag\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            os << r << ',' << c << ',' << basis_label(static_cast<std::size_t>(r), n_qubits) << ','
               << basis_label(static_cast<std::size_t>(c), n_qubits) << ',' << format_double(m(r, c).real()) << ','
               << format_double(m(r, c).imag()) << '\n';
        }
    }
}

// ---- curves -------------------------------------------------------------

inline void write_sweep_csv(std::ostream& os, const std::vector<eraser::SweepRecord>& rows) {
    os << "# schema: " << kSweepSchema << "\n";
    os << "theta,stage,config,target,irreality_analytic,coherence,discord,selection_probability,"
          "irreality_tomo_mean,irreality_tomo_std\n";
    for (const auto& r : rows) {
        os << format_double(r.theta) << ',' << r.stage << ',' << eraser::to_string(r.config) << ','
           << eraser::to_string(r.target) << ',' << format_double(r.irreality_analytic) << ','
           << format_double(r.coherence) << ',' << format_double(r.discord) << ','
           << format_double(r.selection_probability) << ','
           << (r.irreality_tomo_mean ? format_double(*r.irreality_tomo_mean) : "") << ','
           << (r.irreality_tomo_std ? format_double(*r.irreality_tomo_std) : "") << '\n';
    }
}

inline void write_mzi_csv(std::ostream& os, const std::vector<mzi::DetectorProbabilities>& rows) {
    os << "# schema: " << kMziSchema << "\n";
    os << "phi,p0,p1\n";
    for (const auto& r : rows) {
        os << format_double(r.phi) << ',' << format_double(r.p0) << ',' << format_double(r.p1) << '\n';
    }
}

}  // namespace qre::io
