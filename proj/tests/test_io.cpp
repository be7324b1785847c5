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

#include <random>
#include <sstream>

#include "gtest/gtest.h"

#include "oracles.hpp"
#include "qre/io.hpp"

using namespace qre;

namespace {

tomo::TomographyDataset sample(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    DensityMatrix rho(QubitRegister{"b", "d1"}, oracle::random_density(4, rng));
    auto d = tomo::simulate_counts(rho, 500, seed);
    d.labels = {"b", "d1"};
    return d;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST(DatasetJson, round_trip_preserves_everything) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto d = sample(seed);
        auto back = io::parse_dataset(io::dataset_to_json(d).dump());
        EXPECT_EQ(back.n_qubits, d.n_qubits);
        EXPECT_EQ(back.shots_per_setting, d.shots_per_setting);
        EXPECT_EQ(back.seed, d.seed);
        EXPECT_EQ(back.labels, d.labels);
        ASSERT_EQ(back.settings.size(), d.settings.size());
        for (std::size_t s = 0; s < d.settings.size(); ++s) {
            EXPECT_EQ(back.settings[s].setting, d.settings[s].setting);
            EXPECT_EQ(back.settings[s].counts, d.settings[s].counts);
        }
        EXPECT_EQ(io::dataset_to_json(back).dump(), io::dataset_to_json(d).dump());
    }
}

TEST(DatasetJson, malformed_text_reports_position) {
    try {
        io::parse_dataset("{\n  \"n_qubits\": 1,\n  \"seed\": ,\n}");
        FAIL() << "no error";
    } catch (const ParseError& e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
        EXPECT_NE(msg.find("column"), std::string::npos) << msg;
    }
}

TEST(DatasetJson, field_diagnostics) {
    auto j = io::dataset_to_json(sample(1));
    auto expect_error = [](const nlohmann::json& bad, const std::string& fragment) {
        try {
            io::dataset_from_json(bad);
            ADD_FAILURE() << "no error for " << fragment;
        } catch (const ParseError& e) {
            EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
        }
    };
    auto missing = j;
    missing.erase("shots_per_setting");
    expect_error(missing, "shots_per_setting");
    auto basis = j;
    basis["settings"][3]["bases"][1] = "W";
    expect_error(basis, "settings[3].bases[1]");
    auto negative = j;
    negative["settings"][2]["counts"][0] = -4;
    expect_error(negative, "settings[2]");
    auto fractional = j;
    fractional["settings"][0]["counts"][1] = 1.5;
    expect_error(fractional, "settings[0].counts[1]");
    auto arity = j;
    arity["settings"][5]["bases"] = {"Z"};
    expect_error(arity, "settings[5]");
    expect_error(nlohmann::json::array(), "object");
}

TEST(DatasetJson, missing_setting_is_incomplete) {
    auto j = io::dataset_to_json(sample(2));
    j["settings"].erase(7);
    auto d = io::dataset_from_json(j);
    try {
        tomo::reconstruct_linear(d);
        FAIL() << "no error";
    } catch (const IncompleteDataError& e) {
        EXPECT_NE(std::string(e.what()).find(tomo::all_settings(2)[7].key()), std::string::npos) << e.what();
    }
}

TEST(DatasetJson, missing_file) { EXPECT_THROW(io::load_dataset("/nonexistent/data.json"), std::runtime_error); }

TEST(MatrixJson, round_trip) {
    std::mt19937_64 rng(4);
    Matrix m = oracle::random_density(8, rng);
    auto j = io::matrix_to_json(m, {"b", "d1", "d2"});
    Matrix back = io::matrix_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_LT(max_abs(back - m), 1e-15);
    EXPECT_EQ(j["labels"].size(), 3u);
    EXPECT_THROW(io::matrix_from_json({{"real", {{1.0}}}}), ParseError);
}

TEST(Csv, schema_line_and_header) {
    std::ostringstream sweep, mzi_out, mat;
    eraser::SweepRecord r{};
    r.theta = 0.5;
    r.stage = 1;
    r.irreality_tomo_mean = 0.25;
    io::write_sweep_csv(sweep, {r});
    io::write_mzi_csv(mzi_out, {{0.0, 1.0, 0.0}});
    io::write_matrix_csv(mat, Matrix::Identity(2, 2), 1);
    EXPECT_EQ(first_line(sweep.str()), "# schema: qre.sweep.v1");
    EXPECT_EQ(first_line(mzi_out.str()), "# schema: qre.mzi.v1");
    EXPECT_EQ(first_line(mat.str()), "# schema: qre.matrix.v1");
    EXPECT_NE(sweep.str().find(",0.25,\n"), std::string::npos) << sweep.str();
    EXPECT_NE(mat.str().find("1,1,1,1,1,0"), std::string::npos) << mat.str();
}

TEST(Csv, doubles_round_trip_through_text) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int t = 0; t < 1000; ++t) {
        double v = u(rng);
        EXPECT_NEAR(std::stod(io::format_double(v)), v, 1e-14 * std::abs(v));
    }
}
