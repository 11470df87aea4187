// Copyright 2026 The ipszeta Authors
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


#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ipszeta/cli.hpp"
#include "json.hpp"
#include "oracles.hpp"

using nlohmann::json;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = ipszeta::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string &text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) break;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::string temp_path(const std::string &name) {
    return (std::filesystem::temp_directory_path() / ("ipszeta_cli_" + name)).string();
}

}  // namespace

TEST(cli, validate_qca) {
    const CliRun r = run({"validate", "--model", "qca1", "--params", "0.4,1.1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_TRUE(j["is_qca"].get<bool>());
    EXPECT_FALSE(j["is_pca"].get<bool>());
}

TEST(cli, validate_rule90_is_both) {
    const CliRun r = run({"validate", "--model", "gdk", "--params", "0,0,0,0"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_TRUE(j["is_pca"].get<bool>());
    EXPECT_TRUE(j["is_qca"].get<bool>());
    EXPECT_TRUE(j["is_ca"].get<bool>());
}

TEST(cli, validate_rejects_constraint_violation) {
    const CliRun r = run({"validate", "--model", "custom", "--matrix", "1,0.5,0,0,0,1,0,0,0,0,1,0,0,0,0,1"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("ConstraintViolation"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
}

TEST(cli, validate_custom_json_matrix) {
    const CliRun r = run({"validate", "--model", "custom", "--matrix",
                       "[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(json::parse(r.out)["tensor_factorizable"].get<bool>());
}

TEST(cli, zeta_trivial_model_has_unit_c) {
    const CliRun r = run({"zeta", "--model", "gdk", "--params", "0,pi/2,0,pi/2", "--n", "5", "--rmax", "12"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 13u);
    EXPECT_EQ(rows[0][3], "c_r_re");
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_NEAR(std::stod(rows[i][3]), 1.0, 1e-12);
}

TEST(cli, zeta_rotation_model_follows_chebyshev) {
    const double xi = 0.7;
    const CliRun r = run({"zeta", "--model", "qca1", "--params", "0.7,0.7", "--n", "4", "--rmax", "10"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    for (int k = 1; k <= 10; ++k) {
        EXPECT_NEAR(std::stod(rows[k][3]), std::pow(oracle::cheb_t(k, std::cos(xi)), 3), 1e-9);
    }
}

TEST(cli, zeta_json_difference_small_inside_disk) {
    const CliRun r = run({"zeta", "--model", "qca2", "--params", "0.3,1.2", "--n", "5", "--rmax", "60", "--u",
                       "0.2,0.1+0.3j,-0.25", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    ASSERT_EQ(j["evaluations"].size(), 3u);
    for (const auto &e : j["evaluations"]) EXPECT_LT(e["difference"].get<double>(), 1e-9);
    EXPECT_EQ(j["table"].size(), 60u);
}

TEST(cli, zeta_series_table) {
    const CliRun r = run({"zeta", "--model", "qca1", "--params", "0,0", "--n", "3", "--rmax", "4", "--table", "series"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"r", "coeff_re", "coeff_im"}));
    EXPECT_NEAR(std::stod(rows[4][1]), -0.25, 1e-15);
}

TEST(cli, verify_reports) {
    const CliRun cor = run({"verify", "cor5_4"});
    ASSERT_EQ(cor.code, 0) << cor.err;
    const json c = json::parse(cor.out);
    EXPECT_TRUE(c["passed"].get<bool>());
    EXPECT_LT(c["max_abs_error"].get<double>(), 1e-9);

    const CliRun pi2 = run({"verify", "prop6_pi2"});
    ASSERT_EQ(pi2.code, 0) << pi2.err;
    EXPECT_EQ(json::parse(pi2.out)["grid"]["n_sites"], json::array({1, 10}));

    const CliRun conj = run({"verify", "conj_rule90", "--n", "5..8"});
    const json k = json::parse(conj.out);
    EXPECT_EQ(k["status"], "conjecture");
    EXPECT_EQ(conj.code, k["passed"].get<bool>() ? 0 : 3);
}

TEST(cli, verify_failure_exit_code) {
    const CliRun r = run({"verify", "cor5_4", "--n", "3", "--tol", "1e-300"});
    EXPECT_EQ(r.code, 3);
    EXPECT_FALSE(json::parse(r.out)["passed"].get<bool>());
}

TEST(cli, evolve_trajectory) {
    const CliRun r = run({"evolve", "--model", "gdk", "--params", "0,0,0,0", "--n", "3", "--init", "001", "--steps", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"step", "site_0", "site_1", "site_2"}));
    EXPECT_EQ(rows[1], (std::vector<std::string>{"0", "0", "0", "1"}));
    EXPECT_EQ(rows[2], (std::vector<std::string>{"1", "0", "1", "1"}));
    EXPECT_EQ(rows[5], (std::vector<std::string>{"4", "0", "0", "1"}));  // period 4 on three sites

    const CliRun q = run({"evolve", "--model", "qca1", "--params", "0.4,1.1", "--n", "3", "--format", "json"});
    ASSERT_EQ(q.code, 0) << q.err;
    EXPECT_EQ(json::parse(q.out)["kind"], "qca_amplitude");
}

TEST(cli, spectrum_csv) {
    const CliRun r = run({"spectrum", "--model", "qca2", "--params", "0,pi/2", "--n", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 17u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"idx", "re", "im", "abs"}));
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_NEAR(std::abs(std::stod(rows[i][1])), 1.0, 1e-9);
}

TEST(cli, invalid_input_exit_codes) {
    EXPECT_EQ(run({"verify", "no_such_formula"}).code, 2);
    EXPECT_EQ(run({"zeta", "--n", "3"}).code, 2);
    EXPECT_EQ(run({"zeta", "--model", "dk", "--params", "0.1,2", "--n", "3"}).code, 2);
    EXPECT_EQ(run({"zeta", "--model", "qca1", "--params", "0.1,0.2", "--n", "abc"}).code, 2);
    EXPECT_EQ(run({"spectrum", "--model", "qca1", "--params", "0.1,0.2", "--n", "13"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"validate", "--model", "qca1", "--params", "0.1,0.2", "--format", "xml"}).code, 2);
}

TEST(cli, help_exits_cleanly) {
    const CliRun r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("re+imj"), std::string::npos);
    EXPECT_NE(r.out.find("Exit codes"), std::string::npos);
}

TEST(cli, config_file_and_flag_override) {
    const std::string cfg = temp_path("config.json");
    {
        std::ofstream f(cfg);
        f << R"({"model": "qca1", "params": ["pi/4", "pi/4"], "n": 3, "rmax": 6, "format": "json"})";
    }
    const CliRun base = run({"zeta", "--config", cfg});
    ASSERT_EQ(base.code, 0) << base.err;
    const json a = json::parse(base.out);
    EXPECT_EQ(a["n_sites"], 3);
    EXPECT_EQ(a["table"].size(), 6u);

    const CliRun over = run({"zeta", "--config", cfg, "--n", "4", "--rmax", "2"});
    ASSERT_EQ(over.code, 0) << over.err;
    const json b = json::parse(over.out);
    EXPECT_EQ(b["n_sites"], 4);
    EXPECT_EQ(b["table"].size(), 2u);
    std::remove(cfg.c_str());

    EXPECT_EQ(run({"zeta", "--config", temp_path("missing.json")}).code, 2);
}

TEST(cli, out_file_receives_result) {
    const std::string path = temp_path("out.csv");
    const CliRun r = run({"spectrum", "--model", "qca1", "--params", "0,0", "--n", "2", "--out", path});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    EXPECT_EQ(csv_rows(text.str()).size(), 5u);
    std::remove(path.c_str());
}

TEST(cli, negative_u_and_determinism) {
    const std::vector<std::string> args = {"zeta",   "--model",  "dk",     "--params", "0.3,0.6", "--n", "4",
                                           "--u=-0.3", "--format", "json"};
    const CliRun a = run(args);
    const CliRun b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_DOUBLE_EQ(json::parse(a.out)["evaluations"][0]["u"][0].get<double>(), -0.3);
}
