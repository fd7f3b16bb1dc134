// Copyright 2026 The weak_arrival Authors
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

#include "weak_arrival/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "gtest/gtest.h"
#include "oracles.hpp"

using namespace weak_arrival;
using nlohmann::json;
using std::numbers::pi;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string &text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST(cli, parse_angle) {
    EXPECT_DOUBLE_EQ(parse_angle("45deg"), pi / 4);
    EXPECT_DOUBLE_EQ(parse_angle("0.5"), 0.5);
    EXPECT_DOUBLE_EQ(parse_angle("-90deg"), -pi / 2);
    EXPECT_THROW(parse_angle("45 degrees"), std::invalid_argument);
    EXPECT_THROW(parse_angle(""), std::invalid_argument);
    EXPECT_THROW(parse_angle("abc"), std::invalid_argument);
}

TEST(cli, format_double_round_trips) {
    for (double x : {0.1, -49.49833332222343, 1e-300, 3.0}) {
        EXPECT_EQ(std::stod(format_double(x)), x);
    }
    EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(cli, weak_json) {
    const auto r = cli({"weak", "--theta", "45deg", "--phi", "45deg", "--epsilon", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j["value"].get<double>(), 0.5, 1e-12);
    EXPECT_NEAR(j["probability"].get<double>(), 1.0, 1e-12);
    EXPECT_EQ(j["regime"], "intermediate");
}

TEST(cli, weak_near_orthogonal_example) {
    // phi = theta - pi/2 - 0.01 with theta = pi/4: sin^2 + sin cos cot(0.01) = 50.498333322222116.
    const double phi = pi / 4 - pi / 2 - 0.01;
    const auto r = cli({"weak", "--theta", format_double(pi / 4), "--phi", format_double(phi),
                        "--epsilon", "1", "--sigma", "1000"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j["value"].get<double>(), 50.498333322222116, 1e-9);
    EXPECT_EQ(j["regime"], "weak");
}

TEST(cli, weak_csv_has_version_line) {
    const auto r = cli({"weak", "--theta", "0.3", "--phi", "0.2", "--format", "csv"});
    ASSERT_EQ(r.code, 0);
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0][0], "# weak-arrival v1");
    EXPECT_EQ(rows[1][5], "value");
    EXPECT_NEAR(std::stod(rows[2][5]), std::sin(0.3) * std::sin(0.2) / std::cos(0.1), 1e-12);
}

TEST(cli, orthogonal_selection_exits_one_with_json_error) {
    const auto r = cli({"weak", "--theta", "90deg", "--phi", "0"});
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(r.err.empty());
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["error"], "orthogonal_selection");
}

TEST(cli, usage_errors_exit_two) {
    EXPECT_EQ(cli({"weak", "--bogus", "1"}).code, 2);
    EXPECT_EQ(cli({}).code, 2);
    EXPECT_EQ(cli({"weak", "--theta", "12furlongs"}).code, 2);
    EXPECT_EQ(cli({"weak", "--format", "xml"}).code, 2);
    EXPECT_EQ(cli({"sweep", "--variable", "theta", "--start", "1", "--stop", "1"}).code, 2);
    EXPECT_EQ(cli({"mc", "--epsilon", "1", "--eps-over-sigma", "1"}).code, 2);
    EXPECT_EQ(cli({"mc", "--trials", "0"}).code, 2);
}

TEST(cli, delta_sweep_probability_scales_as_delta_squared) {
    const auto r = cli({"sweep", "--variable", "delta", "--start", "1e-4", "--stop", "1e-1", "--steps", "10",
                        "--log", "--theta", "45deg", "--epsilon", "0.01"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 12u);
    EXPECT_EQ(rows[0][0], "# weak-arrival v1");
    EXPECT_EQ(rows[1], (std::vector<std::string>{"variable", "weak_value", "exact_mean", "abl_mean",
                                                  "probability_weak", "probability_exact", "status"}));
    std::vector<double> d, p;
    for (std::size_t i = 2; i < rows.size(); ++i) {
        d.push_back(std::stod(rows[i][0]));
        p.push_back(std::stod(rows[i][4]));
        EXPECT_EQ(rows[i][6], "ok");
    }
    EXPECT_NEAR(oracle::loglog_slope(d, p), 2.0, 0.01);
}

TEST(cli, epsilon_sweep_exact_mean_converges_to_weak_value) {
    const auto r = cli({"sweep", "--variable", "epsilon_over_sigma", "--start", "1e-4", "--stop", "10",
                        "--steps", "6", "--log", "--theta", "2.4", "--phi", "0.785398"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    // Ratio exact_mean / weak_value approaches 1 as eps/sigma shrinks.
    double previous_gap = 0.0;
    for (std::size_t i = rows.size() - 1; i >= 2; --i) {
        const double gap = std::abs(std::stod(rows[i][2]) / std::stod(rows[i][1]) - 1.0);
        if (i + 1 < rows.size()) EXPECT_LE(gap, previous_gap + 1e-12);
        previous_gap = gap;
    }
    EXPECT_LT(previous_gap, 1e-3);
}

TEST(cli, theta_sweep_with_phi_following_theta) {
    const auto r = cli({"sweep", "--variable", "theta", "--start", "0.1", "--stop", "1.4", "--steps", "5",
                        "--phi-follows-theta", "--epsilon", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    for (std::size_t i = 2; i < rows.size(); ++i) {
        const double t = std::stod(rows[i][0]);
        EXPECT_NEAR(std::stod(rows[i][1]), 2 * std::sin(t) * std::sin(t), 1e-12);
        EXPECT_NEAR(std::stod(rows[i][4]), 1.0, 1e-12);
    }
}

TEST(cli, sweep_marks_undefined_rows) {
    const auto r = cli({"sweep", "--variable", "phi", "--start", "0", "--stop", format_double(pi),
                        "--steps", "3", "--theta", format_double(pi / 2)});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 5u);
    for (std::size_t i : {2u, 4u}) {
        ASSERT_EQ(rows[i].size(), 7u);
        EXPECT_EQ(rows[i][1], "");
        EXPECT_NE(rows[i][6], "ok");
    }
    EXPECT_EQ(rows[3][6], "ok");
}

TEST(cli, sweep_json) {
    const auto r = cli({"sweep", "--variable", "theta", "--start", "0", "--stop", "1", "--steps", "3",
                        "--phi", "0.5", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["rows"].size(), 3u);
    EXPECT_EQ(j["variable"], "theta");
}

TEST(cli, bell_examples) {
    const auto r = cli({"bell", "--theta", "45deg", "--delta", "0.01", "--expansion", "first_order"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j["value"][0].get<double>(), -49.5, 1e-9);
    EXPECT_NEAR(j["value"][1].get<double>(), -49.5, 1e-9);
    EXPECT_NEAR(j["probability"].get<double>(), 5e-5, 1e-12);
    EXPECT_TRUE(j["correlated"].get<bool>());

    const auto x = json::parse(cli({"bell", "--theta", "45deg", "--delta", "0.01"}).out);
    EXPECT_EQ(x["expansion"], "exact");
    EXPECT_NEAR(x["value"][0].get<double>(), -49.498333322222116, 1e-9);

    EXPECT_EQ(cli({"bell", "--theta", "45deg", "--delta", "0"}).code, 1);
}

TEST(cli, bell_with_monte_carlo) {
    const auto r = cli({"bell", "--theta", "45deg", "--delta", "0.3", "--epsilon", "1", "--mc", "--trials",
                        "2e4", "--seed", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    ASSERT_TRUE(j.contains("mc"));
}

TEST(cli, mc_is_reproducible_and_thread_independent) {
    const std::vector<std::string> base{"mc", "--theta", "2.4", "--phi", "0.785398", "--epsilon", "0.1",
                                        "--trials", "1e5", "--seed", "7"};
    auto a = base, b = base;
    a.insert(a.end(), {"--threads", "1"});
    b.insert(b.end(), {"--threads", "4"});
    const auto ra = cli(a);
    const auto rb = cli(b);
    ASSERT_EQ(ra.code, 0) << ra.err;
    EXPECT_EQ(ra.out, rb.out);
    const auto j = json::parse(ra.out);
    EXPECT_EQ(j["report"]["n_trials"], 100000);
    EXPECT_EQ(j["report"]["generator"], "mt19937_64/splitmix64-substreams/v1");
}

TEST(cli, mc_histogram_file) {
    const auto path = std::filesystem::temp_directory_path() / "weak_arrival_cli_hist.csv";
    const auto r = cli({"mc", "--theta", "45deg", "--phi", "45deg", "--eps-over-sigma", "2", "--trials",
                        "5000", "--histogram", path.string(), "--bins", "10"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto n_success = json::parse(r.out)["report"]["n_success"].get<std::size_t>();
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "# weak-arrival v1");
    std::getline(in, line);
    EXPECT_EQ(line, "bin_left,bin_right,count");
    std::size_t total = 0, lines = 0;
    while (std::getline(in, line)) {
        total += std::stoull(line.substr(line.rfind(',') + 1));
        ++lines;
    }
    EXPECT_EQ(lines, 10u);
    EXPECT_EQ(total, n_success);
    std::filesystem::remove(path);
}
