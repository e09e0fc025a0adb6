// Copyright 2026 The zpf-teleport Authors
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
#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "zpf/run.hpp"

namespace zpf {
namespace {

namespace fs = std::filesystem;

struct Row {
    double theta_b;
    std::string detector, port;
    double probability, normalized;
    std::string stderr_field;
};

std::vector<std::string> split(const std::string& line, char sep = ',') {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, sep)) out.push_back(f);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

std::vector<Row> parse_csv(const std::string& text) {
    std::stringstream in(text);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, kCsvHeader);
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        const auto f = split(line);
        EXPECT_EQ(f.size(), 6u) << line;
        if (f.size() != 6) continue;
        rows.push_back({std::stod(f[0]), f[1], f[2], std::stod(f[3]), std::stod(f[4]), f[5]});
    }
    return rows;
}

std::string run_to_string(const RunConfig& cfg, std::string* report = nullptr) {
    std::ostringstream csv, rep;
    run(cfg, csv, rep);
    if (report) *report = rep.str();
    return csv.str();
}

TEST(Sweep, ParsesAndCounts) {
    const Sweep s = parse_sweep("0:180:7.5");
    EXPECT_EQ(s.count(), 25u);
    EXPECT_DOUBLE_EQ(s.at(24), 180.0);
    EXPECT_EQ(parse_sweep("10:10:1").count(), 1u);
    EXPECT_EQ(parse_sweep("0:1:0.1").count(), 11u);
}

TEST(Sweep, RejectsMalformed) {
    EXPECT_THROW((void)parse_sweep("0:180"), std::invalid_argument);
    EXPECT_THROW((void)parse_sweep("0:180:7.5:1"), std::invalid_argument);
    EXPECT_THROW((void)parse_sweep("0:x:1"), std::invalid_argument);
    EXPECT_THROW((void)parse_sweep("0:10:0"), std::invalid_argument);
    EXPECT_THROW((void)parse_sweep("10:0:1"), std::invalid_argument);
    EXPECT_THROW((void)parse_sweep("0:nan:1"), std::invalid_argument);
}

TEST(Config, ParsersRejectUnknownNames) {
    EXPECT_THROW((void)parse_scenario("paris"), std::invalid_argument);
    EXPECT_THROW((void)parse_engine("exact"), std::invalid_argument);
    EXPECT_EQ(parse_engine("monte-carlo"), Engine::monte_carlo);
    EXPECT_EQ(parse_scenario("rome-elliptical"), ScenarioKind::rome_elliptical);
}

TEST(Config, Validation) {
    RunConfig c;
    c.g = 0.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.pump = 0.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.engine = Engine::monte_carlo;
    c.samples = 10;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.scenario = ScenarioKind::rome_generic;
    c.prep = {1.0, 1.0, 1.0, 1.0};
    EXPECT_THROW(c.validate(), std::invalid_argument);
    EXPECT_NO_THROW(RunConfig{}.validate());
}

TEST(Run, LinearDefaultSweep) {
    const auto rows = parse_csv(run_to_string({}));
    ASSERT_EQ(rows.size(), 8u * 25u);
    const double t = deg_to_rad(22.5);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        EXPECT_DOUBLE_EQ(r.theta_b, 7.5 * static_cast<double>(i / 8));
        EXPECT_TRUE(r.stderr_field.empty());
        if (r.detector == "DT+" && r.port == "DB") {
            EXPECT_NEAR(r.normalized, std::pow(std::cos(t - deg_to_rad(r.theta_b)), 2), 1e-12);
        }
    }
    const char* det[] = {"DT+", "DT+", "DT-", "DT-", "DR+", "DR+", "DR-", "DR-"};
    for (std::size_t k = 0; k < 8; ++k) {
        EXPECT_EQ(rows[k].detector, det[k]);
        EXPECT_EQ(rows[k].port, k % 2 == 0 ? "DB" : "DB⊥");
    }
}

TEST(Run, EllipticalTransmittedArm) {
    RunConfig c;
    c.scenario = ScenarioKind::rome_elliptical;
    for (const Row& r : parse_csv(run_to_string(c))) {
        if (r.detector.rfind("DT", 0) == 0 && r.port == "DB") {
            EXPECT_NEAR(r.normalized, std::pow(std::cos(deg_to_rad(r.theta_b)), 2), 1e-12);
        }
    }
}

TEST(Run, GenericPreparer) {
    RunConfig c;
    c.scenario = ScenarioKind::rome_generic;
    c.prep = rotator(deg_to_rad(22.5));
    RunConfig lin;
    EXPECT_EQ(run_to_string(c), run_to_string(lin));
}

TEST(Run, LedgerReport) {
    RunConfig c;
    c.ledger = true;
    std::string report;
    run_to_string(c, &report);
    EXPECT_EQ(report, "N_ZPF_S=8 N_ZPF_A=6 N_ic=2 N_max=4\n");
    c.ledger = false;
    run_to_string(c, &report);
    EXPECT_TRUE(report.empty());
}

TEST(Run, AnalyticAndP12FilesIdentical) {
    RunConfig a, b;
    b.engine = Engine::p12;
    EXPECT_EQ(run_to_string(a), run_to_string(b));
}

TEST(Run, MonteCarloDeterministicAndWithinErrors) {
    RunConfig c;
    c.engine = Engine::monte_carlo;
    c.samples = 20000;
    c.theta_b = parse_sweep("0:90:45");
    c.g = 0.3;
    const std::string first = run_to_string(c);
    EXPECT_EQ(first, run_to_string(c));
    c.threads = 3;
    EXPECT_EQ(first, run_to_string(c));

    RunConfig ref = c;
    ref.engine = Engine::intensity;
    const auto mc = parse_csv(first), exact = parse_csv(run_to_string(ref));
    ASSERT_EQ(mc.size(), exact.size());
    for (std::size_t i = 0; i < mc.size(); ++i) {
        ASSERT_FALSE(mc[i].stderr_field.empty());
        EXPECT_NEAR(mc[i].normalized, exact[i].normalized, 5.0 * std::stod(mc[i].stderr_field));
    }
    c.seed = 2;
    EXPECT_NE(first, run_to_string(c));
}

TEST(Run, WriteFailureThrows) {
    std::ostringstream csv, rep;
    csv.setstate(std::ios::badbit);
    EXPECT_THROW(run({}, csv, rep), std::runtime_error);
}

TEST(FormatNumber, NoNegativeZero) { EXPECT_EQ(detail::format_number(-0.0), "0"); }

// Command-line tool

struct Result {
    int status;
    std::string out;
};

Result shell(const std::string& args) {
    const std::string cmd = std::string(ZPF_CLI_PATH) + " " + args;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, {}};
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    const int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("zpf_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

TEST_F(CliTest, StdoutMatchesLibrary) {
    const Result r = shell("--theta 22.5 --theta-b 0:180:7.5 2>/dev/null");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, run_to_string({}));
}

TEST_F(CliTest, OutputFileAndLedger) {
    const fs::path csv = dir_ / "out.csv";
    const Result r = shell("--scenario rome-elliptical --gamma 20 --ledger --output " + csv.string());
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "N_ZPF_S=8 N_ZPF_A=6 N_ic=2 N_max=4\n");
    RunConfig c;
    c.scenario = ScenarioKind::rome_elliptical;
    EXPECT_EQ(slurp(csv), run_to_string(c));
}

TEST_F(CliTest, ConfigFile) {
    const fs::path cfg = dir_ / "run.ini";
    std::ofstream(cfg) << "scenario=rome-linear\ntheta=10\ntheta-b=0:90:30\n";
    const Result r = shell("--config " + cfg.string() + " 2>/dev/null");
    EXPECT_EQ(r.status, 0);
    RunConfig c;
    c.theta_deg = 10.0;
    c.theta_b = parse_sweep("0:90:30");
    EXPECT_EQ(r.out, run_to_string(c));
}

TEST_F(CliTest, MonteCarloSeedReproducible) {
    const std::string args = "--engine monte-carlo --samples 5000 --seed 9 --theta-b 0:30:30 2>/dev/null";
    const Result a = shell(args), b = shell(args);
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, BadInputExitsNonzero) {
    EXPECT_NE(shell("--scenario paris 2>/dev/null").status, 0);
    EXPECT_NE(shell("--theta-b 0:10 2>/dev/null").status, 0);
    EXPECT_NE(shell("--scenario rome-generic 2>/dev/null").status, 0);
    EXPECT_NE(shell("--scenario rome-generic --prep 1 0 1 0 1 0 1 0 2>/dev/null").status, 0);
    EXPECT_NE(shell("--engine monte-carlo --samples 10 2>/dev/null").status, 0);
    EXPECT_NE(shell("--output " + (dir_ / "missing" / "x.csv").string() + " 2>/dev/null").status, 0);
}

}  // namespace
}  // namespace zpf
