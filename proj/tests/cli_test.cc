// Copyright 2026 The qnoise Authors
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

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "qnoise/csv.h"
#include "qnoise/noise_model.h"

namespace fs = std::filesystem;

namespace qnoise {
namespace {

const std::string kCli = QNOISE_CLI_PATH;
const std::string kConfigs = QNOISE_CONFIG_DIR;

class CliTest : public ::testing::Test {
 protected:
    void SetUp() override {
        const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("qnoise_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int run(const std::string &args) {
        const std::string cmd = kCli + " " + args + " >" + (dir_ / "stdout.txt").string() + " 2>" +
                                (dir_ / "stderr.txt").string();
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string path(const std::string &name) const { return (dir_ / name).string(); }

    void write(const std::string &name, const std::string &text) {
        std::ofstream(dir_ / name) << text;
    }

    fs::path dir_;
};

std::string slurp(const std::string &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

TEST_F(CliTest, Fig3SimulateWritesTwoShotTables) {
    ASSERT_EQ(run("simulate --config " + kConfigs + "/fig3.cfg --out " + path("run")), 0);
    const CsvTable long_shots = read_csv_file(path("run/shots_long.csv"));
    const CsvTable dd_shots = read_csv_file(path("run/shots_dd.csv"));
    EXPECT_EQ(long_shots.rows.size(), 5000u);
    EXPECT_EQ(dd_shots.rows.size(), 5000u);
    EXPECT_FALSE(fs::exists(path("run/shots_variance.csv")));
    EXPECT_EQ(long_shots.header, (std::vector<std::string>{"index", "t_start", "spec_id", "basis", "outcome"}));
    EXPECT_EQ(long_shots.seed(), 1u);
    const CsvTable coherence = read_csv_file(path("run/coherence.csv"));
    EXPECT_EQ(coherence.header, (std::vector<std::string>{"family", "tau", "coherence", "stderr", "shots"}));
    EXPECT_EQ(coherence.rows.size(), 50u);
    EXPECT_TRUE(fs::exists(path("run/manifest.json")));
}

TEST_F(CliTest, ZeroNoiseCoherenceAllOne) {
    ASSERT_EQ(run("simulate --config " + kConfigs + "/zero_noise.cfg --out " + path("z")), 0);
    const auto est = read_coherences(read_csv_file(path("z/coherence.csv")));
    ASSERT_FALSE(est.empty());
    for (const auto &e : est) {
        EXPECT_EQ(e.coherence, 1.0) << e.family << "@" << e.tau;
    }
}

TEST_F(CliTest, SameSeedByteIdentical) {
    const std::string cfg = kConfigs + "/fig3.cfg";
    ASSERT_EQ(run("simulate --config " + cfg + " --out " + path("a")), 0);
    ASSERT_EQ(run("simulate --config " + cfg + " --out " + path("b")), 0);
    ASSERT_EQ(run("simulate --config " + cfg + " --out " + path("c") + " --seed 2"), 0);
    for (const char *f : {"shots_long.csv", "shots_dd.csv", "coherence.csv"}) {
        EXPECT_EQ(slurp(path("a/") + f), slurp(path("b/") + f)) << f;
        EXPECT_NE(slurp(path("a/") + f), slurp(path("c/") + f)) << f;
    }
    EXPECT_EQ(read_csv_file(path("c/shots_dd.csv")).seed(), 2u);
}

TEST_F(CliTest, ReconstructRoundTrip) {
    const std::string cfg = kConfigs + "/fig3.cfg";
    ASSERT_EQ(run("simulate --config " + cfg + " --out " + path("r")), 0);
    ASSERT_EQ(run("reconstruct --config " + cfg + " --out " + path("r") + " --rcond 1e-8 --quality-ratio 4"), 0);
    const CsvTable lt = read_csv_file(path("r/long_time.csv"));
    EXPECT_EQ(lt.header, (std::vector<std::string>{"k", "t", "C_est", "stderr"}));
    EXPECT_EQ(lt.rows.size(), 2500u);
    const CsvTable st = read_csv_file(path("r/short_time.csv"));
    EXPECT_EQ(st.header, (std::vector<std::string>{"u", "C_eta_est", "Q", "reliable"}));
    EXPECT_EQ(st.rows.size(), 1801u);
    const auto meta = nlohmann::json::parse(slurp(path("r/reconstruction.json")));
    EXPECT_EQ(meta["rcond"].get<double>(), 1e-8);
    EXPECT_EQ(meta["quality_ratio"].get<double>(), 4.0);
    EXPECT_EQ(meta["seed"].get<int>(), 1);
    EXPECT_GT(meta["short_time"]["retained_rank"].get<int>(), 0);
    EXPECT_TRUE(meta.contains("discarded_points"));
    EXPECT_TRUE(fs::exists(path("r/reconstruction.svg")));
    EXPECT_TRUE(fs::exists(path("r/quality.svg")));
    const auto manifest = nlohmann::json::parse(slurp(path("r/manifest.json")));
    EXPECT_TRUE(manifest["runs"].contains("simulate"));
    EXPECT_TRUE(manifest["runs"].contains("reconstruct"));
}

TEST_F(CliTest, AnalyticChiTracksModel) {
    const std::string cfg = kConfigs + "/fig3.cfg";
    ASSERT_EQ(run("reconstruct --analytic-chi --config " + cfg + " --out " + path("a") + " --input " + path("a")), 0);
    const CsvTable st = read_csv_file(path("a/short_time.csv"));
    const NoiseModel model{0.0, {Fluctuator{1.0, 10.0, "fast"}, Fluctuator{10.0, 0.01, "slow"}}};
    double err = 0;
    int n = 0;
    for (const auto &row : st.rows) {
        if (row[3] == "1") {
            const double u = std::stod(row[0]);
            const double c = stochastic_correlation(model, u);
            err += std::abs(std::stod(row[1]) - c) / c;
            ++n;
        }
    }
    ASSERT_GT(n, 0);
    EXPECT_LT(err / n, 0.3);
    EXPECT_TRUE(read_csv_file(path("a/long_time.csv")).rows.empty());
}

TEST_F(CliTest, EmptyCampaignGivesMarker) {
    const std::string cfg = kConfigs + "/variance.cfg";
    ASSERT_EQ(run("simulate --config " + cfg + " --out " + path("v")), 0);
    EXPECT_TRUE(read_csv_file(path("v/shots_dd.csv")).rows.empty());
    ASSERT_EQ(run("reconstruct --config " + cfg + " --out " + path("v")), 0);
    const CsvTable st = read_csv_file(path("v/short_time.csv"));
    EXPECT_TRUE(st.rows.empty());
    EXPECT_NE(std::find(st.comments.begin(), st.comments.end(), "no short-time estimate"), st.comments.end());
    const auto meta = nlohmann::json::parse(slurp(path("v/reconstruction.json")));
    EXPECT_EQ(meta["short_time"]["status"], "no short-time estimate");
    EXPECT_EQ(meta["variance"]["shots"].get<int>(), 5000);
}

TEST_F(CliTest, ExitCodes) {
    write("bad.cfg", R"({"schedule": {"spacing": 0}})");
    EXPECT_EQ(run("simulate --config " + path("bad.cfg")), 2);
    EXPECT_NE(slurp(path("stderr.txt")).find("schedule.spacing"), std::string::npos);
    write("unknown.cfg", R"({"noize": {}})");
    EXPECT_EQ(run("filters --config " + path("unknown.cfg")), 2);
    EXPECT_EQ(run("simulate --config " + path("missing.cfg")), 2);
    write("nonoise.cfg", R"({"campaign": []})");
    EXPECT_EQ(run("simulate --config " + path("nonoise.cfg") + " --out " + path("x")), 2);
    EXPECT_EQ(run("reconstruct --config " + kConfigs + "/fig3.cfg --out " + path("none")), 3);
    fs::create_directories(dir_ / "broken");
    write("broken/shots_long.csv", "index,t_start,spec,basis,outcome\n0,0,FE@0.04,y,1\n");
    EXPECT_EQ(run("reconstruct --config " + kConfigs + "/fig3.cfg --out " + path("broken")), 3);
    EXPECT_EQ(run("simulate --config " + kConfigs + "/fig3.cfg --rcond 2"), 2);
    EXPECT_EQ(run("frobnicate"), 2);
}

TEST_F(CliTest, AllDiscardedIsDataError) {
    fs::create_directories(dir_ / "d");
    std::string shots = "index,t_start,spec_id,basis,outcome\n";
    for (int i = 0; i < 4; ++i) {
        shots += std::to_string(i) + "," + std::to_string(i) + ",FE@0.5," + (i % 2 ? "y" : "x") + "," +
                 ((i / 2) % 2 ? "-1" : "1") + "\n";
    }
    write("d/shots_dd.csv", shots);
    EXPECT_EQ(run("reconstruct --config " + kConfigs + "/fig3.cfg --out " + path("d")), 3);
    EXPECT_NE(slurp(path("stderr.txt")).find("discarded"), std::string::npos);
}

TEST_F(CliTest, FiltersMatchFigureShapes) {
    ASSERT_EQ(run("filters --config " + kConfigs + "/filters.cfg --out " + path("f")), 0);
    const CsvTable hahn = read_csv_file(path("f/filter_001.csv"));
    EXPECT_EQ(hahn.header, (std::vector<std::string>{"u", "F"}));
    bool found = false;
    for (const auto &row : hahn.rows) {
        if (std::stod(row[0]) == 0.5) {
            EXPECT_NEAR(std::stod(row[1]), -1.0, 1e-12);
            found = true;
        }
    }
    EXPECT_TRUE(found);
    const CsvTable fe = read_csv_file(path("f/filter_000.csv"));
    EXPECT_NEAR(std::stod(fe.rows.front()[1]), 2.0, 1e-12);
    EXPECT_NEAR(std::stod(fe.rows.back()[1]), 0.0, 1e-12);
    const CsvTable seqs = read_csv_file(path("f/sequences.csv"));
    ASSERT_EQ(seqs.rows.size(), 3u);
    const std::size_t integral = seqs.column("integral");
    EXPECT_NEAR(std::stod(seqs.rows[1][integral]), 0.0, 1e-6);
    EXPECT_NEAR(std::stod(seqs.rows[2][integral]), 0.0, 1e-6);
    EXPECT_NEAR(std::stod(seqs.rows[0][integral]), 1.0, 1e-6);
    const CsvTable overlap = read_csv_file(path("f/overlap.csv"));
    EXPECT_EQ(overlap.header, (std::vector<std::string>{"i", "j", "F_ij"}));
    EXPECT_EQ(overlap.rows.size(), 9u);
    EXPECT_NEAR(std::stod(overlap.rows[0][2]), 4.0 / 3.0, 1e-6);
    EXPECT_EQ(read_csv_file(path("f/frequency.csv")).rows.size(), 1200u);
    EXPECT_TRUE(fs::exists(path("f/filters.svg")));
}

TEST_F(CliTest, OracleTables) {
    ASSERT_EQ(run("oracle --config " + kConfigs + "/fig3.cfg --out " + path("o")), 0);
    const CsvTable c = read_csv_file(path("o/oracle_correlation.csv"));
    EXPECT_EQ(c.header, (std::vector<std::string>{"t", "C", "C_eta"}));
    EXPECT_NEAR(std::stod(c.rows.front()[1]), 101.0, 0.03);
    const CsvTable chi = read_csv_file(path("o/oracle_chi.csv"));
    EXPECT_EQ(chi.rows.size(), 50u);
}

TEST_F(CliTest, ManifestReproducesOutputs) {
    ASSERT_EQ(run("simulate --config " + kConfigs + "/fig3.cfg --seed 11 --out " + path("m1")), 0);
    const auto manifest = nlohmann::json::parse(slurp(path("m1/manifest.json")));
    const auto &run_info = manifest["runs"]["simulate"];
    EXPECT_EQ(run_info["seed"].get<int>(), 11);
    write("from_manifest.cfg", run_info["config"].dump());
    ASSERT_EQ(run("simulate --config " + path("from_manifest.cfg") + " --out " + path("m2")), 0);
    const auto again = nlohmann::json::parse(slurp(path("m2/manifest.json")));
    EXPECT_EQ(again["runs"]["simulate"]["config_hash"], run_info["config_hash"]);
    EXPECT_EQ(again["runs"]["simulate"]["outputs"], run_info["outputs"]);
    EXPECT_EQ(slurp(path("m1/shots_dd.csv")), slurp(path("m2/shots_dd.csv")));
}

}  // namespace
}  // namespace qnoise
