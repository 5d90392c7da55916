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

#include "qnoise/config.h"

#include <gtest/gtest.h>

#include "qnoise/errors.h"

namespace qnoise {
namespace {

const char *kMinimal = R"json({
  "seed": 5,
  "noise": {"offset": 0.5, "fluctuators": [{"amplitude": 1, "rate": 10, "label": "a"}]},
  "campaign": [{"family": "UDD(2)", "time_range": [0.1, 0.5], "divisions": 3, "repetitions": 4}]
})json";

std::string error_of(const std::string &text) {
    try {
        parse_config(text);
    } catch (const ConfigError &e) {
        return e.what();
    }
    return "";
}

TEST(Config, DefaultsFilled) {
    const ExperimentConfig c = parse_config(kMinimal);
    EXPECT_EQ(c.seed, 5u);
    ASSERT_TRUE(c.noise);
    EXPECT_EQ(c.noise->offset, 0.5);
    EXPECT_EQ(c.schedule.spacing, 1.0);
    EXPECT_EQ(c.schedule.long_count, 5000u);
    EXPECT_EQ(c.reconstruction.rcond, 1e-6);
    EXPECT_EQ(c.reconstruction.quality_ratio, 5.0);
    EXPECT_EQ(c.reconstruction.points_per_unit_time, 2000.0);
    EXPECT_EQ(c.reconstruction.floor_sigmas, 3.0);
    ASSERT_EQ(c.campaign.size(), 1u);
    EXPECT_EQ(c.campaign_sequences().size(), 3u);
    EXPECT_EQ(c.filter_sequences().size(), 3u);
}

TEST(Config, LagDefaults) {
    ExperimentConfig c = parse_config(kMinimal);
    EXPECT_EQ(c.max_lag_for(5000), 2500u);
    EXPECT_EQ(c.tail_for(2500).first, 2250u);
    EXPECT_EQ(c.tail_for(2500).last, 2500u);
    c.reconstruction.max_lag = 9999;
    EXPECT_EQ(c.max_lag_for(100), 98u);
}

TEST(Config, CanonicalRoundTrip) {
    const ExperimentConfig c = parse_config(kMinimal);
    const std::string canonical = config_to_json(c);
    const ExperimentConfig again = parse_config(canonical);
    EXPECT_EQ(config_to_json(again), canonical);
    EXPECT_EQ(fnv1a_hex(canonical), fnv1a_hex(config_to_json(again)));
}

TEST(Config, Fnv1aReference) {
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Config, FieldLevelErrors) {
    EXPECT_NE(error_of(R"({"sed": 1})").find("config.sed: unknown key"), std::string::npos);
    EXPECT_NE(error_of(R"({"schedule": {"spacing": -1}})").find("schedule.spacing"), std::string::npos);
    EXPECT_NE(error_of(R"({"schedule": {"spacing": "x"}})").find("schedule.spacing: expected a number"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"schedule": {"long_evolution_time": 2}})").find("schedule.long_evolution_time"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"campaign": [{"family": "FE", "time_range": [0.1, 2.0], "divisions": 2,
                          "repetitions": 2}]})")
                  .find("campaign[0].time_range"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"campaign": [{"family": "FE", "time_range": [0.1, 0.5], "divisions": 0,
                          "repetitions": 2}]})")
                  .find("campaign[0].divisions"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"campaign": [{"family": "XY8", "time_range": [0.1, 0.5], "divisions": 2,
                          "repetitions": 2}]})")
                  .find("campaign[0]"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"campaign": [{"time_range": [0.1, 0.5], "divisions": 2, "repetitions": 2}]})")
                  .find("campaign[0].family: required"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"noise": {"fluctuators": [{"amplitude": 1}]}})").find("noise.fluctuators[0].rate"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"noise": {"fluctuators": [{"amplitude": 1, "rate": 1, "gamma": 2}]}})")
                  .find("noise.fluctuators[0].gamma: unknown key"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"reconstruction": {"rcond": 0}})").find("reconstruction.rcond"), std::string::npos);
    EXPECT_NE(error_of(R"({"reconstruction": {"tail_window": [5, 2]}})").find("reconstruction.tail_window"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"seed": -3})").find("seed"), std::string::npos);
    EXPECT_NE(error_of("{ not json").find("not valid JSON"), std::string::npos);
    EXPECT_NE(error_of(R"({"frequency": {"omega_min": 10, "omega_max": 1}})").find("frequency.omega_max"),
              std::string::npos);
}

TEST(Config, MissingFile) {
    EXPECT_THROW(load_config("/nonexistent/x.cfg"), ConfigError);
}

}  // namespace
}  // namespace qnoise
