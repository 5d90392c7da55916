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

#ifndef QNOISE_CONFIG_H
#define QNOISE_CONFIG_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qnoise/noise_model.h"
#include "qnoise/qubit_simulator.h"
#include "qnoise/reconstruction.h"

namespace qnoise {

struct ScheduleConfig {
    double spacing = 1.0;                   // Delta t between measurement starts
    std::size_t long_count = 5000;          // N_l
    double long_evolution_time = 0.04;      // delta t of the long-time free evolutions (y basis)
    std::size_t variance_count = 0;         // x-basis free evolutions for the variance estimate
    double variance_evolution_time = 0.004;
};

struct ReconstructionConfig {
    double points_per_unit_time = 2000.0;
    double rcond = 1e-6;
    double quality_ratio = 5.0;
    std::size_t max_lag = 0;                // 0: half of the long-time chain
    std::optional<LagWindow> tail_window;   // default: last tenth of the lags
    double floor_sigmas = 3.0;
};

struct FilterEntry {
    std::string family;
    double duration = 1.0;
    double pulse_width = 0.0;
};

struct FrequencyConfig {
    double omega_min = 0.1;
    double omega_max = 1000.0;
    std::size_t points = 400;
};

struct OracleConfig {
    double t_min = 1e-3;
    double t_max = 1e3;
    std::size_t points = 241;
};

/// Full experiment description. JSON text; unknown keys are rejected.
struct ExperimentConfig {
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    std::optional<NoiseModel> noise;
    ScheduleConfig schedule;
    std::vector<CampaignRow> campaign;
    ReconstructionConfig reconstruction;
    std::vector<FilterEntry> filters;
    std::optional<FrequencyConfig> frequency;
    OracleConfig oracle;

    /// Sequences of the campaign in chain order, one per (row, duration).
    std::vector<PulseSequence> campaign_sequences() const;
    /// Explicit filter list if present, else the campaign sequences.
    std::vector<PulseSequence> filter_sequences() const;
    /// Lag window for the offset subtraction given the lag count actually used.
    LagWindow tail_for(std::size_t max_lag) const;
    std::size_t max_lag_for(std::size_t long_count) const;
};

/// Parses and validates. Throws ConfigError naming the offending field.
ExperimentConfig parse_config(const std::string &text);
ExperimentConfig load_config(const std::string &path);

/// Canonical JSON form (sorted keys, all defaults filled in).
std::string config_to_json(const ExperimentConfig &config);

/// 64-bit FNV-1a over the bytes, as 16 hex digits.
std::string fnv1a_hex(const std::string &bytes);

void validate(const ExperimentConfig &config);

}  // namespace qnoise

#endif  // QNOISE_CONFIG_H
