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

#ifndef QNOISE_PIPELINE_H
#define QNOISE_PIPELINE_H

#include <optional>
#include <string>
#include <vector>

#include "qnoise/config.h"
#include "qnoise/filter_function.h"
#include "qnoise/qubit_simulator.h"
#include "qnoise/reconstruction.h"

namespace qnoise {

inline constexpr const char *kVersion = "0.1.0";

/// Everything one measurement chain produces, in chain order:
/// long-time free evolutions, variance shots, then the campaign.
struct SimulationResult {
    std::vector<MeasurementRecord> long_records;
    std::vector<MeasurementRecord> variance_records;
    CampaignResult campaign;
};

/// Requires config.noise. Deterministic in config.seed.
SimulationResult simulate(const ExperimentConfig &config);

struct ReconstructionInput {
    std::vector<MeasurementRecord> long_records;
    std::vector<MeasurementRecord> variance_records;
    std::vector<CoherenceEstimate> coherences;
};

struct DiscardedPoint {
    CoherenceEstimate estimate;
    std::string reason;
};

struct ReconstructionResult {
    std::vector<LongTimeEstimate> long_time;
    std::optional<OffsetSubtraction> offset;
    std::optional<LagWindow> tail;
    std::optional<VarianceEstimate> variance;
    std::vector<CoherenceIntegral> chis;
    std::vector<DiscardedPoint> discarded;
    std::vector<FilterFunctionCurve> filters;
    std::optional<ShortTimeEstimate> short_time;  // empty when no coherence data
    double boundary = 0.0;                        // end of the reliable region
};

/// Throws DataError when every coherence point is discarded.
ReconstructionResult reconstruct(const ExperimentConfig &config, const ReconstructionInput &input);

/// Coherence integrals from the model instead of shots, one per campaign sequence.
std::vector<CoherenceIntegral> analytic_chis(const ExperimentConfig &config);

/// Short-time reconstruction from exact coherence integrals.
ReconstructionResult reconstruct_analytic(const ExperimentConfig &config, const ReconstructionInput &input);

// Subcommands. Each writes into out_dir and records itself in out_dir/manifest.json.
void cmd_simulate(const ExperimentConfig &config, const std::string &out_dir);
void cmd_reconstruct(const ExperimentConfig &config,
                     const std::string &input_dir,
                     const std::string &out_dir,
                     bool analytic_chi);
void cmd_filters(const ExperimentConfig &config, const std::string &out_dir);
void cmd_oracle(const ExperimentConfig &config, const std::string &out_dir);

/// Loads shots_long.csv, shots_variance.csv and shots_dd.csv where present.
ReconstructionInput load_shots(const std::string &input_dir);

}  // namespace qnoise

#endif  // QNOISE_PIPELINE_H
