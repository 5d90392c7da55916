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

#ifndef QNOISE_QUBIT_SIMULATOR_H
#define QNOISE_QUBIT_SIMULATOR_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qnoise/noise_model.h"
#include "qnoise/pulse_sequence.h"
#include "qnoise/random.h"

namespace qnoise {

// Phase convention: a qubit prepared in +x and precessed by phase phi has
// <sigma_x> = cos(phi) and <sigma_y> = -sin(phi).

enum class Basis { kX, kY };

std::string_view basis_name(Basis basis);
Basis parse_basis(std::string_view name);

enum class MeasurementKind { kFreeEvolution, kDecoupled };

struct MeasurementSpec {
    MeasurementKind kind = MeasurementKind::kFreeEvolution;
    PulseSequence sequence;
    Basis basis = Basis::kY;

    double evolution_time() const { return sequence.duration; }
    /// "<sequence name>@<duration>", the key used in shot tables.
    std::string id() const;
};

/// Splits a spec id into (family, duration).
std::pair<std::string, double> parse_spec_id(std::string_view id);

struct MeasurementRecord {
    std::size_t index = 0;
    double start_time = 0.0;
    std::string spec_id;
    Basis basis = Basis::kY;
    int outcome = 1;

    bool operator==(const MeasurementRecord &other) const = default;
};

struct CoherenceEstimate {
    std::string family;
    double tau = 0.0;
    double coherence = 0.0;  // min(1, sqrt(<sigma_x>^2 + <sigma_y>^2))
    double standard_error = 0.0;
    std::size_t shots = 0;
};

/// phi = int_0^tau y(s) eta(t0 + s) ds where t0 is the trajectory start.
/// Both factors are piecewise constant, so the sum is exact.
double accumulate_phase(const NoiseTrajectory &trajectory, const PulseFunction &y);

/// Probability of outcome +1.
double born_probability(double phase, Basis basis);
int born_measure(double phase, Basis basis, RandomStream &rng);

/// Sequential measurement chain: the j-th measurement starts at j * spacing,
/// and the fluctuator state at each start is conditioned on the end of the
/// previous trajectory. The first state is drawn from the stationary
/// distribution.
class MeasurementChain {
 public:
    MeasurementChain(NoiseModel model, double spacing, RandomStream rng);

    /// Runs one measurement and advances the chain to the next slot.
    MeasurementRecord measure(const MeasurementSpec &spec);

    std::size_t count() const { return count_; }
    double spacing() const { return spacing_; }
    const NoiseModel &model() const { return model_; }
    const FluctuatorState &state() const { return state_; }
    /// Phase of the most recent measurement.
    double last_phase() const { return last_phase_; }

 private:
    NoiseModel model_;
    double spacing_;
    RandomStream rng_;
    FluctuatorState state_;
    std::size_t count_ = 0;
    double last_phase_ = 0.0;
};

std::vector<MeasurementRecord> run_long_time_chain(MeasurementChain &chain,
                                                   std::size_t count,
                                                   double evolution_time,
                                                   Basis basis);

std::vector<MeasurementRecord> run_long_time_chain(const NoiseModel &model,
                                                   std::size_t count,
                                                   double spacing,
                                                   double evolution_time,
                                                   Basis basis,
                                                   std::uint64_t seed);

/// One row of a sequence campaign: `divisions` durations equally spaced over
/// [t_min, t_max] (inclusive), `repetitions` shots each.
struct CampaignRow {
    std::string family;
    double t_min = 0.0;
    double t_max = 0.0;
    int divisions = 1;
    int repetitions = 1;
    double pulse_width = 0.0;

    std::vector<double> durations() const;
};

struct CampaignResult {
    std::vector<MeasurementRecord> records;
    std::vector<CoherenceEstimate> estimates;
};

/// Runs every (row, duration) block contiguously; shots within a block
/// alternate x and y basis.
CampaignResult run_dd_campaign(MeasurementChain &chain, std::span<const CampaignRow> table);

CampaignResult run_dd_campaign(const NoiseModel &model,
                               std::span<const CampaignRow> table,
                               double spacing,
                               std::uint64_t seed);

/// Coherence magnitude from the x and y shots of one block, with a
/// first-order standard error.
CoherenceEstimate estimate_coherence(std::string family, double tau, std::span<const MeasurementRecord> shots);

/// Groups decoupled-sequence shots by spec id (first-appearance order) and
/// estimates each block's coherence.
std::vector<CoherenceEstimate> estimate_coherences(std::span<const MeasurementRecord> shots);

}  // namespace qnoise

#endif  // QNOISE_QUBIT_SIMULATOR_H
