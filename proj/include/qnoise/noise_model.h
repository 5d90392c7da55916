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

#ifndef QNOISE_NOISE_MODEL_H
#define QNOISE_NOISE_MODEL_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qnoise/random.h"

namespace qnoise {

/// Two-state random telegraph process taking values +-amplitude and
/// switching at `rate`. A zero rate is a frozen fluctuator.
struct Fluctuator {
    double amplitude = 0.0;  // angular frequency
    double rate = 0.0;       // inverse time
    std::string label;

    void validate() const;
};

/// Classical dephasing noise: constant offset plus independent telegraph
/// fluctuators. The total field is offset + sum_i s_i * amplitude_i.
struct NoiseModel {
    double offset = 0.0;
    std::vector<Fluctuator> fluctuators;

    void validate() const;
};

/// One sign (+1/-1) per fluctuator of a model.
class FluctuatorState {
 public:
    FluctuatorState() = default;
    explicit FluctuatorState(std::vector<int> signs);

    static FluctuatorState all_up(std::size_t count);
    /// Draws each sign from the stationary distribution (+-1 equally likely).
    static FluctuatorState stationary(std::size_t count, RandomStream &rng);

    std::size_t size() const { return signs_.size(); }
    int operator[](std::size_t i) const { return signs_[i]; }
    void flip(std::size_t i) { signs_[i] = -signs_[i]; }
    const std::vector<int> &signs() const { return signs_; }

    /// offset + sum_i s_i * amplitude_i.
    double field(const NoiseModel &model) const;

    bool operator==(const FluctuatorState &other) const = default;

 private:
    std::vector<int> signs_;
};

struct NoiseSegment {
    double start;
    double value;

    bool operator==(const NoiseSegment &other) const = default;
};

/// Right-continuous piecewise-constant realization of the total field on
/// [start, end]. Segment values already include the offset.
class NoiseTrajectory {
 public:
    NoiseTrajectory(double start, double end, std::vector<NoiseSegment> segments);

    double start() const { return start_; }
    double end() const { return end_; }
    double duration() const { return end_ - start_; }
    const std::vector<NoiseSegment> &segments() const { return segments_; }

    /// End of segment i (start of i+1, or the trajectory end).
    double segment_end(std::size_t i) const;
    double value_at(double t) const;
    /// Number of value changes inside the trajectory.
    std::size_t switch_count() const { return segments_.size() - 1; }

    bool operator==(const NoiseTrajectory &other) const = default;

 private:
    double start_;
    double end_;
    std::vector<NoiseSegment> segments_;
};

struct TrajectorySample {
    NoiseTrajectory trajectory;
    FluctuatorState final_state;
};

/// Event-driven realization of the model on [t0, t0 + duration]. Flips of
/// fluctuator i form a Poisson process of rate gamma_i; flips of different
/// fluctuators are drawn independently and merged.
TrajectorySample sample_trajectory(const NoiseModel &model,
                                   const FluctuatorState &initial,
                                   double t0,
                                   double duration,
                                   RandomStream &rng);

/// Probability of an odd number of switches in `gap`: (1 - exp(-2 rate gap)) / 2.
double odd_flip_probability(double rate, double gap);

/// Sign after a gap during which the fluctuator is not observed.
int propagate_state(const Fluctuator &fluctuator, int sign, double gap, RandomStream &rng);

/// Propagates every fluctuator of `state` across `gap`.
FluctuatorState propagate_state(const NoiseModel &model,
                                const FluctuatorState &state,
                                double gap,
                                RandomStream &rng);

/// Full correlation C(t) = offset^2 + sum_i amplitude_i^2 exp(-2 rate_i |t|).
double analytic_correlation(const NoiseModel &model, double t);

/// Zero-mean part C_eta(t) = C(t) - offset^2.
double stochastic_correlation(const NoiseModel &model, double t);

/// Writes (t_start, value) rows with a header.
void write_trajectory_csv(std::ostream &out, const NoiseTrajectory &trajectory);

}  // namespace qnoise

#endif  // QNOISE_NOISE_MODEL_H
