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

#include "qnoise/noise_model.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace qnoise {

void Fluctuator::validate() const {
    if (!(amplitude >= 0) || !std::isfinite(amplitude)) {
        throw std::invalid_argument(fmt::format("fluctuator '{}': amplitude must be >= 0", label));
    }
    if (!(rate >= 0) || !std::isfinite(rate)) {
        throw std::invalid_argument(fmt::format("fluctuator '{}': rate must be >= 0", label));
    }
}

void NoiseModel::validate() const {
    if (!std::isfinite(offset)) {
        throw std::invalid_argument("noise offset must be finite");
    }
    for (const auto &f : fluctuators) {
        f.validate();
    }
}

FluctuatorState::FluctuatorState(std::vector<int> signs) : signs_(std::move(signs)) {
    for (int s : signs_) {
        if (s != 1 && s != -1) {
            throw std::invalid_argument("fluctuator sign must be +1 or -1");
        }
    }
}

FluctuatorState FluctuatorState::all_up(std::size_t count) {
    return FluctuatorState(std::vector<int>(count, 1));
}

FluctuatorState FluctuatorState::stationary(std::size_t count, RandomStream &rng) {
    std::vector<int> signs(count);
    for (auto &s : signs) {
        s = rng.random_sign();
    }
    return FluctuatorState(std::move(signs));
}

double FluctuatorState::field(const NoiseModel &model) const {
    double total = model.offset;
    for (std::size_t i = 0; i < signs_.size(); ++i) {
        total += signs_[i] * model.fluctuators[i].amplitude;
    }
    return total;
}

NoiseTrajectory::NoiseTrajectory(double start, double end, std::vector<NoiseSegment> segments)
    : start_(start), end_(end), segments_(std::move(segments)) {
    if (!(end_ > start_)) {
        throw std::invalid_argument("trajectory end must exceed start");
    }
    if (segments_.empty() || segments_.front().start != start_) {
        throw std::invalid_argument("first trajectory segment must begin at the trajectory start");
    }
    for (std::size_t i = 1; i < segments_.size(); ++i) {
        if (!(segments_[i].start > segments_[i - 1].start) || !(segments_[i].start < end_)) {
            throw std::invalid_argument("trajectory segment starts must strictly increase inside [start, end)");
        }
    }
}

double NoiseTrajectory::segment_end(std::size_t i) const {
    return i + 1 < segments_.size() ? segments_[i + 1].start : end_;
}

double NoiseTrajectory::value_at(double t) const {
    if (t < start_ || t > end_) {
        throw std::out_of_range("time outside trajectory");
    }
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double x, const NoiseSegment &s) { return x < s.start; });
    return std::prev(it)->value;
}

TrajectorySample sample_trajectory(const NoiseModel &model,
                                   const FluctuatorState &initial,
                                   double t0,
                                   double duration,
                                   RandomStream &rng) {
    if (!(duration > 0)) {
        throw std::invalid_argument("trajectory duration must be positive");
    }
    if (initial.size() != model.fluctuators.size()) {
        throw std::invalid_argument("fluctuator state does not match the noise model");
    }
    const double t1 = t0 + duration;

    struct Flip {
        double time;
        std::size_t fluctuator;
    };
    std::vector<Flip> flips;
    for (std::size_t i = 0; i < model.fluctuators.size(); ++i) {
        const double rate = model.fluctuators[i].rate;
        if (rate == 0) {
            continue;
        }
        double t = t0 + rng.exponential(rate);
        while (t < t1) {
            flips.push_back({t, i});
            t += rng.exponential(rate);
        }
    }
    std::stable_sort(flips.begin(), flips.end(),
                     [](const Flip &a, const Flip &b) { return a.time < b.time; });

    FluctuatorState state = initial;
    std::vector<NoiseSegment> segments{{t0, state.field(model)}};
    for (const auto &flip : flips) {
        state.flip(flip.fluctuator);
        const double value = state.field(model);
        if (flip.time == segments.back().start) {
            // Coincident flips collapse into one segment.
            segments.back().value = value;
        } else {
            segments.push_back({flip.time, value});
        }
    }
    return {NoiseTrajectory(t0, t1, std::move(segments)), std::move(state)};
}

double odd_flip_probability(double rate, double gap) {
    return -0.5 * std::expm1(-2.0 * rate * gap);
}

int propagate_state(const Fluctuator &fluctuator, int sign, double gap, RandomStream &rng) {
    if (gap < 0) {
        throw std::invalid_argument("propagation gap must be non-negative");
    }
    if (gap == 0 || fluctuator.rate == 0) {
        return sign;
    }
    return rng.bernoulli(odd_flip_probability(fluctuator.rate, gap)) ? -sign : sign;
}

FluctuatorState propagate_state(const NoiseModel &model,
                                const FluctuatorState &state,
                                double gap,
                                RandomStream &rng) {
    if (state.size() != model.fluctuators.size()) {
        throw std::invalid_argument("fluctuator state does not match the noise model");
    }
    std::vector<int> signs(state.size());
    for (std::size_t i = 0; i < signs.size(); ++i) {
        signs[i] = propagate_state(model.fluctuators[i], state[i], gap, rng);
    }
    return FluctuatorState(std::move(signs));
}

double stochastic_correlation(const NoiseModel &model, double t) {
    double c = 0;
    for (const auto &f : model.fluctuators) {
        c += f.amplitude * f.amplitude * std::exp(-2.0 * f.rate * std::abs(t));
    }
    return c;
}

double analytic_correlation(const NoiseModel &model, double t) {
    return model.offset * model.offset + stochastic_correlation(model, t);
}

void write_trajectory_csv(std::ostream &out, const NoiseTrajectory &trajectory) {
    out << "t_start,value\n";
    for (const auto &s : trajectory.segments()) {
        out << fmt::format("{:.17g},{:.17g}\n", s.start, s.value);
    }
}

}  // namespace qnoise
