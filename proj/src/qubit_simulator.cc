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

#include "qnoise/qubit_simulator.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

namespace qnoise {

std::string_view basis_name(Basis basis) {
    return basis == Basis::kX ? "x" : "y";
}

Basis parse_basis(std::string_view name) {
    if (name == "x" || name == "X") {
        return Basis::kX;
    }
    if (name == "y" || name == "Y") {
        return Basis::kY;
    }
    throw std::invalid_argument(fmt::format("unknown measurement basis '{}'", name));
}

std::string MeasurementSpec::id() const {
    return fmt::format("{}@{:.17g}", sequence.name, sequence.duration);
}

std::pair<std::string, double> parse_spec_id(std::string_view id) {
    const auto at = id.rfind('@');
    if (at == std::string_view::npos || at == 0 || at + 1 == id.size()) {
        throw std::invalid_argument(fmt::format("malformed spec id '{}'", id));
    }
    const std::string number(id.substr(at + 1));
    std::size_t used = 0;
    double tau = 0;
    try {
        tau = std::stod(number, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != number.size() || !(tau > 0)) {
        throw std::invalid_argument(fmt::format("malformed duration in spec id '{}'", id));
    }
    return {std::string(id.substr(0, at)), tau};
}

double accumulate_phase(const NoiseTrajectory &trajectory, const PulseFunction &y) {
    const double tau = y.duration();
    if (trajectory.duration() < tau - 1e-12 * std::max(1.0, std::abs(trajectory.end()))) {
        throw std::invalid_argument("noise trajectory does not cover the pulse sequence");
    }
    const double t0 = trajectory.start();
    const auto &segments = trajectory.segments();
    const auto &b = y.breakpoints();
    const auto &v = y.values();
    double phase = 0;
    std::size_t k = 0;  // pulse piece
    std::size_t i = 0;  // noise segment
    double s = 0;
    while (s < tau && k < v.size()) {
        const double piece_end = b[k + 1];
        // The last segment is taken to reach tau; t0 + tau - t0 need not equal tau.
        const double segment_end =
            i + 1 < segments.size() ? std::min(segments[i + 1].start - t0, tau) : tau;
        const double next = std::min(piece_end, segment_end);
        phase += v[k] * segments[i].value * (next - s);
        s = next;
        if (piece_end <= next) {
            ++k;
        }
        if (segment_end <= next && i + 1 < segments.size()) {
            ++i;
        }
    }
    return phase;
}

double born_probability(double phase, Basis basis) {
    if (basis == Basis::kY) {
        return 0.5 * (1 - std::sin(phase));
    }
    return 0.5 * (1 + std::cos(phase));
}

int born_measure(double phase, Basis basis, RandomStream &rng) {
    return rng.bernoulli(born_probability(phase, basis)) ? 1 : -1;
}

MeasurementChain::MeasurementChain(NoiseModel model, double spacing, RandomStream rng)
    : model_(std::move(model)), spacing_(spacing), rng_(std::move(rng)) {
    model_.validate();
    if (!(spacing_ > 0)) {
        throw std::invalid_argument("measurement spacing must be positive");
    }
    state_ = FluctuatorState::stationary(model_.fluctuators.size(), rng_);
}

MeasurementRecord MeasurementChain::measure(const MeasurementSpec &spec) {
    const double tau = spec.evolution_time();
    if (!(tau > 0) || tau > spacing_ * (1 + 1e-12)) {
        throw std::invalid_argument(
            fmt::format("evolution time {} must lie in (0, spacing = {}]", tau, spacing_));
    }
    const double start = static_cast<double>(count_) * spacing_;
    auto sample = sample_trajectory(model_, state_, start, tau, rng_);
    last_phase_ = accumulate_phase(sample.trajectory, pulse_function(spec.sequence));
    MeasurementRecord record{count_, start, spec.id(), spec.basis, born_measure(last_phase_, spec.basis, rng_)};
    state_ = propagate_state(model_, sample.final_state, std::max(0.0, spacing_ - tau), rng_);
    ++count_;
    return record;
}

std::vector<MeasurementRecord> run_long_time_chain(MeasurementChain &chain,
                                                   std::size_t count,
                                                   double evolution_time,
                                                   Basis basis) {
    const MeasurementSpec spec{MeasurementKind::kFreeEvolution, free_evolution(evolution_time), basis};
    std::vector<MeasurementRecord> records;
    records.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        records.push_back(chain.measure(spec));
    }
    return records;
}

std::vector<MeasurementRecord> run_long_time_chain(const NoiseModel &model,
                                                   std::size_t count,
                                                   double spacing,
                                                   double evolution_time,
                                                   Basis basis,
                                                   std::uint64_t seed) {
    if (count < 2) {
        throw std::invalid_argument("long-time chain needs at least 2 measurements");
    }
    if (!(evolution_time > 0) || evolution_time > spacing) {
        throw std::invalid_argument("free-evolution time must lie in (0, spacing]");
    }
    MeasurementChain chain(model, spacing, RandomStream(seed));
    return run_long_time_chain(chain, count, evolution_time, basis);
}

std::vector<double> CampaignRow::durations() const {
    if (divisions < 1) {
        throw std::invalid_argument(fmt::format("{}: divisions must be >= 1", family));
    }
    if (divisions == 1) {
        return {t_min};
    }
    std::vector<double> out(static_cast<std::size_t>(divisions));
    for (int k = 0; k < divisions; ++k) {
        out[static_cast<std::size_t>(k)] = t_min + (t_max - t_min) * k / (divisions - 1);
    }
    return out;
}

namespace {

void validate_table(std::span<const CampaignRow> table, double spacing) {
    if (table.empty()) {
        throw std::invalid_argument("campaign table is empty");
    }
    for (const auto &row : table) {
        if (!(row.t_min > 0) || row.t_max < row.t_min) {
            throw std::invalid_argument(fmt::format("{}: time range must satisfy 0 < t_min <= t_max", row.family));
        }
        if (row.t_max > spacing * (1 + 1e-12)) {
            throw std::invalid_argument(
                fmt::format("{}: duration {} exceeds the measurement spacing {}", row.family, row.t_max, spacing));
        }
        if (row.divisions < 1 || row.repetitions < 1) {
            throw std::invalid_argument(fmt::format("{}: divisions and repetitions must be >= 1", row.family));
        }
    }
}

}  // namespace

CampaignResult run_dd_campaign(MeasurementChain &chain, std::span<const CampaignRow> table) {
    validate_table(table, chain.spacing());
    CampaignResult result;
    for (const auto &row : table) {
        for (double tau : row.durations()) {
            MeasurementSpec spec{MeasurementKind::kDecoupled, make_sequence(row.family, tau, row.pulse_width),
                                 Basis::kX};
            const std::size_t first = result.records.size();
            for (int r = 0; r < row.repetitions; ++r) {
                spec.basis = (r % 2 == 0) ? Basis::kX : Basis::kY;
                result.records.push_back(chain.measure(spec));
            }
            result.estimates.push_back(estimate_coherence(
                spec.sequence.name, tau, std::span(result.records).subspan(first)));
        }
    }
    return result;
}

CampaignResult run_dd_campaign(const NoiseModel &model,
                               std::span<const CampaignRow> table,
                               double spacing,
                               std::uint64_t seed) {
    MeasurementChain chain(model, spacing, RandomStream(seed));
    return run_dd_campaign(chain, table);
}

CoherenceEstimate estimate_coherence(std::string family, double tau, std::span<const MeasurementRecord> shots) {
    double sum_x = 0, sum_y = 0;
    std::size_t n_x = 0, n_y = 0;
    for (const auto &s : shots) {
        if (s.basis == Basis::kX) {
            sum_x += s.outcome;
            ++n_x;
        } else {
            sum_y += s.outcome;
            ++n_y;
        }
    }
    if (n_x == 0) {
        throw std::invalid_argument(fmt::format("{}@{}: coherence needs x-basis shots", family, tau));
    }
    const double mx = sum_x / static_cast<double>(n_x);
    const double my = n_y > 0 ? sum_y / static_cast<double>(n_y) : 0.0;
    const double var_x = (1 - mx * mx) / static_cast<double>(n_x);
    const double var_y = n_y > 0 ? (1 - my * my) / static_cast<double>(n_y) : 0.0;
    // The true magnitude never exceeds 1; sampling noise in the other basis can push the raw value past it.
    const double raw = std::hypot(mx, my);
    const double m = std::min(1.0, raw);
    const double se = raw > 0 ? std::sqrt(mx * mx * var_x + my * my * var_y) / raw : std::sqrt(0.5 * (var_x + var_y));
    return {std::move(family), tau, m, se, shots.size()};
}

std::vector<CoherenceEstimate> estimate_coherences(std::span<const MeasurementRecord> shots) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<MeasurementRecord>> groups;
    for (const auto &s : shots) {
        auto [it, inserted] = groups.try_emplace(s.spec_id);
        if (inserted) {
            order.push_back(s.spec_id);
        }
        it->second.push_back(s);
    }
    std::vector<CoherenceEstimate> out;
    for (const auto &id : order) {
        auto [family, tau] = parse_spec_id(id);
        out.push_back(estimate_coherence(std::move(family), tau, groups[id]));
    }
    return out;
}

}  // namespace qnoise
