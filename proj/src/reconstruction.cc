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

#include "qnoise/reconstruction.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "qnoise/pseudoinverse.h"

namespace qnoise {

LongTimeEstimate long_time_correlator(std::span<const MeasurementRecord> records,
                                      std::size_t lag,
                                      double evolution_time) {
    const std::size_t n = records.size();
    if (lag < 1 || n < 3 || lag > n - 2) {
        throw std::out_of_range(fmt::format("lag {} outside [1, N - 2] for N = {}", lag, n));
    }
    if (!(evolution_time > 0)) {
        throw std::invalid_argument("evolution time must be positive");
    }
    for (const auto &r : records) {
        if (r.basis != Basis::kY) {
            throw std::invalid_argument("long-time correlator needs y-basis records");
        }
    }
    const std::size_t pairs = n - lag;
    double sum = 0;
    for (std::size_t i = 0; i < pairs; ++i) {
        sum += records[i].outcome * records[i + lag].outcome;
    }
    const double mean = sum / static_cast<double>(pairs);
    double squares = 0;
    for (std::size_t i = 0; i < pairs; ++i) {
        const double d = records[i].outcome * records[i + lag].outcome - mean;
        squares += d * d;
    }
    const double sample_var = squares / static_cast<double>(pairs - 1);
    const double scale = 1.0 / (evolution_time * evolution_time);
    return {lag,
            records[lag].start_time - records[0].start_time,
            mean * scale,
            std::sqrt(sample_var / static_cast<double>(pairs)) * scale,
            pairs};
}

std::vector<LongTimeEstimate> long_time_correlators(std::span<const MeasurementRecord> records,
                                                    std::size_t max_lag,
                                                    double evolution_time) {
    std::vector<LongTimeEstimate> out;
    if (records.size() < 3) {
        return out;
    }
    const std::size_t last = std::min(max_lag, records.size() - 2);
    for (std::size_t k = 1; k <= last; ++k) {
        out.push_back(long_time_correlator(records, k, evolution_time));
    }
    return out;
}

VarianceEstimate variance_estimate(std::span<const MeasurementRecord> x_records, double evolution_time) {
    if (x_records.size() < 2) {
        throw std::invalid_argument("variance estimate needs at least 2 shots");
    }
    if (!(evolution_time > 0)) {
        throw std::invalid_argument("evolution time must be positive");
    }
    double sum = 0;
    for (const auto &r : x_records) {
        if (r.basis != Basis::kX) {
            throw std::invalid_argument("variance estimate needs x-basis records");
        }
        sum += r.outcome;
    }
    const auto n = static_cast<double>(x_records.size());
    const double mean = sum / n;
    double squares = 0;
    for (const auto &r : x_records) {
        squares += (r.outcome - mean) * (r.outcome - mean);
    }
    const double scale = 2.0 / (evolution_time * evolution_time);
    return {(1 - mean) * scale, std::sqrt(squares / (n - 1) / n) * scale, x_records.size()};
}

OffsetSubtraction subtract_offset(std::span<const LongTimeEstimate> full, LagWindow tail) {
    double sum = 0;
    double var_sum = 0;
    std::size_t count = 0;
    for (const auto &e : full) {
        if (e.lag >= tail.first && e.lag <= tail.last) {
            sum += e.value;
            var_sum += e.standard_error * e.standard_error;
            ++count;
        }
    }
    if (count == 0) {
        throw std::invalid_argument(
            fmt::format("tail window [{}, {}] contains no long-time estimates", tail.first, tail.last));
    }
    OffsetSubtraction out;
    out.offset_squared = sum / static_cast<double>(count);
    // Treats tail estimates as independent; they are not, so this is a lower bound.
    out.offset_standard_error = std::sqrt(var_sum) / static_cast<double>(count);
    out.stochastic.assign(full.begin(), full.end());
    for (auto &e : out.stochastic) {
        e.value -= out.offset_squared;
    }
    return out;
}

std::optional<CoherenceIntegral> chi_from_coherence(const CoherenceEstimate &estimate, double floor_sigmas) {
    const double m = estimate.coherence;
    if (!(m > 0) || m <= floor_sigmas * estimate.standard_error) {
        return std::nullopt;
    }
    return CoherenceIntegral{estimate.family, estimate.tau, -2.0 * std::log(m), 2.0 * estimate.standard_error / m};
}

double coherence_from_chi(double chi) {
    return std::exp(-0.5 * chi);
}

namespace {

Eigen::MatrixXd sample_matrix(std::span<const FilterFunctionCurve> filters, const OverlapMatrix &overlap) {
    if (filters.empty()) {
        throw std::invalid_argument("reconstruction needs at least one filter");
    }
    const auto n = static_cast<Eigen::Index>(filters.size());
    if (overlap.values.rows() != n || overlap.values.cols() != n) {
        throw std::invalid_argument(fmt::format("overlap matrix is {}x{} but there are {} filters",
                                                overlap.values.rows(), overlap.values.cols(), n));
    }
    const UniformGrid &grid = overlap.grid;
    Eigen::MatrixXd samples(static_cast<Eigen::Index>(grid.size()), n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto &f = filters[static_cast<std::size_t>(j)];
        if (!f.grid.matches(grid) || f.values.size() != grid.size()) {
            throw GridMismatch(fmt::format("filter '{}' does not share the overlap grid", f.sequence_id));
        }
        samples.col(j) = Eigen::Map<const Eigen::VectorXd>(f.values.data(), static_cast<Eigen::Index>(f.values.size()));
    }
    return samples;
}

std::vector<double> quality_from(const Eigen::MatrixXd &samples,
                                 const Eigen::MatrixXd &pinv,
                                 const Eigen::MatrixXd &overlap) {
    const Eigen::MatrixXd kernel = pinv * overlap * pinv;
    const Eigen::MatrixXd projected = samples * kernel;
    std::vector<double> q(static_cast<std::size_t>(samples.rows()));
    for (Eigen::Index m = 0; m < samples.rows(); ++m) {
        q[static_cast<std::size_t>(m)] = projected.row(m).dot(samples.row(m));
    }
    return q;
}

}  // namespace

ShortTimeEstimate reconstruct_short_time(std::span<const double> chi,
                                         std::span<const FilterFunctionCurve> filters,
                                         const OverlapMatrix &overlap,
                                         double rcond,
                                         double quality_ratio) {
    if (chi.size() != filters.size()) {
        throw std::invalid_argument(
            fmt::format("{} coherence integrals but {} filters", chi.size(), filters.size()));
    }
    const Eigen::MatrixXd samples = sample_matrix(filters, overlap);
    const TruncatedPseudoinverse pinv = truncated_pseudoinverse(overlap.values, rcond);
    const Eigen::VectorXd chi_vec = Eigen::Map<const Eigen::VectorXd>(chi.data(), static_cast<Eigen::Index>(chi.size()));

    ShortTimeEstimate out;
    out.grid = overlap.grid;
    out.weights = pinv.matrix.transpose() * chi_vec;
    const Eigen::VectorXd estimate = samples * out.weights;
    out.estimate.assign(estimate.data(), estimate.data() + estimate.size());
    out.quality = quality_from(samples, pinv.matrix, overlap.values);
    out.reliable = quality_mask(out.quality, quality_ratio);
    out.singular_values = pinv.singular_values;
    out.rank = pinv.rank;
    out.rcond = rcond;
    out.quality_ratio = quality_ratio;
    return out;
}

ShortTimeEstimate reconstruct_short_time(std::span<const CoherenceIntegral> chis,
                                         std::span<const FilterFunctionCurve> filters,
                                         const OverlapMatrix &overlap,
                                         double rcond,
                                         double quality_ratio) {
    if (chis.size() != filters.size()) {
        throw std::invalid_argument(
            fmt::format("{} coherence integrals but {} filters", chis.size(), filters.size()));
    }
    std::vector<double> values(chis.size());
    for (std::size_t i = 0; i < chis.size(); ++i) {
        const auto &c = chis[i];
        const auto &f = filters[i];
        if (c.sequence_id != f.sequence_id || std::abs(c.tau - f.duration) > 1e-12 * std::max(1.0, f.duration)) {
            throw std::invalid_argument(fmt::format("coherence integral {}@{} is not aligned with filter {}@{}",
                                                    c.sequence_id, c.tau, f.sequence_id, f.duration));
        }
        values[i] = c.chi;
    }
    return reconstruct_short_time(std::span<const double>(values), filters, overlap, rcond, quality_ratio);
}

std::vector<double> quality_function(std::span<const FilterFunctionCurve> filters,
                                     const OverlapMatrix &overlap,
                                     double rcond) {
    const Eigen::MatrixXd samples = sample_matrix(filters, overlap);
    const TruncatedPseudoinverse pinv = truncated_pseudoinverse(overlap.values, rcond);
    return quality_from(samples, pinv.matrix, overlap.values);
}

std::vector<std::uint8_t> quality_mask(std::span<const double> quality, double ratio) {
    if (quality.empty()) {
        throw std::invalid_argument("quality curve is empty");
    }
    if (!(ratio > 0)) {
        throw std::invalid_argument("quality ratio must be positive");
    }
    const double threshold = *std::max_element(quality.begin(), quality.end()) / ratio;
    std::vector<std::uint8_t> mask(quality.size());
    for (std::size_t m = 0; m < quality.size(); ++m) {
        mask[m] = quality[m] >= threshold ? 1 : 0;
    }
    return mask;
}

double reliable_boundary(const UniformGrid &grid, std::span<const std::uint8_t> mask) {
    std::size_t m = 0;
    while (m < mask.size() && !mask[m]) {
        ++m;
    }
    if (m == mask.size()) {
        return 0.0;
    }
    while (m + 1 < mask.size() && mask[m + 1]) {
        ++m;
    }
    return grid.at(m);
}

}  // namespace qnoise
