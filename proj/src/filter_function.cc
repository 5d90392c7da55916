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

#include "qnoise/filter_function.h"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

namespace qnoise {

bool UniformGrid::matches(const UniformGrid &other) const {
    return intervals == other.intervals && std::abs(step - other.step) <= 1e-12 * std::max(step, other.step);
}

UniformGrid UniformGrid::spanning(double length, std::size_t intervals) {
    if (!(length > 0) || intervals < 1) {
        throw std::invalid_argument("grid needs a positive length and at least one interval");
    }
    return {length / static_cast<double>(intervals), intervals};
}

UniformGrid UniformGrid::with_density(double length, double points_per_unit) {
    if (!(points_per_unit > 0)) {
        throw std::invalid_argument("grid density must be positive");
    }
    const auto n = static_cast<std::size_t>(std::ceil(length * points_per_unit - 1e-9));
    return spanning(length, std::max<std::size_t>(n, 1));
}

double correlation_filter_value(const PulseFunction &y, double u) {
    const double tau = y.duration();
    if (u < 0 || u >= tau) {
        return 0.0;
    }
    const auto &b = y.breakpoints();
    const auto &v = y.values();
    const std::size_t last = v.size() - 1;
    const double length = tau - u;
    // Walk s over [0, tau - u]; i tracks the piece holding s, j the piece holding s + u.
    std::size_t i = 0;
    std::size_t j = y.piece_index(u);
    double s = 0;
    double acc = 0;
    while (s < length) {
        const double next_i = i < last ? b[i + 1] : tau;
        const double next_j = j < last ? b[j + 1] - u : length;
        const double next = std::min({next_i, next_j, length});
        acc += (next - s) * v[i] * v[j];
        s = next;
        if (next_i <= next && i < last) {
            ++i;
        }
        if (next_j <= next && j < last) {
            ++j;
        }
    }
    return 2.0 * acc;
}

FilterFunctionCurve correlation_filter(const PulseSequence &seq, std::size_t intervals) {
    if (intervals < 2) {
        throw std::invalid_argument("filter grid needs at least 2 intervals");
    }
    return correlation_filter(seq, UniformGrid::spanning(seq.duration, intervals));
}

FilterFunctionCurve correlation_filter(const PulseSequence &seq, const UniformGrid &grid) {
    const PulseFunction y = pulse_function(seq);
    FilterFunctionCurve curve{seq.name, seq.duration, grid, std::vector<double>(grid.size())};
    for (std::size_t m = 0; m < grid.size(); ++m) {
        curve.values[m] = correlation_filter_value(y, grid.at(m));
    }
    return curve;
}

UniformGrid common_grid(std::span<const PulseSequence> sequences, double points_per_unit) {
    if (sequences.empty()) {
        throw std::invalid_argument("common grid needs at least one sequence");
    }
    double longest = 0;
    for (const auto &seq : sequences) {
        longest = std::max(longest, seq.duration);
    }
    return UniformGrid::with_density(longest, points_per_unit);
}

FilterFunctionCurve resample(const FilterFunctionCurve &curve, const UniformGrid &grid) {
    FilterFunctionCurve out{curve.sequence_id, curve.duration, grid, std::vector<double>(grid.size(), 0.0)};
    const double limit = std::min(curve.duration, curve.grid.end());
    for (std::size_t m = 0; m < grid.size(); ++m) {
        const double u = grid.at(m);
        if (u > limit) {
            break;
        }
        const double x = u / curve.grid.step;
        const auto k = std::min(static_cast<std::size_t>(x), curve.grid.intervals - 1);
        const double frac = x - static_cast<double>(k);
        out.values[m] = (1 - frac) * curve.values[k] + frac * curve.values[k + 1];
    }
    return out;
}

double trapezoid(std::span<const double> values, double step) {
    if (values.size() < 2) {
        return 0.0;
    }
    double sum = 0.5 * (values.front() + values.back());
    for (std::size_t m = 1; m + 1 < values.size(); ++m) {
        sum += values[m];
    }
    return sum * step;
}

OverlapMatrix overlap_matrix(std::span<const FilterFunctionCurve> filters) {
    if (filters.empty()) {
        throw std::invalid_argument("overlap matrix needs at least one filter");
    }
    const UniformGrid &grid = filters.front().grid;
    for (const auto &f : filters) {
        if (!f.grid.matches(grid) || f.values.size() != grid.size()) {
            throw GridMismatch(fmt::format("filter '{}' is not sampled on the common grid", f.sequence_id));
        }
    }
    const auto n = static_cast<Eigen::Index>(filters.size());
    const auto points = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXd samples(points, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        samples.col(i) = Eigen::Map<const Eigen::VectorXd>(filters[static_cast<std::size_t>(i)].values.data(), points);
    }
    Eigen::VectorXd weights = Eigen::VectorXd::Constant(points, grid.step);
    weights(0) *= 0.5;
    weights(points - 1) *= 0.5;

    OverlapMatrix out;
    out.grid = grid;
    out.values = samples.transpose() * weights.asDiagonal() * samples;
    // Mirror the upper triangle so the result is symmetric bit for bit.
    out.values.triangularView<Eigen::StrictlyLower>() = out.values.transpose();
    for (const auto &f : filters) {
        out.sequence_ids.push_back(f.sequence_id);
    }
    return out;
}

std::vector<double> filter_kinks(const PulseSequence &seq) {
    const PulseFunction y = pulse_function(seq);
    const auto &b = y.breakpoints();
    std::vector<double> kinks;
    for (double bi : b) {
        for (double bj : b) {
            if (bi >= bj) {
                kinks.push_back(bi - bj);
            }
        }
    }
    std::sort(kinks.begin(), kinks.end());
    const double tol = 1e-14 * seq.duration;
    kinks.erase(std::unique(kinks.begin(), kinks.end(), [tol](double a, double c) { return c - a <= tol; }),
                kinks.end());
    return kinks;
}

namespace {

// 8-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 4> kGaussNodes = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                               0.9602898564975363};
constexpr std::array<double, 4> kGaussWeights = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                                 0.1012285362903763};

double gauss_legendre(const std::function<double(double)> &f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0;
    for (std::size_t k = 0; k < kGaussNodes.size(); ++k) {
        const double dx = half * kGaussNodes[k];
        sum += kGaussWeights[k] * (f(mid - dx) + f(mid + dx));
    }
    return sum * half;
}

}  // namespace

double integrate_against_filter(const PulseSequence &seq,
                                const std::function<double(double)> &g,
                                std::span<const double> extra_breakpoints,
                                std::size_t subdivisions) {
    const PulseFunction y = pulse_function(seq);
    std::vector<double> cuts = filter_kinks(seq);
    for (double x : extra_breakpoints) {
        if (x > 0 && x < seq.duration) {
            cuts.push_back(x);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    const auto integrand = [&](double u) { return correlation_filter_value(y, u) * g(u); };
    subdivisions = std::max<std::size_t>(subdivisions, 1);
    double total = 0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double a = cuts[k];
        const double width = (cuts[k + 1] - a) / static_cast<double>(subdivisions);
        if (!(width > 0)) {
            continue;
        }
        for (std::size_t p = 0; p < subdivisions; ++p) {
            total += gauss_legendre(integrand, a + width * static_cast<double>(p), a + width * static_cast<double>(p + 1));
        }
    }
    return total;
}

double coherence_integral(const PulseSequence &seq,
                          const std::function<double(double)> &correlation,
                          std::size_t subdivisions) {
    return integrate_against_filter(seq, correlation, {}, subdivisions);
}

double filter_inner_product(const PulseSequence &a, const PulseSequence &b) {
    const PulseFunction yb = pulse_function(b);
    const std::vector<double> kinks_b = filter_kinks(b);
    return integrate_against_filter(
        a, [&](double u) { return correlation_filter_value(yb, u); }, kinks_b);
}

}  // namespace qnoise
