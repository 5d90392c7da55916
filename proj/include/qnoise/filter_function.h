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

#ifndef QNOISE_FILTER_FUNCTION_H
#define QNOISE_FILTER_FUNCTION_H

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qnoise/pulse_sequence.h"

namespace qnoise {

/// Points u_m = m * step for m = 0..intervals.
struct UniformGrid {
    double step = 0.0;
    std::size_t intervals = 0;

    std::size_t size() const { return intervals + 1; }
    double at(std::size_t m) const { return step * static_cast<double>(m); }
    double end() const { return at(intervals); }
    bool matches(const UniformGrid &other) const;

    /// Grid on [0, length] with `intervals` panels.
    static UniformGrid spanning(double length, std::size_t intervals);
    /// Grid on [0, length] with at least `points_per_unit` panels per unit time.
    static UniformGrid with_density(double length, double points_per_unit);
};

class GridMismatch : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

/// Correlation filter F(u) = 2 int_0^{tau-u} y(s) y(s+u) ds of one sequence,
/// sampled on a grid. Grid points past the sequence duration carry 0.
struct FilterFunctionCurve {
    std::string sequence_id;
    double duration = 0.0;
    UniformGrid grid;
    std::vector<double> values;
};

/// Exact value of F(u); 0 outside [0, tau].
double correlation_filter_value(const PulseFunction &y, double u);

FilterFunctionCurve correlation_filter(const PulseSequence &seq, std::size_t intervals);
FilterFunctionCurve correlation_filter(const PulseSequence &seq, const UniformGrid &grid);

/// Shared grid on [0, max duration] for a set of sequences.
UniformGrid common_grid(std::span<const PulseSequence> sequences, double points_per_unit);

/// Linear resampling onto another grid, zero past the curve's duration.
FilterFunctionCurve resample(const FilterFunctionCurve &curve, const UniformGrid &grid);

/// Gram matrix of filter functions under the L2 inner product on [0, inf).
struct OverlapMatrix {
    Eigen::MatrixXd values;
    std::vector<std::string> sequence_ids;
    UniformGrid grid;
};

/// Composite trapezoid overlaps on the filters' common grid. Throws
/// GridMismatch when the filters were sampled on different grids.
OverlapMatrix overlap_matrix(std::span<const FilterFunctionCurve> filters);

/// Trapezoid integral of samples on a grid.
double trapezoid(std::span<const double> values, double step);

/// Sorted points in [0, tau] where F may have a kink: all pairwise
/// differences of pulse function breakpoints, plus 0 and tau.
std::vector<double> filter_kinks(const PulseSequence &seq);

/// int_0^tau F(u) g(u) du with Gauss-Legendre panels between the filter's
/// kinks (and any extra breakpoints of g). Exact for polynomial g of degree
/// up to 14 on each panel.
double integrate_against_filter(const PulseSequence &seq,
                                const std::function<double(double)> &g,
                                std::span<const double> extra_breakpoints = {},
                                std::size_t subdivisions = 1);

/// Coherence integral chi = int_0^tau C(u) F(u) du for a correlation function.
double coherence_integral(const PulseSequence &seq,
                          const std::function<double(double)> &correlation,
                          std::size_t subdivisions = 8);

/// Exact inner product int F_a F_b du (F piecewise linear).
double filter_inner_product(const PulseSequence &a, const PulseSequence &b);

}  // namespace qnoise

#endif  // QNOISE_FILTER_FUNCTION_H
