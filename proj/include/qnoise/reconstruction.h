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

#ifndef QNOISE_RECONSTRUCTION_H
#define QNOISE_RECONSTRUCTION_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qnoise/filter_function.h"
#include "qnoise/qubit_simulator.h"

namespace qnoise {

// ---------------------------------------------------------------------------
// Long times: correlations between successive free-evolution shots.
// ---------------------------------------------------------------------------

struct LongTimeEstimate {
    std::size_t lag = 0;
    double time = 0.0;  // lag * spacing
    double value = 0.0;
    double standard_error = 0.0;
    std::size_t samples = 0;  // N - lag
};

/// Estimates the full correlation C(lag * spacing) as
/// sum_i r_i r_{i+lag} / (dt^2 (N - lag)) from a y-basis free-evolution
/// chain. The standard error comes from the sample variance of the products.
LongTimeEstimate long_time_correlator(std::span<const MeasurementRecord> records,
                                      std::size_t lag,
                                      double evolution_time);

/// Lags 1..max_lag (clamped to N - 2).
std::vector<LongTimeEstimate> long_time_correlators(std::span<const MeasurementRecord> records,
                                                    std::size_t max_lag,
                                                    double evolution_time);

struct VarianceEstimate {
    double value = 0.0;
    double standard_error = 0.0;
    std::size_t shots = 0;
};

/// Zero-lag correlation C(0) from x-basis free-evolution shots, using the
/// small-angle relation <sigma_x> = <cos phi> ~ 1 - dt^2 C(0) / 2.
VarianceEstimate variance_estimate(std::span<const MeasurementRecord> x_records, double evolution_time);

struct LagWindow {
    std::size_t first = 0;
    std::size_t last = 0;  // inclusive
};

struct OffsetSubtraction {
    double offset_squared = 0.0;  // tail mean
    double offset_standard_error = 0.0;
    std::vector<LongTimeEstimate> stochastic;
};

/// C_eta(k) = C(k) - mean of the estimates whose lag falls in `tail`.
OffsetSubtraction subtract_offset(std::span<const LongTimeEstimate> full, LagWindow tail);

// ---------------------------------------------------------------------------
// Short times: inversion of decoupled coherence measurements.
// ---------------------------------------------------------------------------

struct CoherenceIntegral {
    std::string sequence_id;
    double tau = 0.0;
    double chi = 0.0;
    double uncertainty = 0.0;
};

/// Second-order coherence integral from a normalized coherence magnitude m:
/// |<exp(i phi)>| = exp(-chi / 2), so chi = -2 ln m with uncertainty
/// 2 sigma_m / m. Returns nullopt (the point is discarded) when
/// m <= floor_sigmas * sigma_m or m <= 0.
std::optional<CoherenceIntegral> chi_from_coherence(const CoherenceEstimate &estimate, double floor_sigmas = 3.0);

/// Inverse of chi_from_coherence for a noiseless point.
double coherence_from_chi(double chi);

struct ShortTimeEstimate {
    UniformGrid grid;
    std::vector<double> estimate;      // E[C_eta(u)]
    std::vector<double> quality;       // Q(u)
    std::vector<std::uint8_t> reliable;
    Eigen::VectorXd weights;           // F^+ chi, so estimate = sum_j weights_j F_j
    Eigen::VectorXd singular_values;
    Eigen::Index rank = 0;
    double rcond = 0.0;
    double quality_ratio = 0.0;
};

/// Minimum-norm estimate E[C_eta(u)] = sum_ij chi_i (F^+)_ij F_j(u) on the
/// filters' common grid, with F^+ truncated at relative cutoff rcond.
ShortTimeEstimate reconstruct_short_time(std::span<const double> chi,
                                         std::span<const FilterFunctionCurve> filters,
                                         const OverlapMatrix &overlap,
                                         double rcond,
                                         double quality_ratio = 5.0);

/// Same, taking measured integrals; each must match its filter's sequence
/// and duration.
ShortTimeEstimate reconstruct_short_time(std::span<const CoherenceIntegral> chis,
                                         std::span<const FilterFunctionCurve> filters,
                                         const OverlapMatrix &overlap,
                                         double rcond,
                                         double quality_ratio = 5.0);

/// Q(u) = int (sum_ij F_i(u) (F^+)_ij F_j(t))^2 dt, evaluated through the
/// identity int F(t) F(t)^T dt = overlap, i.e. Q(u) = F(u)^T F^+ overlap F^+ F(u).
std::vector<double> quality_function(std::span<const FilterFunctionCurve> filters,
                                     const OverlapMatrix &overlap,
                                     double rcond);

/// True where Q(u) >= max(Q) / ratio.
std::vector<std::uint8_t> quality_mask(std::span<const double> quality, double ratio = 5.0);

/// Last grid time of the first contiguous reliable run (0 if none).
double reliable_boundary(const UniformGrid &grid, std::span<const std::uint8_t> mask);

}  // namespace qnoise

#endif  // QNOISE_RECONSTRUCTION_H
