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

#ifndef QNOISE_PULSE_SEQUENCE_H
#define QNOISE_PULSE_SEQUENCE_H

#include <complex>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace qnoise {

/// A train of pi-pulses applied during [0, duration]. Pulse j is centred on
/// pulse_times[j] and occupies [t_j - width/2, t_j + width/2].
struct PulseSequence {
    std::string name;
    double duration = 0.0;
    std::vector<double> pulse_times;
    double pulse_width = 0.0;

    std::size_t pulse_count() const { return pulse_times.size(); }
    /// Throws std::invalid_argument unless 0 < t_1 < ... < t_N < duration and
    /// the widened pulses neither overlap nor leave [0, duration].
    void validate() const;
};

/// Uhrig pulse times tau * sin^2(j pi / (2n + 2)), j = 1..n.
std::vector<double> udd_times(int n, double tau);

PulseSequence free_evolution(double tau);
PulseSequence hahn_echo(double tau, double pulse_width = 0.0);
PulseSequence uhrig(int n, double tau, double pulse_width = 0.0);
/// Carr-Purcell: pulses at tau (j - 1/2) / n.
PulseSequence cpmg(int n, double tau, double pulse_width = 0.0);

/// Builds a sequence from a family name: "FE", "FE(k)", "Hahn", "UDD(n)",
/// "CPMG(n)". Names are case-insensitive.
PulseSequence make_sequence(std::string_view family, double tau, double pulse_width = 0.0);

/// Toggling-frame switching function y(t): +1 before the first pulse, sign
/// alternating at each pulse, 0 inside finite-width pulse windows.
/// Piecewise constant with value values[k] on [breakpoints[k], breakpoints[k+1]).
class PulseFunction {
 public:
    PulseFunction(std::vector<double> breakpoints, std::vector<int> values);

    double duration() const { return breakpoints_.back(); }
    const std::vector<double> &breakpoints() const { return breakpoints_; }
    const std::vector<int> &values() const { return values_; }
    std::size_t piece_count() const { return values_.size(); }

    int value_at(double t) const;
    /// Index of the piece containing t (last piece for t == duration).
    std::size_t piece_index(double t) const;
    /// Integral of y over [0, duration].
    double integral() const;
    /// Measure of the set where y != 0.
    double support_length() const;

 private:
    std::vector<double> breakpoints_;
    std::vector<int> values_;
};

PulseFunction pulse_function(const PulseSequence &seq);

/// Integral of y over [0, tau]; zero exactly for refocusing sequences.
double refocusing_defect(const PulseSequence &seq);

/// Frequency filter |1 + (-1)^{N+1} e^{i w tau} + 2 sum_j (-1)^j e^{i w t_j} c|^2
/// with c = cos(w t_pi / 2). Equals w^2 |Y(w)|^2 where Y is the Fourier
/// transform of the pulse function.
double frequency_filter(const PulseSequence &seq, double omega);

/// Y(w) = int_0^tau e^{i w s} y(s) ds evaluated exactly piece by piece.
std::complex<double> pulse_fourier_transform(const PulseFunction &y, double omega);

/// |Y(w)|^2, the kernel that weights the noise spectrum in the coherence
/// integral. Tends to (int y)^2 as w -> 0.
double spectral_filter(const PulseSequence &seq, double omega);

/// (1/2pi) int S(w) |Y(w)|^2 dw for an even spectrum S, by composite Simpson
/// on [0, omega_max] with `intervals` (rounded up to even) panels.
double spectral_coherence_integral(const PulseSequence &seq,
                                   const std::function<double(double)> &spectrum,
                                   double omega_max,
                                   std::size_t intervals);

}  // namespace qnoise

#endif  // QNOISE_PULSE_SEQUENCE_H
