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

#include "qnoise/pulse_sequence.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace qnoise {

void PulseSequence::validate() const {
    if (!(duration > 0) || !std::isfinite(duration)) {
        throw std::invalid_argument(fmt::format("{}: duration must be positive", name));
    }
    if (!(pulse_width >= 0)) {
        throw std::invalid_argument(fmt::format("{}: pulse width must be non-negative", name));
    }
    const double half = pulse_width / 2;
    double previous_end = 0;
    for (std::size_t j = 0; j < pulse_times.size(); ++j) {
        const double t = pulse_times[j];
        if (!(t - half > previous_end) || (j == 0 && !(t > 0))) {
            throw std::invalid_argument(
                fmt::format("{}: pulse {} at {} overlaps the previous pulse or the sequence start", name, j, t));
        }
        previous_end = t + half;
    }
    if (!pulse_times.empty() && !(previous_end < duration)) {
        throw std::invalid_argument(fmt::format("{}: last pulse extends past the sequence end", name));
    }
}

std::vector<double> udd_times(int n, double tau) {
    if (n < 1) {
        throw std::invalid_argument("UDD needs at least one pulse");
    }
    if (!(tau > 0)) {
        throw std::invalid_argument("UDD duration must be positive");
    }
    std::vector<double> times(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        const double s = std::sin(j * std::numbers::pi / (2.0 * n + 2.0));
        times[static_cast<std::size_t>(j - 1)] = tau * s * s;
    }
    return times;
}

PulseSequence free_evolution(double tau) {
    PulseSequence seq{"FE", tau, {}, 0.0};
    seq.validate();
    return seq;
}

PulseSequence hahn_echo(double tau, double pulse_width) {
    PulseSequence seq{"Hahn", tau, {tau / 2}, pulse_width};
    seq.validate();
    return seq;
}

PulseSequence uhrig(int n, double tau, double pulse_width) {
    PulseSequence seq{fmt::format("UDD({})", n), tau, udd_times(n, tau), pulse_width};
    seq.validate();
    return seq;
}

PulseSequence cpmg(int n, double tau, double pulse_width) {
    if (n < 1) {
        throw std::invalid_argument("CPMG needs at least one pulse");
    }
    std::vector<double> times(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        times[static_cast<std::size_t>(j - 1)] = tau * (j - 0.5) / n;
    }
    PulseSequence seq{fmt::format("CPMG({})", n), tau, std::move(times), pulse_width};
    seq.validate();
    return seq;
}

namespace {

// Parses "NAME" or "NAME(k)"; returns the lower-cased name and k (or -1).
std::pair<std::string, int> split_family(std::string_view family) {
    std::string s;
    for (char c : family) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    const auto open = s.find('(');
    if (open == std::string::npos) {
        return {s, -1};
    }
    if (s.back() != ')' || open + 2 > s.size() - 1) {
        throw std::invalid_argument(fmt::format("malformed sequence family '{}'", family));
    }
    const std::string digits = s.substr(open + 1, s.size() - open - 2);
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw std::invalid_argument(fmt::format("malformed pulse count in '{}'", family));
    }
    return {s.substr(0, open), std::stoi(digits)};
}

std::string trimmed(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace

PulseSequence make_sequence(std::string_view family, double tau, double pulse_width) {
    const auto [kind, count] = split_family(family);
    PulseSequence seq;
    if (kind == "fe") {
        seq = PulseSequence{"", tau, {}, 0.0};
    } else if (kind == "hahn" && count < 0) {
        seq = PulseSequence{"", tau, {tau / 2}, pulse_width};
    } else if (kind == "udd" && count >= 1) {
        seq = PulseSequence{"", tau, udd_times(count, tau), pulse_width};
    } else if (kind == "cpmg" && count >= 1) {
        seq = cpmg(count, tau, pulse_width);
    } else {
        throw std::invalid_argument(fmt::format("unknown pulse sequence family '{}'", family));
    }
    seq.name = trimmed(family);
    seq.validate();
    return seq;
}

PulseFunction::PulseFunction(std::vector<double> breakpoints, std::vector<int> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.size() != values_.size() + 1 || values_.empty()) {
        throw std::invalid_argument("pulse function needs one more breakpoint than values");
    }
    if (breakpoints_.front() != 0) {
        throw std::invalid_argument("pulse function must start at 0");
    }
    for (std::size_t k = 1; k < breakpoints_.size(); ++k) {
        if (!(breakpoints_[k] > breakpoints_[k - 1])) {
            throw std::invalid_argument("pulse function breakpoints must strictly increase");
        }
    }
    for (int v : values_) {
        if (v < -1 || v > 1) {
            throw std::invalid_argument("pulse function values must be -1, 0 or +1");
        }
    }
}

std::size_t PulseFunction::piece_index(double t) const {
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    std::size_t k = it == breakpoints_.begin() ? 0 : static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    return std::min(k, values_.size() - 1);
}

int PulseFunction::value_at(double t) const {
    if (t < 0 || t > duration()) {
        throw std::out_of_range("time outside pulse function support");
    }
    return values_[piece_index(t)];
}

double PulseFunction::integral() const {
    double total = 0;
    for (std::size_t k = 0; k < values_.size(); ++k) {
        total += values_[k] * (breakpoints_[k + 1] - breakpoints_[k]);
    }
    return total;
}

double PulseFunction::support_length() const {
    double total = 0;
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (values_[k] != 0) {
            total += breakpoints_[k + 1] - breakpoints_[k];
        }
    }
    return total;
}

PulseFunction pulse_function(const PulseSequence &seq) {
    seq.validate();
    const double half = seq.pulse_width / 2;
    std::vector<double> breakpoints{0.0};
    std::vector<int> values;
    int sign = 1;
    for (double t : seq.pulse_times) {
        values.push_back(sign);
        if (half > 0) {
            breakpoints.push_back(t - half);
            values.push_back(0);
            breakpoints.push_back(t + half);
        } else {
            breakpoints.push_back(t);
        }
        sign = -sign;
    }
    values.push_back(sign);
    breakpoints.push_back(seq.duration);
    return PulseFunction(std::move(breakpoints), std::move(values));
}

double refocusing_defect(const PulseSequence &seq) {
    return pulse_function(seq).integral();
}

double frequency_filter(const PulseSequence &seq, double omega) {
    using namespace std::complex_literals;
    const std::size_t n = seq.pulse_count();
    const double width_factor = seq.pulse_width > 0 ? std::cos(omega * seq.pulse_width / 2) : 1.0;
    std::complex<double> sum = 1.0;
    sum += (n % 2 == 0 ? -1.0 : 1.0) * std::exp(1i * (omega * seq.duration));
    for (std::size_t j = 0; j < n; ++j) {
        const double sign = (j % 2 == 0) ? -1.0 : 1.0;  // (-1)^j for 1-based j
        sum += 2.0 * sign * width_factor * std::exp(1i * (omega * seq.pulse_times[j]));
    }
    return std::norm(sum);
}

std::complex<double> pulse_fourier_transform(const PulseFunction &y, double omega) {
    using namespace std::complex_literals;
    std::complex<double> total = 0.0;
    const auto &b = y.breakpoints();
    for (std::size_t k = 0; k < y.piece_count(); ++k) {
        if (y.values()[k] == 0) {
            continue;
        }
        const double length = b[k + 1] - b[k];
        const double x = omega * length / 2;
        const double sinc = x == 0 ? 1.0 : std::sin(x) / x;
        total += static_cast<double>(y.values()[k]) * length * sinc *
                 std::exp(1i * (omega * (b[k] + b[k + 1]) / 2));
    }
    return total;
}

double spectral_filter(const PulseSequence &seq, double omega) {
    return std::norm(pulse_fourier_transform(pulse_function(seq), omega));
}

double spectral_coherence_integral(const PulseSequence &seq,
                                   const std::function<double(double)> &spectrum,
                                   double omega_max,
                                   std::size_t intervals) {
    if (!(omega_max > 0) || intervals < 2) {
        throw std::invalid_argument("spectral quadrature needs omega_max > 0 and at least 2 panels");
    }
    intervals += intervals % 2;
    const PulseFunction y = pulse_function(seq);
    const double h = omega_max / static_cast<double>(intervals);
    double sum = 0;
    for (std::size_t m = 0; m <= intervals; ++m) {
        const double w = h * static_cast<double>(m);
        const double weight = (m == 0 || m == intervals) ? 1.0 : (m % 2 == 1 ? 4.0 : 2.0);
        sum += weight * spectrum(w) * std::norm(pulse_fourier_transform(y, w));
    }
    // Even integrand: (1/2pi) * 2 * int_0^inf.
    return sum * h / 3.0 / std::numbers::pi;
}

}  // namespace qnoise
