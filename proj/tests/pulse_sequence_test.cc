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

#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

namespace qnoise {
namespace {

using std::numbers::pi;

// Midpoint-rule Fourier transform of y, independent of the exact sinc form.
std::complex<double> riemann_transform(const PulseSequence &seq, double omega, int steps) {
    const PulseFunction y = pulse_function(seq);
    const double h = seq.duration / steps;
    std::complex<double> sum = 0;
    for (int k = 0; k < steps; ++k) {
        const double t = (k + 0.5) * h;
        sum += static_cast<double>(y.value_at(t)) * std::exp(std::complex<double>(0, omega * t));
    }
    return sum * h;
}

TEST(UddTimes, Examples) {
    const auto one = udd_times(1, 1.0);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_NEAR(one[0], 0.5, 1e-15);
    const auto two = udd_times(2, 1.0);
    ASSERT_EQ(two.size(), 2u);
    EXPECT_NEAR(two[0], 0.25, 1e-15);
    EXPECT_NEAR(two[1], 0.75, 1e-15);
    const auto four = udd_times(4, 1.0);
    for (int j = 0; j < 4; ++j) {
        EXPECT_NEAR(four[j] + four[3 - j], 1.0, 1e-15);
    }
    EXPECT_THROW(udd_times(0, 1.0), std::invalid_argument);
}

TEST(UddTimes, ScaleWithDuration) {
    const auto a = udd_times(5, 1.0);
    const auto b = udd_times(5, 0.37);
    for (std::size_t j = 0; j < a.size(); ++j) {
        EXPECT_NEAR(b[j], 0.37 * a[j], 1e-15);
        EXPECT_NEAR(a[j], std::pow(std::sin((j + 1) * pi / 12), 2), 1e-15);
    }
}

TEST(MakeSequence, Families) {
    EXPECT_EQ(make_sequence("FE", 1.0).pulse_count(), 0u);
    EXPECT_EQ(make_sequence("FE(1)", 1.0).pulse_count(), 0u);
    EXPECT_EQ(make_sequence("FE(1)", 1.0).name, "FE(1)");
    EXPECT_EQ(make_sequence("Hahn", 1.0).pulse_times, std::vector<double>{0.5});
    EXPECT_EQ(make_sequence(" udd(3) ", 1.0).pulse_count(), 3u);
    ASSERT_EQ(make_sequence("UDD(1)", 2.0).pulse_count(), 1u);
    EXPECT_NEAR(make_sequence("UDD(1)", 2.0).pulse_times[0], make_sequence("Hahn", 2.0).pulse_times[0], 1e-15);
    EXPECT_EQ(make_sequence("CPMG(2)", 1.0).pulse_times, (std::vector<double>{0.25, 0.75}));
    EXPECT_THROW(make_sequence("XY4", 1.0), std::invalid_argument);
    EXPECT_THROW(make_sequence("UDD(0)", 1.0), std::invalid_argument);
    EXPECT_THROW(make_sequence("UDD(x)", 1.0), std::invalid_argument);
    EXPECT_THROW(make_sequence("UDD(3", 1.0), std::invalid_argument);
    EXPECT_THROW(make_sequence("Hahn", 0.0), std::invalid_argument);
}

TEST(PulseSequence, ValidateRejectsOverlap) {
    EXPECT_THROW((PulseSequence{"x", 1.0, {0.5, 0.5}, 0.0}.validate()), std::invalid_argument);
    EXPECT_THROW((PulseSequence{"x", 1.0, {0.5, 0.4}, 0.0}.validate()), std::invalid_argument);
    EXPECT_THROW((PulseSequence{"x", 1.0, {0.0}, 0.0}.validate()), std::invalid_argument);
    EXPECT_THROW((PulseSequence{"x", 1.0, {1.0}, 0.0}.validate()), std::invalid_argument);
    EXPECT_THROW((PulseSequence{"x", 1.0, {0.3, 0.4}, 0.2}.validate()), std::invalid_argument);
    EXPECT_THROW((PulseSequence{"x", 1.0, {0.5}, 1.2}.validate()), std::invalid_argument);
    EXPECT_THROW(hahn_echo(1.0, -0.1), std::invalid_argument);
    EXPECT_NO_THROW((PulseSequence{"x", 1.0, {0.3, 0.6}, 0.2}.validate()));
}

TEST(PulseFunction, FreeEvolution) {
    const PulseFunction y = pulse_function(free_evolution(1.0));
    EXPECT_EQ(y.piece_count(), 1u);
    for (double t : {0.0, 0.3, 1.0}) {
        EXPECT_EQ(y.value_at(t), 1);
    }
    EXPECT_DOUBLE_EQ(y.integral(), 1.0);
}

TEST(PulseFunction, HahnZeroWidth) {
    const PulseFunction y = pulse_function(hahn_echo(1.0));
    EXPECT_EQ(y.value_at(0.0), 1);
    EXPECT_EQ(y.value_at(0.4999), 1);
    EXPECT_EQ(y.value_at(0.5001), -1);
    EXPECT_EQ(y.value_at(1.0), -1);
    EXPECT_DOUBLE_EQ(y.support_length(), 1.0);
}

TEST(PulseFunction, HahnFiniteWidth) {
    const PulseFunction y = pulse_function(hahn_echo(1.0, 0.1));
    EXPECT_EQ(y.value_at(0.44), 1);
    EXPECT_EQ(y.value_at(0.46), 0);
    EXPECT_EQ(y.value_at(0.54), 0);
    EXPECT_EQ(y.value_at(0.56), -1);
    EXPECT_NEAR(y.support_length(), 0.9, 1e-15);
    EXPECT_NEAR(y.integral(), 0.0, 1e-15);
}

TEST(PulseFunction, AlternatesAtEachPulse) {
    const PulseSequence seq = uhrig(5, 1.0);
    const PulseFunction y = pulse_function(seq);
    int expected = 1;
    double previous = 0;
    for (double t : seq.pulse_times) {
        EXPECT_EQ(y.value_at(0.5 * (previous + t)), expected);
        expected = -expected;
        previous = t;
    }
    EXPECT_EQ(y.value_at(0.5 * (previous + 1.0)), expected);
}

TEST(RefocusingDefect, Examples) {
    EXPECT_NEAR(refocusing_defect(hahn_echo(1.0)), 0.0, 1e-15);
    EXPECT_NEAR(refocusing_defect(free_evolution(1.0)), 1.0, 1e-15);
    EXPECT_NEAR(refocusing_defect(uhrig(2, 1.0)), 0.0, 1e-15);
    for (int n = 1; n <= 6; ++n) {
        EXPECT_NEAR(refocusing_defect(uhrig(n, 0.7)), 0.0, 1e-14) << n;
    }
}

TEST(FrequencyFilter, FreeEvolutionClosedForm) {
    for (double w : {1e-3, 0.5, 3.0, 17.0}) {
        EXPECT_NEAR(frequency_filter(free_evolution(1.3), w), 4 * std::pow(std::sin(w * 1.3 / 2), 2), 1e-12);
    }
}

TEST(FrequencyFilter, HahnClosedForm) {
    for (double w : {1e-3, 0.5, 3.0, 17.0, 100.0}) {
        EXPECT_NEAR(frequency_filter(hahn_echo(1.0), w), 16 * std::pow(std::sin(w / 4), 4), 1e-11);
    }
}

TEST(FrequencyFilter, RefocusingVanishesAtZero) {
    for (int n = 1; n <= 5; ++n) {
        EXPECT_NEAR(frequency_filter(uhrig(n, 1.0), 0.0), 0.0, 1e-24);
    }
}

TEST(FrequencyFilter, EqualsOmegaSquaredTimesTransform) {
    for (const PulseSequence &seq : {free_evolution(0.8), hahn_echo(1.0), uhrig(3, 0.6), uhrig(4, 1.0, 0.02)}) {
        for (double w : {0.3, 2.0, 11.0, 40.0}) {
            const double direct = std::norm(riemann_transform(seq, w, 200000));
            EXPECT_NEAR(spectral_filter(seq, w), direct, 1e-5 * std::max(1.0, direct)) << seq.name << " " << w;
            EXPECT_NEAR(frequency_filter(seq, w), w * w * spectral_filter(seq, w), 1e-9 * std::max(1.0, w * w))
                << seq.name << " " << w;
        }
    }
}

TEST(SpectralFilter, ZeroFrequencyIsIntegralSquared) {
    EXPECT_NEAR(spectral_filter(free_evolution(0.7), 0.0), 0.49, 1e-15);
    EXPECT_NEAR(spectral_filter(hahn_echo(0.7), 0.0), 0.0, 1e-15);
}

TEST(SpectralCoherenceIntegral, WhiteNoiseLimit) {
    // Flat spectrum s0: Parseval gives chi = s0 * int y^2. Truncation at w_max costs O(1/w_max).
    const double s0 = 2.0;
    const PulseSequence seq = hahn_echo(1.0);
    const double chi = spectral_coherence_integral(seq, [s0](double) { return s0; }, 4000.0, 400000);
    EXPECT_NEAR(chi, s0 * 1.0, 3e-3);
}

}  // namespace
}  // namespace qnoise
