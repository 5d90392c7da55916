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

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "qnoise/random.h"

namespace qnoise {
namespace {

NoiseModel single(double eta, double gamma, double offset = 0.0) {
    return NoiseModel{offset, {Fluctuator{eta, gamma, "f"}}};
}

NoiseModel two_fluctuators() {
    return NoiseModel{0.0, {Fluctuator{1.0, 10.0, "fast"}, Fluctuator{10.0, 0.01, "slow"}}};
}

// Poisson sum over odd counts, written independently of the closed form.
double poisson_odd(double rate, double t) {
    const double mean = rate * t;
    double term = std::exp(-mean) * mean;  // k = 1
    double sum = 0;
    for (int k = 1; k < 400; k += 2) {
        sum += term;
        term *= mean * mean / ((k + 1.0) * (k + 2.0));
        if (term < 1e-300) {
            break;
        }
    }
    return sum;
}

TEST(Validation, RejectsNegativeParameters) {
    EXPECT_THROW((Fluctuator{-1.0, 1.0, "a"}.validate()), std::invalid_argument);
    EXPECT_THROW((Fluctuator{1.0, -1.0, "a"}.validate()), std::invalid_argument);
    EXPECT_THROW((Fluctuator{1.0, NAN, "a"}.validate()), std::invalid_argument);
    EXPECT_NO_THROW((Fluctuator{0.0, 0.0, "a"}.validate()));
}

TEST(SampleTrajectory, FrozenFluctuatorNeverFlips) {
    RandomStream rng(1);
    const auto s = sample_trajectory(single(1.0, 0.0), FluctuatorState({1}), 0.0, 1.0, rng);
    ASSERT_EQ(s.trajectory.segments().size(), 1u);
    EXPECT_EQ(s.trajectory.segments()[0].value, 1.0);
    EXPECT_EQ(s.final_state, FluctuatorState({1}));
}

TEST(SampleTrajectory, OffsetOnly) {
    RandomStream rng(1);
    const NoiseModel model{5.0, {}};
    for (double duration : {0.1, 1.0, 37.0}) {
        const auto s = sample_trajectory(model, FluctuatorState{}, 2.0, duration, rng);
        ASSERT_EQ(s.trajectory.segments().size(), 1u);
        EXPECT_EQ(s.trajectory.segments()[0].value, 5.0);
        EXPECT_EQ(s.trajectory.start(), 2.0);
    }
}

TEST(SampleTrajectory, PoissonFlipCount) {
    RandomStream rng(11);
    const NoiseModel model = single(1.0, 10.0);
    const int n = 10000;
    double sum = 0;
    for (int i = 0; i < n; ++i) {
        const auto s = sample_trajectory(model, FluctuatorState::stationary(1, rng), 0.0, 1.0, rng);
        sum += static_cast<double>(s.trajectory.switch_count());
    }
    // Poisson mean and variance are both gamma * T = 10.
    EXPECT_NEAR(sum / n, 10.0, 4 * std::sqrt(10.0 / n));
}

TEST(SampleTrajectory, StructuralInvariants) {
    RandomStream rng(5);
    const NoiseModel model{0.5, {Fluctuator{1.0, 3.0, "a"}, Fluctuator{2.0, 7.0, "b"}, Fluctuator{4.0, 0.5, "c"}}};
    FluctuatorState state = FluctuatorState::stationary(3, rng);
    double t0 = 0;
    for (int rep = 0; rep < 200; ++rep) {
        const auto s = sample_trajectory(model, state, t0, 0.7, rng);
        const auto &segs = s.trajectory.segments();
        ASSERT_FALSE(segs.empty());
        EXPECT_EQ(segs.front().start, t0);
        EXPECT_DOUBLE_EQ(segs.front().value, state.field(model));
        for (std::size_t i = 0; i < segs.size(); ++i) {
            if (i > 0) {
                EXPECT_LT(segs[i - 1].start, segs[i].start);
                EXPECT_NE(segs[i - 1].value, segs[i].value);
            }
            // value = offset + sum of +-amplitudes for some sign vector
            bool expressible = false;
            for (int mask = 0; mask < 8; ++mask) {
                double v = model.offset;
                for (int k = 0; k < 3; ++k) {
                    v += ((mask >> k) & 1 ? 1 : -1) * model.fluctuators[k].amplitude;
                }
                expressible |= std::abs(v - segs[i].value) < 1e-12;
            }
            EXPECT_TRUE(expressible);
        }
        EXPECT_DOUBLE_EQ(segs.back().value, s.final_state.field(model));
        state = s.final_state;
        t0 += 1.0;
    }
}

TEST(SampleTrajectory, LagCorrelationMatchesClosedForm) {
    RandomStream rng(21);
    const double eta = 1.0, gamma = 10.0;
    const NoiseModel model = single(eta, gamma);
    const int n = 10000;
    const std::vector<double> lags{0.0, 0.02, 0.05, 0.1, 0.2, 0.4};
    std::vector<double> sum(lags.size()), sum_sq(lags.size());
    for (int i = 0; i < n; ++i) {
        const auto s = sample_trajectory(model, FluctuatorState::stationary(1, rng), 0.0, 0.5, rng);
        const double v0 = s.trajectory.value_at(0.0);
        for (std::size_t k = 0; k < lags.size(); ++k) {
            const double p = v0 * s.trajectory.value_at(lags[k]);
            sum[k] += p;
            sum_sq[k] += p * p;
        }
    }
    for (std::size_t k = 0; k < lags.size(); ++k) {
        const double mean = sum[k] / n;
        const double se = std::sqrt(std::max(sum_sq[k] / n - mean * mean, 1e-12) / n);
        EXPECT_NEAR(mean, eta * eta * std::exp(-2 * gamma * lags[k]), 4 * se + 1e-12) << "lag " << lags[k];
    }
}

TEST(SampleTrajectory, Deterministic) {
    const NoiseModel model = two_fluctuators();
    RandomStream a(99), b(99);
    for (int i = 0; i < 20; ++i) {
        const auto sa = sample_trajectory(model, FluctuatorState::all_up(2), i * 1.0, 1.0, a);
        const auto sb = sample_trajectory(model, FluctuatorState::all_up(2), i * 1.0, 1.0, b);
        EXPECT_EQ(sa.trajectory, sb.trajectory);
        EXPECT_EQ(sa.final_state, sb.final_state);
    }
}

TEST(SampleTrajectory, RejectsBadInput) {
    RandomStream rng(1);
    EXPECT_THROW(sample_trajectory(single(1, 1), FluctuatorState::all_up(2), 0, 1, rng), std::invalid_argument);
    EXPECT_THROW(sample_trajectory(single(1, 1), FluctuatorState::all_up(1), 0, 0, rng), std::invalid_argument);
    EXPECT_THROW(sample_trajectory(single(1, 1), FluctuatorState::all_up(1), 0, -1, rng), std::invalid_argument);
}

TEST(FlipProbability, Examples) {
    EXPECT_EQ(odd_flip_probability(3.0, 0.0), 0.0);
    EXPECT_NEAR(odd_flip_probability(1.0, 1e6), 0.5, 1e-15);
    EXPECT_NEAR(odd_flip_probability(0.01, 1.0), 0.5 * (1 - std::exp(-0.02)), 1e-15);
    EXPECT_NEAR(odd_flip_probability(0.01, 1.0), 0.009901, 1e-6);
}

TEST(FlipProbability, ClosedFormEqualsPoissonSum) {
    for (double rate : {0.01, 0.3, 1.0, 10.0}) {
        for (double t : {0.0, 1e-6, 0.01, 0.5, 1.0, 3.0, 20.0}) {
            EXPECT_NEAR(odd_flip_probability(rate, t), poisson_odd(rate, t), 1e-14) << rate << " " << t;
        }
    }
}

TEST(PropagateState, ZeroGapUnchanged) {
    RandomStream rng(4);
    const Fluctuator f{1.0, 50.0, "f"};
    for (int i = 0; i < 1000; ++i) {
        EXPECT_EQ(propagate_state(f, 1, 0.0, rng), 1);
        EXPECT_EQ(propagate_state(f, -1, 0.0, rng), -1);
    }
}

TEST(PropagateState, RejectsNegativeGap) {
    RandomStream rng(4);
    EXPECT_THROW(propagate_state(Fluctuator{1.0, 1.0, "f"}, 1, -0.1, rng), std::invalid_argument);
}

TEST(PropagateState, AgreesWithSampledTrajectories) {
    const Fluctuator f{1.0, 0.7, "f"};
    const NoiseModel model{0.0, {f}};
    const double gap = 0.6;
    const int n = 40000;
    RandomStream rng(8);
    int flips_propagate = 0, flips_sampled = 0;
    for (int i = 0; i < n; ++i) {
        flips_propagate += propagate_state(f, 1, gap, rng) == -1;
        flips_sampled += sample_trajectory(model, FluctuatorState({1}), 0.0, gap, rng).final_state[0] == -1;
    }
    const double p = odd_flip_probability(f.rate, gap);
    const double tol = 4 * std::sqrt(p * (1 - p) / n);
    EXPECT_NEAR(flips_propagate / double(n), p, tol);
    EXPECT_NEAR(flips_sampled / double(n), p, tol);
}

TEST(AnalyticCorrelation, Examples) {
    EXPECT_DOUBLE_EQ(analytic_correlation(two_fluctuators(), 0.0), 101.0);
    EXPECT_NEAR(analytic_correlation(single(1, 10), 0.1), 0.135335283236613, 1e-12);
    EXPECT_NEAR(analytic_correlation(single(2, 1, 3), 1e4), 9.0, 1e-12);
    EXPECT_NEAR(stochastic_correlation(single(2, 1, 3), 0.0), 4.0, 1e-12);
}

TEST(AnalyticCorrelation, EvenAndMaximalAtZero) {
    const NoiseModel model{1.5, {Fluctuator{1.0, 10.0, "a"}, Fluctuator{3.0, 0.2, "b"}}};
    const double c0 = analytic_correlation(model, 0.0);
    for (double t : {1e-4, 0.01, 0.3, 2.0, 50.0}) {
        EXPECT_DOUBLE_EQ(analytic_correlation(model, t), analytic_correlation(model, -t));
        EXPECT_LT(analytic_correlation(model, t), c0);
    }
}

TEST(TrajectoryCsv, Header) {
    const NoiseTrajectory t(0.0, 1.0, {{0.0, 1.0}, {0.25, -1.0}});
    std::ostringstream out;
    write_trajectory_csv(out, t);
    EXPECT_EQ(out.str().substr(0, 14), "t_start,value\n");
    EXPECT_DOUBLE_EQ(t.value_at(0.1), 1.0);
    EXPECT_DOUBLE_EQ(t.value_at(0.25), -1.0);
    EXPECT_DOUBLE_EQ(t.segment_end(0), 0.25);
}

}  // namespace
}  // namespace qnoise
