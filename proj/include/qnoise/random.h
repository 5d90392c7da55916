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

#ifndef QNOISE_RANDOM_H
#define QNOISE_RANDOM_H

#include <cstdint>
#include <random>

namespace qnoise {

/// Seeded random stream. Every stream is identified by (seed, stream id);
/// substreams derived from distinct ids are statistically independent, so a
/// measurement chain can own its randomness without sharing engine state.
///
/// Distributions are implemented here rather than through <random>'s
/// distribution classes, whose output is not pinned across standard
/// libraries.
class RandomStream {
 public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    /// Independent child stream. Does not advance this stream.
    RandomStream substream(std::uint64_t id) const;

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Exponential waiting time with the given rate; rate must be positive.
    double exponential(double rate);
    bool bernoulli(double p);
    /// +1 or -1 with equal probability.
    int random_sign();

 private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace qnoise

#endif  // QNOISE_RANDOM_H
