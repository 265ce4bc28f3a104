// SPDX-License-Identifier: Apache-2.0
//
// zfbeam: zero-forcing beamforming for full-duplex mmWave MIMO links
// Copyright (C) 2026 The zfbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef ZFBEAM_RANDOM_HPP
#define ZFBEAM_RANDOM_HPP

#include "zfbeam/types.hpp"

#include <array>
#include <cmath>
#include <cstdint>

namespace zfbeam
{
// SplitMix64 finalizer (Steele, Lea, Flood 2014). Used to expand seeds.
inline std::uint64_t splitmix64(std::uint64_t &state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Portable random stream: xoshiro256** (Blackman & Vigna) seeded through SplitMix64.
///
/// Every draw is computed from integer arithmetic and a fixed Box-Muller transform,
/// so a given seed reproduces the same sequence on any platform with IEEE doubles
/// and a correctly rounded libm. No std:: distributions are involved.
class RandomStream
{
public:
    explicit RandomStream(std::uint64_t seed)
    {
        std::uint64_t sm = seed;
        for (auto &word : state_)
            word = splitmix64(sm);
    }

    /// Stream for Monte Carlo realization `index`: seeded with seed XOR index.
    static RandomStream for_realization(std::uint64_t seed, std::uint64_t index)
    {
        return RandomStream(seed ^ index);
    }

    std::uint64_t next_u64()
    {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Independent child stream; consumes one draw from this stream.
    RandomStream fork(std::uint64_t tag)
    {
        return RandomStream(next_u64() ^ (tag * 0xD1B54A32D192ED03ULL));
    }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller; the second variate is cached.
    double normal()
    {
        if (has_spare_)
        {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * kPi * u2);
        has_spare_ = true;
        return r * std::cos(2.0 * kPi * u2);
    }

    /// Circularly symmetric complex Gaussian with unit variance, CN(0, 1).
    Complex complex_normal()
    {
        const double re = normal();
        const double im = normal();
        return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
    }

    ComplexMatrix complex_normal_matrix(Eigen::Index rows, Eigen::Index cols)
    {
        ComplexMatrix m(rows, cols);
        // Column-major fill order is part of the reproducibility contract.
        for (Eigen::Index c = 0; c < cols; ++c)
            for (Eigen::Index r = 0; r < rows; ++r)
                m(r, c) = complex_normal();
        return m;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};
} // namespace zfbeam

#endif // ZFBEAM_RANDOM_HPP
