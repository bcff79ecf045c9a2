// SPDX-License-Identifier: Apache-2.0
//
// hris-sim: link-level simulator for hybrid reflecting and sensing metasurfaces
// Copyright (C) 2026 The hris-sim Authors
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

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "hris/common.hpp"

namespace hris {

/// Substream tags. A trial's randomness is split by purpose so that, for
/// example, the channel draw of trial i is the same no matter which power
/// split or SNR it is evaluated at.
enum class Stream : std::uint64_t
{
    channel = 1,
    hris_noise = 2,
    bs_noise = 3,
    phase_draw = 4,
    truth = 5,
    aoa_noise = 6,
    combiner = 7,
    baseline_noise = 8,
    generic = 99,
};

inline constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Counter-based seed derivation: hashes (seed, path...) into a 64-bit key.
inline std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
{
    std::uint64_t h = splitmix64(seed);
    for (auto p : path)
        h = splitmix64(h ^ splitmix64(p + 0x632BE59BD9B4E019ull));
    return h;
}

/// Random stream owned by exactly one worker at a time.
class Rng
{
  public:
    explicit Rng(std::uint64_t key) : engine_(key) {}

    static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
    {
        return Rng(derive_key(seed, path));
    }

    double uniform() { return uniform_(engine_); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform_(engine_); }
    double normal() { return normal_(engine_); }

    /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    cdouble complex_normal(double variance = 1.0)
    {
        const double s = std::sqrt(0.5 * variance);
        const double re = normal_(engine_);
        const double im = normal_(engine_);
        return {s * re, s * im};
    }

    cmat complex_normal(Eigen::Index rows, Eigen::Index cols, double variance = 1.0)
    {
        cmat out(rows, cols);
        // column-major fill keeps the draw order independent of Eigen internals
        for (Eigen::Index c = 0; c < cols; ++c)
            for (Eigen::Index r = 0; r < rows; ++r)
                out(r, c) = complex_normal(variance);
        return out;
    }

    std::mt19937_64 &engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
};

inline constexpr std::uint64_t tag(Stream s) { return static_cast<std::uint64_t>(s); }

} // namespace hris
