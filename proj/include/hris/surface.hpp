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
#include <string_view>
#include <vector>

#include "hris/common.hpp"
#include "hris/rng.hpp"

namespace hris::surface {

/// Per-atom configuration of a hybrid reflecting and sensing surface.
///
/// rho(n) is the fraction of the incident power that atom n reflects; the
/// remaining 1 - rho(n) is coupled into the sampling waveguides, phase shifted
/// by sense_phase(n), and combined onto the RF chains by the phase-only
/// `combiner` (N_r x N, unit-modulus entries).
struct HrisConfig
{
    rvec rho;
    rvec reflect_phase;
    rvec sense_phase;
    cmat combiner;

    std::size_t size() const noexcept { return static_cast<std::size_t>(rho.size()); }
    std::size_t n_rf() const noexcept { return static_cast<std::size_t>(combiner.rows()); }

    /// Throws ParameterError / DimensionError if any invariant is violated.
    void validate() const;

    /// Uniform split, zero phases, given combiner.
    static HrisConfig uniform(double rho, cmat combiner);
};

struct HrisSignals
{
    /// Diagonal of the reflected-path multiplier: sqrt(rho_n) exp(j reflect_phase_n).
    cvec reflected_gain;
    /// combiner * diag(sqrt(1 - rho_n) exp(j sense_phase_n)).
    cmat sensed_map;

    std::size_t size() const noexcept { return static_cast<std::size_t>(reflected_gain.size()); }
    cmat reflected_gain_matrix() const { return reflected_gain.asDiagonal(); }
};

HrisSignals build_signals(const HrisConfig &cfg);

/// sensed_map * incident plus CN(0, noise_std^2) noise on every RF chain.
cvec sense(const HrisSignals &signals, const cvec &incident, double noise_std, Rng &rng);

/// Noise-free sensing path.
cvec sense(const HrisSignals &signals, const cvec &incident);

/// reflected_gain .* incident. Passive, hence noiseless.
cvec reflect(const HrisSignals &signals, const cvec &incident);

enum class CombinerKind
{
    dft,
    random_phase,
};

CombinerKind parse_combiner_kind(std::string_view name);
std::string_view to_string(CombinerKind kind);

/// N x N DFT matrix F(r, n) = exp(-j 2 pi r n / N) (unscaled, unit-modulus).
cmat dft_matrix(std::size_t n);

/// Per-slot analog combiners.
///
/// dft: slot t holds rows (t*N_r ... t*N_r + N_r - 1) mod N of the N-point DFT
/// matrix, so ceil(N / N_r) consecutive slots stack to a full-rank matrix.
/// random_phase: i.i.d. uniform phases drawn from `seed`.
std::vector<cmat> combiner_schedule(std::size_t n_atoms, std::size_t n_rf, std::size_t n_slots, CombinerKind kind,
                                    std::uint64_t seed = 0);

/// Vertically stacks a schedule into one (n_slots * N_r) x N matrix.
cmat stack(const std::vector<cmat> &blocks);

} // namespace hris::surface
