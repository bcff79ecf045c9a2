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

#include <string_view>

#include "hris/array.hpp"
#include "hris/common.hpp"
#include "hris/rng.hpp"
#include "hris/surface.hpp"

namespace hris::channel {

/// UTs are dropped uniformly on a disc; the HRIS sits on the top edge of that
/// disc and the BS is `hris_bs_distance_m` away from the HRIS.
struct LinkGeometry
{
    double cell_radius_m = 10.0;
    double hris_bs_distance_m = 50.0;
    double carrier_hz = array::default_carrier_hz;
    /// Wavelength used for pathloss; 0 means speed_of_light / carrier_hz.
    double wavelength_m = array::default_wavelength_m;
    /// UT-HRIS distances are clamped below at this value (far-field floor).
    double min_distance_m = 1.0;

    void validate() const;
    double wavelength() const;
};

enum class PathlossMode
{
    /// (lambda / (4 pi d))^2 on both links.
    free_space,
    /// Unit large-scale gain; SNR then refers to unit-variance channels.
    normalized,
};

PathlossMode parse_pathloss_mode(std::string_view name);
std::string_view to_string(PathlossMode mode);

struct LinkBudget
{
    double tx_power = 1.0;
    double noise_var_hris = 1.0;
    double noise_var_bs = 1.0;

    /// tx_power / noise_var = 10^(snr_db / 10) with unit noise variance at both ends.
    static LinkBudget from_snr_db(double snr_db) { return {db2lin(snr_db), 1.0, 1.0}; }
};

struct ChannelOptions
{
    PathlossMode pathloss = PathlossMode::free_space;
    /// Rician K-factor (linear). 0 gives i.i.d. Rayleigh fading.
    double rician_k = 0.0;
    LinkBudget budget{};
};

struct ChannelSet
{
    cmat H; ///< N x K, UTs -> HRIS
    cmat G; ///< M x N, HRIS -> BS
    double noise_var_hris = 1.0;
    double noise_var_bs = 1.0;
    double tx_power = 1.0;
    rvec user_distance_m;    ///< K
    rvec user_pathloss;      ///< K, large-scale power gain applied to column k of H
    double bs_pathloss = 1.0; ///< large-scale power gain applied to G

    std::size_t n_atoms() const noexcept { return static_cast<std::size_t>(H.rows()); }
    std::size_t n_users() const noexcept { return static_cast<std::size_t>(H.cols()); }
    std::size_t n_antennas() const noexcept { return static_cast<std::size_t>(G.rows()); }

    void validate() const;
};

/// Free-space power gain (lambda / (4 pi d))^2.
double free_space_pathloss(double distance_m, double wavelength_m);

/// Draws H and G with i.i.d. CN(0, 1) small-scale fading (or Rician when
/// rician_k > 0) scaled by the square root of the large-scale gain.
ChannelSet draw_channels(const LinkGeometry &geom, std::size_t n_atoms, std::size_t n_users, std::size_t n_antennas,
                         Rng &rng, const ChannelOptions &options = {});

/// G * diag(sqrt(rho_n) exp(j reflect_phase_n)) * H.
cmat cascade(const cmat &H, const cmat &G, const surface::HrisConfig &cfg);

/// Per-user cascaded matrix A_k = G * diag(h_k), M x N.
cmat cascaded_per_user(const cmat &H, const cmat &G, std::size_t k);

} // namespace hris::channel
