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

#include "hris/channel.hpp"

#include <cmath>
#include <string>

namespace hris::channel {

void LinkGeometry::validate() const
{
    if (!(cell_radius_m > 0.0) || !(hris_bs_distance_m > 0.0) || !(carrier_hz > 0.0) || !(min_distance_m > 0.0))
        throw ParameterError("LinkGeometry: distances and carrier must be strictly positive");
    if (wavelength_m < 0.0)
        throw ParameterError("LinkGeometry: wavelength must be >= 0 (0 derives it from the carrier)");
}

double LinkGeometry::wavelength() const
{
    return wavelength_m > 0.0 ? wavelength_m : array::speed_of_light / carrier_hz;
}

PathlossMode parse_pathloss_mode(std::string_view name)
{
    if (name == "free_space")
        return PathlossMode::free_space;
    if (name == "normalized")
        return PathlossMode::normalized;
    throw ParameterError("unknown pathloss mode '" + std::string(name) + "' (expected free_space or normalized)");
}

std::string_view to_string(PathlossMode mode)
{
    return mode == PathlossMode::free_space ? "free_space" : "normalized";
}

void ChannelSet::validate() const
{
    if (!H.allFinite() || !G.allFinite())
        throw ParameterError("ChannelSet: non-finite channel entries");
    if (G.cols() != H.rows())
        throw DimensionError("ChannelSet: G has " + std::to_string(G.cols()) + " columns but H has " +
                             std::to_string(H.rows()) + " rows");
    if (!(noise_var_hris > 0.0) || !(noise_var_bs > 0.0) || !(tx_power > 0.0))
        throw ParameterError("ChannelSet: noise variances and tx power must be > 0");
}

double free_space_pathloss(double distance_m, double wavelength_m)
{
    if (!(distance_m > 0.0) || !(wavelength_m > 0.0))
        throw ParameterError("free_space_pathloss: distance and wavelength must be > 0");
    const double a = wavelength_m / (4.0 * pi * distance_m);
    return a * a;
}

namespace {

// Plane-wave line-of-sight term with a random linear phase ramp across the
// atom index (and a random common phase).
cvec los_ramp(Eigen::Index n, Rng &rng)
{
    const double slope = rng.uniform(-pi, pi);
    const double offset = rng.uniform(0.0, two_pi);
    cvec v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = std::polar(1.0, offset + slope * static_cast<double>(i));
    return v;
}

} // namespace

ChannelSet draw_channels(const LinkGeometry &geom, std::size_t n_atoms, std::size_t n_users, std::size_t n_antennas,
                         Rng &rng, const ChannelOptions &options)
{
    geom.validate();
    if (n_atoms == 0 || n_users == 0 || n_antennas == 0)
        throw ParameterError("draw_channels: N, K and M must be >= 1");
    if (!(options.rician_k >= 0.0))
        throw ParameterError("draw_channels: Rician K-factor must be >= 0");

    const auto N = static_cast<Eigen::Index>(n_atoms);
    const auto K = static_cast<Eigen::Index>(n_users);
    const auto M = static_cast<Eigen::Index>(n_antennas);
    const double lambda = geom.wavelength();

    ChannelSet ch;
    ch.noise_var_hris = options.budget.noise_var_hris;
    ch.noise_var_bs = options.budget.noise_var_bs;
    ch.tx_power = options.budget.tx_power;

    // UT positions: uniform on the disc centred at the origin, HRIS at (0, R).
    ch.user_distance_m.resize(K);
    ch.user_pathloss.resize(K);
    for (Eigen::Index k = 0; k < K; ++k) {
        const double r = geom.cell_radius_m * std::sqrt(rng.uniform());
        const double phi = rng.uniform(0.0, two_pi);
        const double dx = r * std::cos(phi);
        const double dy = r * std::sin(phi) - geom.cell_radius_m;
        const double d = std::max(std::hypot(dx, dy), geom.min_distance_m);
        ch.user_distance_m(k) = d;
        ch.user_pathloss(k) =
            options.pathloss == PathlossMode::free_space ? free_space_pathloss(d, lambda) : 1.0;
    }
    ch.bs_pathloss = options.pathloss == PathlossMode::free_space
                         ? free_space_pathloss(geom.hris_bs_distance_m, lambda)
                         : 1.0;

    ch.H = rng.complex_normal(N, K);
    ch.G = rng.complex_normal(M, N);

    if (options.rician_k > 0.0) {
        const double w_los = std::sqrt(options.rician_k / (options.rician_k + 1.0));
        const double w_nlos = std::sqrt(1.0 / (options.rician_k + 1.0));
        for (Eigen::Index k = 0; k < K; ++k)
            ch.H.col(k) = w_nlos * ch.H.col(k) + w_los * los_ramp(N, rng);
        const cvec rx = los_ramp(M, rng);
        const cvec tx = los_ramp(N, rng);
        ch.G = w_nlos * ch.G + w_los * rx * tx.transpose();
    }

    for (Eigen::Index k = 0; k < K; ++k)
        ch.H.col(k) *= std::sqrt(ch.user_pathloss(k));
    ch.G *= std::sqrt(ch.bs_pathloss);

    ch.validate();
    return ch;
}

cmat cascade(const cmat &H, const cmat &G, const surface::HrisConfig &cfg)
{
    cfg.validate();
    require_size(H.rows(), cfg.rho.size(), "cascade H rows");
    require_size(G.cols(), cfg.rho.size(), "cascade G columns");
    cvec gain(cfg.rho.size());
    for (Eigen::Index n = 0; n < gain.size(); ++n)
        gain(n) = std::polar(std::sqrt(cfg.rho(n)), cfg.reflect_phase(n));
    return G * gain.asDiagonal() * H;
}

cmat cascaded_per_user(const cmat &H, const cmat &G, std::size_t k)
{
    if (k >= static_cast<std::size_t>(H.cols()))
        throw ParameterError("cascaded_per_user: user index " + std::to_string(k) + " out of range (K = " +
                             std::to_string(H.cols()) + ")");
    require_size(G.cols(), H.rows(), "cascaded_per_user G columns");
    return G * H.col(static_cast<Eigen::Index>(k)).asDiagonal();
}

} // namespace hris::channel
