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

#include <vector>

#include "hris/common.hpp"

namespace hris::array {

inline constexpr double speed_of_light = 299'792'458.0;

/// Nominal 19 GHz operating point. The wavelength is the rounded 15.70 mm
/// figure used throughout the presets rather than c/f (15.78 mm).
inline constexpr double default_carrier_hz = 19e9;
inline constexpr double default_wavelength_m = 0.01570;
inline constexpr double default_spacing_m = 0.004;

/// Uniform planar array in the x-y plane, broadside along +z.
///
/// Element n sits at row r = n / n_h, column c = n % n_h, with positions
/// centered on the phase center:
///   x = (c - (n_h - 1) / 2) * spacing,  y = (r - (n_v - 1) / 2) * spacing.
class PlanarArray
{
  public:
    PlanarArray(std::size_t n_h, std::size_t n_v, double spacing_m = default_spacing_m,
                double wavelength_m = default_wavelength_m);

    /// Square n x n aperture.
    static PlanarArray square(std::size_t side, double spacing_m = default_spacing_m,
                              double wavelength_m = default_wavelength_m)
    {
        return PlanarArray(side, side, spacing_m, wavelength_m);
    }

    std::size_t n_h() const noexcept { return n_h_; }
    std::size_t n_v() const noexcept { return n_v_; }
    std::size_t size() const noexcept { return n_h_ * n_v_; }
    double spacing_m() const noexcept { return spacing_m_; }
    double wavelength_m() const noexcept { return wavelength_m_; }
    double wavenumber() const noexcept { return two_pi / wavelength_m_; }

    Eigen::Vector3d position(std::size_t n) const;

    /// 3 x N matrix of element positions.
    const rmat &positions() const noexcept { return positions_; }

  private:
    std::size_t n_h_, n_v_;
    double spacing_m_, wavelength_m_;
    rmat positions_;
};

/// Far-field direction. Elevation is measured from broadside (+z) and lies in
/// [0, pi/2); azimuth is measured in the surface plane from +x, wrapped to
/// [0, 2*pi).
class Direction
{
  public:
    Direction() = default;
    Direction(double elevation_rad, double azimuth_rad);

    /// Signed angle in the principal plane through `plane_azimuth`: negative
    /// angles fold onto the opposite azimuth.
    static Direction from_signed(double angle_rad, double plane_azimuth_rad = 0.0);

    double elevation() const noexcept { return elevation_; }
    double azimuth() const noexcept { return azimuth_; }

    /// Unit vector (sin el cos az, sin el sin az, cos el).
    Eigen::Vector3d unit() const;

  private:
    double elevation_ = 0.0;
    double azimuth_ = 0.0;
};

/// a_n = exp(j k <p_n, u(dir)>).
cvec steering_vector(const PlanarArray &array, const Direction &dir);

/// Element positions projected on the in-plane unit vector at `azimuth`:
/// d_n = x_n cos(az) + y_n sin(az). The steering phase of element n is then
/// k * d_n * sin(elevation).
rvec projected_positions(const PlanarArray &array, double azimuth_rad);

/// Sum_n w_n a_n(dir) (no conjugation on the weights).
cdouble array_factor(const PlanarArray &array, const cvec &weights, const Direction &dir);

/// Per-atom reflection phases that steer a broadside-incident wave towards
/// `target`: phi_n = -k <p_n, u(target)>, wrapped to [0, 2*pi).
rvec gradient_phase_profile(const PlanarArray &array, const Direction &target);

} // namespace hris::array
