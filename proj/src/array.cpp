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

#include "hris/array.hpp"

#include <cmath>
#include <string>

namespace hris::array {

PlanarArray::PlanarArray(std::size_t n_h, std::size_t n_v, double spacing_m, double wavelength_m)
    : n_h_(n_h), n_v_(n_v), spacing_m_(spacing_m), wavelength_m_(wavelength_m)
{
    if (n_h == 0 || n_v == 0)
        throw ParameterError("PlanarArray: element counts must be >= 1");
    if (!(spacing_m > 0.0) || !std::isfinite(spacing_m))
        throw ParameterError("PlanarArray: spacing must be positive, got " + std::to_string(spacing_m));
    if (!(wavelength_m > 0.0) || !std::isfinite(wavelength_m))
        throw ParameterError("PlanarArray: wavelength must be positive, got " + std::to_string(wavelength_m));

    positions_.setZero(3, static_cast<Eigen::Index>(size()));
    const double cx = 0.5 * static_cast<double>(n_h_ - 1);
    const double cy = 0.5 * static_cast<double>(n_v_ - 1);
    for (std::size_t n = 0; n < size(); ++n) {
        const auto c = static_cast<double>(n % n_h_);
        const auto r = static_cast<double>(n / n_h_);
        positions_(0, static_cast<Eigen::Index>(n)) = (c - cx) * spacing_m_;
        positions_(1, static_cast<Eigen::Index>(n)) = (r - cy) * spacing_m_;
    }
}

Eigen::Vector3d PlanarArray::position(std::size_t n) const
{
    if (n >= size())
        throw ParameterError("PlanarArray::position: index out of range");
    return positions_.col(static_cast<Eigen::Index>(n));
}

Direction::Direction(double elevation_rad, double azimuth_rad)
{
    if (!std::isfinite(elevation_rad) || !std::isfinite(azimuth_rad))
        throw ParameterError("Direction: angles must be finite");
    if (elevation_rad < 0.0 || elevation_rad >= 0.5 * pi)
        throw ParameterError("Direction: elevation must lie in [0, pi/2), got " + std::to_string(elevation_rad));
    elevation_ = elevation_rad;
    azimuth_ = wrap_phase(azimuth_rad);
}

Direction Direction::from_signed(double angle_rad, double plane_azimuth_rad)
{
    if (angle_rad < 0.0)
        return Direction(-angle_rad, plane_azimuth_rad + pi);
    return Direction(angle_rad, plane_azimuth_rad);
}

Eigen::Vector3d Direction::unit() const
{
    const double se = std::sin(elevation_);
    return {se * std::cos(azimuth_), se * std::sin(azimuth_), std::cos(elevation_)};
}

cvec steering_vector(const PlanarArray &array, const Direction &dir)
{
    const Eigen::Vector3d u = dir.unit();
    const double k = array.wavenumber();
    const rvec path = array.positions().transpose() * u;
    cvec a(path.size());
    for (Eigen::Index n = 0; n < path.size(); ++n)
        a(n) = std::polar(1.0, k * path(n));
    return a;
}

rvec projected_positions(const PlanarArray &array, double azimuth_rad)
{
    const auto &p = array.positions();
    return p.row(0).transpose() * std::cos(azimuth_rad) + p.row(1).transpose() * std::sin(azimuth_rad);
}

cdouble array_factor(const PlanarArray &array, const cvec &weights, const Direction &dir)
{
    require_size(weights.size(), static_cast<Eigen::Index>(array.size()), "array_factor weights");
    return (weights.transpose() * steering_vector(array, dir))(0);
}

rvec gradient_phase_profile(const PlanarArray &array, const Direction &target)
{
    const cvec a = steering_vector(array, target);
    rvec phase(a.size());
    for (Eigen::Index n = 0; n < a.size(); ++n)
        phase(n) = wrap_phase(-std::arg(a(n)));
    return phase;
}

} // namespace hris::array
