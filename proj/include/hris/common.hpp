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

#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hris {

using cdouble = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;
using rvec = Eigen::VectorXd;
using rmat = Eigen::MatrixXd;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr cdouble imag_unit{0.0, 1.0};

inline double deg2rad(double deg) { return deg * pi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / pi; }
inline double db2lin(double db) { return std::pow(10.0, db / 10.0); }
inline double lin2db(double lin) { return 10.0 * std::log10(lin); }

/// Wraps an angle into [0, 2*pi).
inline double wrap_phase(double phase)
{
    double w = std::fmod(phase, two_pi);
    if (w < 0.0)
        w += two_pi;
    // fmod can return exactly two_pi after the correction for tiny negatives
    return w >= two_pi ? 0.0 : w;
}

// Error hierarchy. Everything thrown by the library derives from hris::Error.

class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionError : public Error
{
  public:
    using Error::Error;
};

/// A parameter is outside its admissible range.
class ParameterError : public Error
{
  public:
    using Error::Error;
};

/// A linear system that must be uniquely solvable is rank deficient.
class IdentifiabilityError : public Error
{
  public:
    IdentifiabilityError(std::string what_system, std::size_t rank, std::size_t required)
        : Error(what_system + " is rank deficient: rank " + std::to_string(rank) + " < required " +
                std::to_string(required)),
          system_(std::move(what_system)), rank_(rank), required_(required)
    {
    }

    const std::string &system() const noexcept { return system_; }
    std::size_t rank() const noexcept { return rank_; }
    std::size_t required() const noexcept { return required_; }

  private:
    std::string system_;
    std::size_t rank_;
    std::size_t required_;
};

/// The estimation problem has no usable information (zero gain, unsensed atom, ...).
class EstimationInfeasible : public Error
{
  public:
    using Error::Error;
};

inline void require_size(Eigen::Index got, Eigen::Index expected, const char *what)
{
    if (got != expected)
        throw DimensionError(std::string(what) + ": expected length " + std::to_string(expected) + ", got " +
                             std::to_string(got));
}

} // namespace hris
