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
#include <limits>
#include <string_view>
#include <vector>

#include "hris/array.hpp"
#include "hris/common.hpp"
#include "hris/rng.hpp"

namespace hris::aoa {

/// Single-RF-chain elevation estimation problem.
///
/// Snapshot t observes
///   y_t = w_t diag(sqrt(f)) a(theta) s_t sqrt(P) + n_t,   n_t ~ CN(0, noise_var)
/// where w_t is row t of `combiner`, f the sensed fraction (1 - rho, uniform
/// over the atoms), s_t the known pilot and P the transmit power implied by
/// `snr_db` (P / noise_var = 10^(snr_db / 10)).
struct AoaScenario
{
    array::PlanarArray array;
    double sensed_fraction = 1.0;
    double snr_db = 0.0;
    array::Direction truth{};
    cmat combiner; ///< T x N, unit-modulus entries
    cvec pilot;    ///< T, unit-modulus entries
    double noise_var = 1.0;

    std::size_t n_snapshots() const noexcept { return static_cast<std::size_t>(pilot.size()); }
    double tx_power() const { return db2lin(snr_db) * noise_var; }
    bool noiseless() const { return std::isinf(snr_db) && snr_db > 0.0; }
    void validate() const;
};

struct AoaGrid
{
    double lo_rad = 0.0;
    double hi_rad = deg2rad(89.75);
    std::size_t n_points = 721;
    std::size_t refine_iters = 60;
    double tolerance_rad = 1e-8;

    void validate() const;
    double step() const { return (hi_rad - lo_rad) / static_cast<double>(n_points - 1); }
    double point(std::size_t i) const { return lo_rad + step() * static_cast<double>(i); }
};

enum class ScheduleKind
{
    /// Directive beams whose sines are spread evenly over [0, 1): row t is
    /// conj(a(asin(t / T))) in the plane of the known azimuth.
    beam_sweep,
    /// Consecutive rows of the N-point DFT over the linear atom index.
    dft,
    /// I.i.d. uniform phases.
    random_phase,
};

ScheduleKind parse_schedule_kind(std::string_view name);
std::string_view to_string(ScheduleKind kind);

/// T x N combining schedule for the single sensing chain.
cmat snapshot_schedule(const array::PlanarArray &array, double azimuth_rad, std::size_t n_snapshots,
                       ScheduleKind kind, std::uint64_t seed = 0);

/// Noise-free per-snapshot gain g_t(theta) = w_t diag(sqrt(f)) a(theta, az)
/// for a fixed azimuth. Atoms sharing the same projected position along the
/// azimuth are merged, so a broadside-plane sweep of a k x k surface costs
/// O(T k) per evaluation instead of O(T k^2).
class ElevationResponse
{
  public:
    explicit ElevationResponse(const AoaScenario &sc);

    std::size_t n_snapshots() const noexcept { return static_cast<std::size_t>(coeff_.rows()); }
    std::size_t n_groups() const noexcept { return static_cast<std::size_t>(coeff_.cols()); }

    cvec gain(double elevation_rad) const;
    /// d g_t / d theta, analytic.
    cvec gain_derivative(double elevation_rad) const;

  private:
    rvec phase_rate_; ///< k * d_j for each merged group j
    cmat coeff_;      ///< T x J, merged combiner weights times sqrt(f)
};

/// Draws the T sensed samples. A null `rng` (or an infinite SNR) gives the
/// noise-free samples.
cvec simulate_snapshots(const AoaScenario &sc, Rng *rng);

/// Concentrated maximum-likelihood estimator with the complex amplitude as an
/// unknown nuisance:
///   theta_hat = argmax |sum_t y_t conj(g_t(theta) s_t)|^2 / sum_t |g_t(theta) s_t|^2
/// Coarse grid search followed by golden-section refinement on the bracket
/// around the best grid point. The grid responses are cached at construction.
class MlEstimator
{
  public:
    MlEstimator(const AoaScenario &sc, const AoaGrid &grid);

    double estimate(const cvec &y) const;
    double criterion(const cvec &y, double elevation_rad) const;

  private:
    ElevationResponse response_;
    cvec pilot_;
    AoaGrid grid_;
    cmat basis_;      ///< T x P, g(theta_i) .* s
    rvec basis_norm_; ///< P
};

double ml_estimate(const cvec &y, const AoaScenario &sc, const AoaGrid &grid);

/// Cramer-Rao bound on the elevation variance (rad^2) with the complex
/// amplitude as nuisance:
///   noise_var / (2 P Pperp),
///   Pperp = sum |dg_t|^2 |s_t|^2 - |sum dg_t conj(g_t) |s_t|^2|^2 / sum |g_t|^2 |s_t|^2.
/// Throws EstimationInfeasible when Pperp <= 0 or the scenario has no gain.
/// Returns 0 for a noiseless scenario.
double crlb_elevation(const AoaScenario &sc);

struct AoaExperiment
{
    std::vector<std::size_t> n_list{144, 400};
    std::vector<double> sensed_fractions{0.2, 0.8};
    std::size_t n_snapshots = 64;
    std::vector<double> snr_db{-10, -5, 0, 5, 10, 15, 20, 25, 30};
    std::size_t n_trials = 500;
    double spacing_m = array::default_spacing_m;
    double wavelength_m = array::default_wavelength_m;
    double azimuth_rad = 0.0;
    double truth_lo_rad = deg2rad(10.0);
    double truth_hi_rad = deg2rad(70.0);
    ScheduleKind schedule = ScheduleKind::beam_sweep;
    AoaGrid grid{};

    void validate() const;
};

struct AoaRow
{
    std::size_t n_atoms;
    double sensed_fraction;
    double snr_db;
    std::size_t n_trials;
    double rmse_rad;
    double rmse_deg;
    /// sqrt of the CRLB averaged over the same truth draws (rad).
    double crlb_rad;
};

/// RMSE of the ML estimator against the CRLB over every (N, fraction, SNR)
/// cell. Trial i uses streams derived from (seed, i) only, so every cell sees
/// the same truths and the same unit noise, and the output does not depend on
/// `workers`.
std::vector<AoaRow> rmse_experiment(const AoaExperiment &exp, std::uint64_t seed, std::size_t workers = 1);

/// Side length of a square surface with n atoms; throws if n is not square.
std::size_t square_side(std::size_t n);

} // namespace hris::aoa
