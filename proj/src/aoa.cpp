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

#include "hris/aoa.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hris/parallel.hpp"
#include "hris/surface.hpp"

namespace hris::aoa {

void AoaScenario::validate() const
{
    const auto N = static_cast<Eigen::Index>(array.size());
    if (pilot.size() < 1)
        throw ParameterError("AoaScenario: at least one snapshot is required");
    if (!(sensed_fraction > 0.0 && sensed_fraction <= 1.0))
        throw ParameterError("AoaScenario: sensed fraction must lie in (0, 1]");
    if (!(noise_var > 0.0))
        throw ParameterError("AoaScenario: noise variance must be > 0");
    if (std::isnan(snr_db))
        throw ParameterError("AoaScenario: SNR is NaN");
    require_size(combiner.rows(), pilot.size(), "AoaScenario combiner rows");
    require_size(combiner.cols(), N, "AoaScenario combiner columns");
    for (Eigen::Index c = 0; c < combiner.cols(); ++c)
        for (Eigen::Index r = 0; r < combiner.rows(); ++r)
            if (std::abs(std::abs(combiner(r, c)) - 1.0) > 1e-9)
                throw ParameterError("AoaScenario: combiner entries must have unit modulus");
    for (Eigen::Index t = 0; t < pilot.size(); ++t)
        if (std::abs(std::abs(pilot(t)) - 1.0) > 1e-9)
            throw ParameterError("AoaScenario: pilot symbols must have unit modulus");
}

void AoaGrid::validate() const
{
    if (!(lo_rad < hi_rad))
        throw ParameterError("AoaGrid: lo must be < hi");
    if (n_points < 2)
        throw ParameterError("AoaGrid: at least two grid points are required");
    if (lo_rad < 0.0 || hi_rad >= 0.5 * pi)
        throw ParameterError("AoaGrid: search interval must lie within [0, pi/2)");
    if (!(tolerance_rad > 0.0))
        throw ParameterError("AoaGrid: tolerance must be > 0");
}

ScheduleKind parse_schedule_kind(std::string_view name)
{
    if (name == "beam_sweep")
        return ScheduleKind::beam_sweep;
    if (name == "dft")
        return ScheduleKind::dft;
    if (name == "random_phase")
        return ScheduleKind::random_phase;
    throw ParameterError("unknown AoA schedule '" + std::string(name) + "' (expected beam_sweep, dft or random_phase)");
}

std::string_view to_string(ScheduleKind kind)
{
    switch (kind) {
    case ScheduleKind::beam_sweep:
        return "beam_sweep";
    case ScheduleKind::dft:
        return "dft";
    case ScheduleKind::random_phase:
        return "random_phase";
    }
    return "?";
}

cmat snapshot_schedule(const array::PlanarArray &array, double azimuth_rad, std::size_t n_snapshots, ScheduleKind kind,
                       std::uint64_t seed)
{
    if (n_snapshots == 0)
        throw ParameterError("snapshot_schedule: T must be >= 1");
    const std::size_t N = array.size();
    if (kind == ScheduleKind::dft || kind == ScheduleKind::random_phase) {
        const auto k = kind == ScheduleKind::dft ? surface::CombinerKind::dft : surface::CombinerKind::random_phase;
        return surface::stack(surface::combiner_schedule(N, 1, n_snapshots, k, seed));
    }

    const rvec d = array::projected_positions(array, azimuth_rad);
    const double k = array.wavenumber();
    cmat w(static_cast<Eigen::Index>(n_snapshots), static_cast<Eigen::Index>(N));
    for (std::size_t t = 0; t < n_snapshots; ++t) {
        const double u = static_cast<double>(t) / static_cast<double>(n_snapshots);
        for (Eigen::Index n = 0; n < d.size(); ++n)
            w(static_cast<Eigen::Index>(t), n) = std::polar(1.0, -k * d(n) * u);
    }
    return w;
}

ElevationResponse::ElevationResponse(const AoaScenario &sc)
{
    sc.validate();
    const rvec d = array::projected_positions(sc.array, sc.truth.azimuth());
    const auto N = d.size();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(N));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return d(a) < d(b); });

    const double tol = 1e-9 * sc.array.spacing_m();
    std::vector<double> group_pos;
    std::vector<Eigen::Index> group_of(static_cast<std::size_t>(N));
    for (auto n : order) {
        if (group_pos.empty() || d(n) - group_pos.back() > tol)
            group_pos.push_back(d(n));
        group_of[static_cast<std::size_t>(n)] = static_cast<Eigen::Index>(group_pos.size() - 1);
    }

    const auto J = static_cast<Eigen::Index>(group_pos.size());
    const double k = sc.array.wavenumber();
    phase_rate_.resize(J);
    for (Eigen::Index j = 0; j < J; ++j)
        phase_rate_(j) = k * group_pos[static_cast<std::size_t>(j)];

    const double amp = std::sqrt(sc.sensed_fraction);
    coeff_.setZero(sc.combiner.rows(), J);
    for (Eigen::Index n = 0; n < N; ++n)
        coeff_.col(group_of[static_cast<std::size_t>(n)]) += amp * sc.combiner.col(n);
}

cvec ElevationResponse::gain(double elevation_rad) const
{
    const double s = std::sin(elevation_rad);
    cvec e(phase_rate_.size());
    for (Eigen::Index j = 0; j < e.size(); ++j)
        e(j) = std::polar(1.0, phase_rate_(j) * s);
    return coeff_ * e;
}

cvec ElevationResponse::gain_derivative(double elevation_rad) const
{
    const double s = std::sin(elevation_rad);
    const double c = std::cos(elevation_rad);
    cvec e(phase_rate_.size());
    for (Eigen::Index j = 0; j < e.size(); ++j)
        e(j) = imag_unit * (phase_rate_(j) * c) * std::polar(1.0, phase_rate_(j) * s);
    return coeff_ * e;
}

cvec simulate_snapshots(const AoaScenario &sc, Rng *rng)
{
    sc.validate();
    const cvec a = array::steering_vector(sc.array, sc.truth);
    const double amp = std::sqrt(sc.sensed_fraction);
    cvec y = (sc.combiner * a) * amp;
    if (sc.noiseless()) {
        y = y.cwiseProduct(sc.pilot);
        return y;
    }
    y = y.cwiseProduct(sc.pilot) * std::sqrt(sc.tx_power());
    if (rng != nullptr)
        for (Eigen::Index t = 0; t < y.size(); ++t)
            y(t) += rng->complex_normal(sc.noise_var);
    return y;
}

MlEstimator::MlEstimator(const AoaScenario &sc, const AoaGrid &grid) : response_(sc), pilot_(sc.pilot), grid_(grid)
{
    grid_.validate();
    const auto T = pilot_.size();
    const auto P = static_cast<Eigen::Index>(grid_.n_points);
    basis_.resize(T, P);
    basis_norm_.resize(P);
    for (Eigen::Index i = 0; i < P; ++i) {
        basis_.col(i) = response_.gain(grid_.point(static_cast<std::size_t>(i))).cwiseProduct(pilot_);
        basis_norm_(i) = basis_.col(i).squaredNorm();
    }
    if (basis_norm_.maxCoeff() <= 0.0)
        throw EstimationInfeasible("ml_estimate: the combiner schedule has zero gain over the whole search grid");
}

double MlEstimator::criterion(const cvec &y, double elevation_rad) const
{
    const cvec b = response_.gain(elevation_rad).cwiseProduct(pilot_);
    const double norm = b.squaredNorm();
    if (norm <= 0.0)
        return 0.0;
    return std::norm(b.dot(y)) / norm;
}

double MlEstimator::estimate(const cvec &y) const
{
    require_size(y.size(), pilot_.size(), "ml_estimate samples");
    const cvec corr = basis_.adjoint() * y;

    Eigen::Index best = -1;
    double best_val = -1.0;
    for (Eigen::Index i = 0; i < corr.size(); ++i) {
        if (basis_norm_(i) <= 0.0)
            continue;
        const double v = std::norm(corr(i)) / basis_norm_(i);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }

    const auto last = static_cast<Eigen::Index>(grid_.n_points) - 1;
    double a = grid_.point(static_cast<std::size_t>(std::max<Eigen::Index>(best - 1, 0)));
    double b = grid_.point(static_cast<std::size_t>(std::min<Eigen::Index>(best + 1, last)));

    // Golden-section search for the maximum on [a, b].
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = criterion(y, x1);
    double f2 = criterion(y, x2);
    for (std::size_t it = 0; it < grid_.refine_iters && (b - a) > grid_.tolerance_rad; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = criterion(y, x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = criterion(y, x1);
        }
    }

    // Never return something worse than the grid winner.
    const double refined = 0.5 * (a + b);
    const double grid_best = grid_.point(static_cast<std::size_t>(best));
    return criterion(y, refined) >= criterion(y, grid_best) ? refined : grid_best;
}

double ml_estimate(const cvec &y, const AoaScenario &sc, const AoaGrid &grid)
{
    return MlEstimator(sc, grid).estimate(y);
}

double crlb_elevation(const AoaScenario &sc)
{
    const ElevationResponse resp(sc);
    const double theta = sc.truth.elevation();
    const cvec g = resp.gain(theta);
    const cvec dg = resp.gain_derivative(theta);
    const rvec w = sc.pilot.cwiseAbs2();

    double energy = 0.0, denergy = 0.0;
    cdouble cross = 0.0;
    for (Eigen::Index t = 0; t < g.size(); ++t) {
        energy += std::norm(g(t)) * w(t);
        denergy += std::norm(dg(t)) * w(t);
        cross += dg(t) * std::conj(g(t)) * w(t);
    }
    if (energy <= 0.0)
        throw EstimationInfeasible("crlb_elevation: the combiner schedule has zero gain at the true direction");
    const double projected = denergy - std::norm(cross) / energy;
    if (!(projected > 1e-12 * denergy) || !(projected > 0.0))
        throw EstimationInfeasible("crlb_elevation: elevation is not identifiable (projected derivative energy <= 0)");
    if (sc.noiseless())
        return 0.0;
    return sc.noise_var / (2.0 * sc.tx_power() * projected);
}

void AoaExperiment::validate() const
{
    if (n_list.empty() || sensed_fractions.empty() || snr_db.empty())
        throw ParameterError("AoaExperiment: N, fraction and SNR lists must be non-empty");
    if (n_trials < 1)
        throw ParameterError("AoaExperiment: n_trials must be >= 1");
    if (n_snapshots < 1)
        throw ParameterError("AoaExperiment: T must be >= 1");
    for (auto n : n_list)
        square_side(n);
    for (auto f : sensed_fractions)
        if (!(f > 0.0 && f <= 1.0))
            throw ParameterError("AoaExperiment: sensed fractions must lie in (0, 1]");
    if (!(truth_lo_rad >= grid.lo_rad && truth_hi_rad <= grid.hi_rad && truth_lo_rad <= truth_hi_rad))
        throw ParameterError("AoaExperiment: truth interval must lie inside the search grid");
    grid.validate();
}

std::size_t square_side(std::size_t n)
{
    auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (n == 0 || side * side != n)
        throw ParameterError("surface size " + std::to_string(n) + " is not a perfect square");
    return side;
}

std::vector<AoaRow> rmse_experiment(const AoaExperiment &exp, std::uint64_t seed, std::size_t workers)
{
    exp.validate();
    const std::size_t nN = exp.n_list.size();
    const std::size_t nF = exp.sensed_fractions.size();
    const std::size_t nS = exp.snr_db.size();
    const std::size_t n_cells = nN * nF * nS;
    auto cell = [&](std::size_t i, std::size_t f, std::size_t s) { return (i * nF + f) * nS + s; };

    // Per (N, fraction) the estimator does not depend on the truth or the SNR.
    std::vector<AoaScenario> base;
    std::vector<MlEstimator> estimators;
    base.reserve(nN * nF);
    estimators.reserve(nN * nF);
    const cvec pilot = cvec::Ones(static_cast<Eigen::Index>(exp.n_snapshots));
    for (auto n : exp.n_list) {
        const auto arr = array::PlanarArray::square(square_side(n), exp.spacing_m, exp.wavelength_m);
        const cmat w = snapshot_schedule(arr, exp.azimuth_rad, exp.n_snapshots, exp.schedule, seed);
        for (auto f : exp.sensed_fractions) {
            AoaScenario sc{arr, f, 0.0, array::Direction(exp.truth_lo_rad, exp.azimuth_rad), w, pilot};
            estimators.emplace_back(sc, exp.grid);
            base.push_back(std::move(sc));
        }
    }

    struct TrialOut
    {
        std::vector<double> sq_err;
        std::vector<double> crlb;
    };
    std::vector<TrialOut> trials(exp.n_trials);

    parallel_for(exp.n_trials, workers, [&](std::size_t trial) {
        TrialOut out{std::vector<double>(n_cells), std::vector<double>(n_cells)};
        Rng truth_rng = Rng::derive(seed, {tag(Stream::truth), trial});
        const double theta = truth_rng.uniform(exp.truth_lo_rad, exp.truth_hi_rad);
        const array::Direction truth(theta, exp.azimuth_rad);

        for (std::size_t i = 0; i < nN; ++i)
            for (std::size_t f = 0; f < nF; ++f) {
                const std::size_t b = i * nF + f;
                for (std::size_t s = 0; s < nS; ++s) {
                    AoaScenario sc = base[b];
                    sc.truth = truth;
                    sc.snr_db = exp.snr_db[s];
                    Rng noise = Rng::derive(seed, {tag(Stream::aoa_noise), trial});
                    const cvec y = simulate_snapshots(sc, &noise);
                    const double est = estimators[b].estimate(y);
                    out.sq_err[cell(i, f, s)] = (est - theta) * (est - theta);
                    out.crlb[cell(i, f, s)] = crlb_elevation(sc);
                }
            }
        trials[trial] = std::move(out);
    });

    std::vector<AoaRow> rows;
    rows.reserve(n_cells);
    for (std::size_t i = 0; i < nN; ++i)
        for (std::size_t f = 0; f < nF; ++f)
            for (std::size_t s = 0; s < nS; ++s) {
                double se = 0.0, cr = 0.0;
                for (const auto &t : trials) {
                    se += t.sq_err[cell(i, f, s)];
                    cr += t.crlb[cell(i, f, s)];
                }
                const double n = static_cast<double>(exp.n_trials);
                const double rmse = std::sqrt(se / n);
                rows.push_back(
                    {exp.n_list[i], exp.sensed_fractions[f], exp.snr_db[s], exp.n_trials, rmse, rad2deg(rmse),
                     std::sqrt(cr / n)});
            }
    return rows;
}

} // namespace hris::aoa
