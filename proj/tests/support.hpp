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

// Shared helpers for the unit, property and acceptance tests: random
// generators, independent oracles and the invariant checks.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hris/array.hpp"
#include "hris/aoa.hpp"
#include "hris/channel.hpp"
#include "hris/chest.hpp"
#include "hris/common.hpp"
#include "hris/rng.hpp"
#include "hris/surface.hpp"

namespace hris::test {

inline double rel_err(const cmat &a, const cmat &b)
{
    const double den = b.norm();
    return den > 0.0 ? (a - b).norm() / den : a.norm();
}

// ---------------------------------------------------------------- generators

inline std::size_t gen_count(Rng &rng, std::size_t lo, std::size_t hi)
{
    return lo + static_cast<std::size_t>(rng.uniform() * static_cast<double>(hi - lo + 1)) % (hi - lo + 1);
}

inline cvec gen_cvec(Rng &rng, Eigen::Index n, double scale = 1.0)
{
    cvec v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = scale * rng.complex_normal();
    return v;
}

inline cmat gen_cmat(Rng &rng, Eigen::Index r, Eigen::Index c)
{
    return rng.complex_normal(r, c);
}

inline cmat gen_unit_modulus(Rng &rng, Eigen::Index r, Eigen::Index c)
{
    cmat m(r, c);
    for (Eigen::Index j = 0; j < c; ++j)
        for (Eigen::Index i = 0; i < r; ++i)
            m(i, j) = std::polar(1.0, rng.uniform(0.0, two_pi));
    return m;
}

inline rvec gen_phases(Rng &rng, Eigen::Index n)
{
    rvec p(n);
    for (Eigen::Index i = 0; i < n; ++i)
        p(i) = rng.uniform(0.0, two_pi);
    return p;
}

/// Per-atom splits, with the endpoints 0 and 1 hit on purpose now and then.
inline rvec gen_rho(Rng &rng, Eigen::Index n)
{
    rvec r(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double u = rng.uniform();
        r(i) = u < 0.05 ? 0.0 : (u < 0.1 ? 1.0 : rng.uniform());
    }
    return r;
}

inline surface::HrisConfig gen_hris_config(Rng &rng, std::size_t n_max = 24)
{
    const auto N = static_cast<Eigen::Index>(gen_count(rng, 1, n_max));
    const auto Nr = static_cast<Eigen::Index>(gen_count(rng, 1, static_cast<std::size_t>(N)));
    return {gen_rho(rng, N), gen_phases(rng, N), gen_phases(rng, N), gen_unit_modulus(rng, Nr, N)};
}

inline array::PlanarArray gen_array(Rng &rng)
{
    const auto nh = gen_count(rng, 1, 16);
    const auto nv = gen_count(rng, 1, 16);
    return array::PlanarArray(nh, nv, rng.uniform(0.001, 0.02), rng.uniform(0.005, 0.05));
}

inline array::Direction gen_direction(Rng &rng)
{
    return array::Direction(rng.uniform(0.0, 0.999 * pi / 2.0), rng.uniform(0.0, two_pi));
}

// ------------------------------------------------------------------- oracles

/// exp(j k <p, u>) from the textbook unit vector, element by element.
inline cdouble steering_oracle(double x, double y, double k, double el, double az)
{
    const double path = x * std::sin(el) * std::cos(az) + y * std::sin(el) * std::sin(az);
    return std::polar(1.0, k * path);
}

/// sum_n G(m, n) sqrt(rho_n) e^{j phi_n} H(n, k) as three nested loops.
inline cmat cascade_oracle(const cmat &H, const cmat &G, const rvec &rho, const rvec &phase)
{
    cmat out = cmat::Zero(G.rows(), H.cols());
    for (Eigen::Index m = 0; m < G.rows(); ++m)
        for (Eigen::Index k = 0; k < H.cols(); ++k)
            for (Eigen::Index n = 0; n < H.rows(); ++n)
                out(m, k) += G(m, n) * std::polar(std::sqrt(rho(n)), phase(n)) * H(n, k);
    return out;
}

/// g_t(theta) from the full steering vector (no atom merging).
inline cvec gain_oracle(const aoa::AoaScenario &sc, double elevation)
{
    const cvec a = array::steering_vector(sc.array, array::Direction(elevation, sc.truth.azimuth()));
    return std::sqrt(sc.sensed_fraction) * (sc.combiner * a);
}

/// Elevation CRLB from the finite-difference Hessian of the exact Gaussian
/// negative log-likelihood over (theta, Re alpha, Im alpha), evaluated on the
/// noise-free data; inverse taken on the 3 x 3 matrix.
inline double crlb_fd_oracle(const aoa::AoaScenario &sc)
{
    const double amp = std::sqrt(sc.tx_power());
    const double th0 = sc.truth.elevation();
    const cvec y = amp * gain_oracle(sc, th0).cwiseProduct(sc.pilot);
    auto nll = [&](double th, double ar, double ai) {
        const cvec mu = cdouble(ar, ai) * gain_oracle(sc, th).cwiseProduct(sc.pilot);
        return (y - mu).squaredNorm() / sc.noise_var;
    };
    const double x0[3] = {th0, amp, 0.0};
    const double h[3] = {1e-5, 1e-5 * amp, 1e-5 * amp};
    auto f = [&](const double *d) { return nll(x0[0] + d[0], x0[1] + d[1], x0[2] + d[2]); };
    Eigen::Matrix3d F;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double d[3] = {0, 0, 0};
            if (i == j) {
                d[i] = h[i];
                const double fp = f(d);
                d[i] = -h[i];
                const double fm = f(d);
                d[i] = 0;
                F(i, i) = (fp - 2.0 * f(d) + fm) / (h[i] * h[i]);
            } else {
                double s = 0.0;
                for (int a = -1; a <= 1; a += 2)
                    for (int b = -1; b <= 1; b += 2) {
                        d[i] = a * h[i];
                        d[j] = b * h[j];
                        s += a * b * f(d);
                        d[i] = d[j] = 0;
                    }
                F(i, j) = s / (4.0 * h[i] * h[j]);
            }
        }
    return F.inverse()(0, 0);
}

inline aoa::AoaScenario gen_aoa_scenario(Rng &rng)
{
    const auto side = gen_count(rng, 4, 14);
    const std::size_t T = gen_count(rng, 8, 48);
    const double az = rng.uniform() < 0.5 ? 0.0 : rng.uniform(0.0, two_pi);
    aoa::AoaScenario sc{array::PlanarArray::square(side), rng.uniform(0.1, 1.0), rng.uniform(-5.0, 25.0),
                        array::Direction(deg2rad(rng.uniform(5.0, 70.0)), az), {}, {}, rng.uniform(0.5, 2.0)};
    const auto kind = rng.uniform() < 0.5 ? aoa::ScheduleKind::beam_sweep : aoa::ScheduleKind::random_phase;
    sc.combiner = aoa::snapshot_schedule(sc.array, az, T, kind, static_cast<std::uint64_t>(rng.uniform() * 1e9));
    sc.pilot = gen_unit_modulus(rng, static_cast<Eigen::Index>(T), 1).col(0);
    return sc;
}

// --------------------------------------------------------- invariant checks
//
// Each check runs `cases` randomized instances and returns the number of
// failures; `first_failure` receives a description of the first one.

struct PropertyResult
{
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;

    void fail(const std::string &what)
    {
        if (failures++ == 0)
            first_failure = what;
    }
};

inline PropertyResult check_power_conservation(std::uint64_t seed, std::size_t cases)
{
    PropertyResult r;
    Rng rng(seed);
    for (std::size_t c = 0; c < cases; ++c, ++r.cases) {
        const auto cfg = gen_hris_config(rng);
        const auto sig = surface::build_signals(cfg);
        const double nr = static_cast<double>(cfg.n_rf());
        for (Eigen::Index n = 0; n < cfg.rho.size(); ++n) {
            // every combiner entry has unit modulus, so column n of the sensed
            // map carries N_r times the per-atom sensed power
            const double refl = std::norm(sig.reflected_gain(n));
            const double sens = sig.sensed_map.col(n).squaredNorm() / nr;
            if (std::abs(refl + sens - 1.0) > 1e-12 || std::abs(refl - cfg.rho(n)) > 1e-12) {
                r.fail("case " + std::to_string(c) + " atom " + std::to_string(n));
                break;
            }
        }
    }
    return r;
}

inline PropertyResult check_linearity(std::uint64_t seed, std::size_t cases)
{
    PropertyResult r;
    Rng rng(seed);
    for (std::size_t c = 0; c < cases; ++c, ++r.cases) {
        const auto cfg = gen_hris_config(rng);
        const auto sig = surface::build_signals(cfg);
        const auto N = static_cast<Eigen::Index>(cfg.size());
        const cvec x = gen_cvec(rng, N), y = gen_cvec(rng, N);
        const cdouble a = rng.complex_normal(), b = rng.complex_normal();
        const cvec z = a * x + b * y;
        const cvec s_lhs = surface::sense(sig, z);
        const cvec s_rhs = a * surface::sense(sig, x) + b * surface::sense(sig, y);
        const cvec r_lhs = surface::reflect(sig, z);
        const cvec r_rhs = a * surface::reflect(sig, x) + b * surface::reflect(sig, y);
        const double scale = 1.0 + z.norm() + x.norm() + y.norm();
        if ((s_lhs - s_rhs).norm() > 1e-12 * scale * static_cast<double>(N) ||
            (r_lhs - r_rhs).norm() > 1e-12 * scale)
            r.fail("case " + std::to_string(c));
    }
    return r;
}

inline PropertyResult check_steering_unit_modulus(std::uint64_t seed, std::size_t cases)
{
    PropertyResult r;
    Rng rng(seed);
    for (std::size_t c = 0; c < cases; ++c, ++r.cases) {
        const auto arr = gen_array(rng);
        const auto dir = gen_direction(rng);
        const cvec a = array::steering_vector(arr, dir);
        const rmat &P = arr.positions();
        bool ok = a.size() == static_cast<Eigen::Index>(arr.size());
        for (Eigen::Index n = 0; ok && n < a.size(); ++n) {
            const cdouble o = steering_oracle(P(0, n), P(1, n), arr.wavenumber(), dir.elevation(), dir.azimuth());
            ok = std::abs(std::abs(a(n)) - 1.0) < 1e-12 && std::abs(a(n) - o) < 1e-9;
        }
        if (!ok)
            r.fail("case " + std::to_string(c));
    }
    return r;
}

inline PropertyResult check_cascade(std::uint64_t seed, std::size_t cases)
{
    PropertyResult r;
    Rng rng(seed);
    for (std::size_t c = 0; c < cases; ++c, ++r.cases) {
        // M = 4 antennas, N = 3 atoms, K = 2 users
        const cmat H = gen_cmat(rng, 3, 2);
        const cmat G = gen_cmat(rng, 4, 3);
        const surface::HrisConfig cfg{gen_rho(rng, 3), gen_phases(rng, 3), gen_phases(rng, 3),
                                      gen_unit_modulus(rng, 1, 3)};
        const cmat got = channel::cascade(H, G, cfg);
        const cmat want = cascade_oracle(H, G, cfg.rho, cfg.reflect_phase);
        if ((got - want).norm() > 1e-12 * (1.0 + want.norm()))
            r.fail("case " + std::to_string(c));
    }
    return r;
}

/// Small randomized channel-estimation and AoA experiments run with one worker
/// and with several; the outputs must agree bitwise.
inline PropertyResult check_worker_determinism(std::uint64_t seed, std::size_t cases)
{
    PropertyResult r;
    Rng rng(seed);
    for (std::size_t c = 0; c < cases; ++c, ++r.cases) {
        const std::uint64_t s = static_cast<std::uint64_t>(rng.uniform() * 1e15);
        const std::size_t workers = gen_count(rng, 2, 6);
        const std::size_t trials = gen_count(rng, 1, 7);
        bool ok = true;
        if (c % 2 == 0) {
            chest::ChestSetup setup;
            setup.n_atoms = gen_count(rng, 2, 8);
            setup.n_rf = setup.n_atoms;
            setup.n_users = gen_count(rng, 1, 3);
            setup.n_antennas = gen_count(rng, 1, 4);
            setup.pilots = setup.n_atoms * setup.n_users;
            setup.snr_db = rng.uniform(0.0, 30.0);
            const std::vector<double> rho{0.3, 0.6};
            const auto a = chest::tradeoff_experiment(setup, rho, 2, trials, s, 1);
            const auto b = chest::tradeoff_experiment(setup, rho, 2, trials, s, workers);
            for (std::size_t i = 0; ok && i < a.size(); ++i)
                ok = a[i].nmse_H == b[i].nmse_H && a[i].nmse_G == b[i].nmse_G;
        } else {
            aoa::AoaExperiment exp;
            exp.n_list = {gen_count(rng, 2, 5) * gen_count(rng, 2, 5)};
            const auto side = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(exp.n_list[0]))));
            exp.n_list[0] = side * side;
            exp.sensed_fractions = {rng.uniform(0.1, 1.0)};
            exp.snr_db = {rng.uniform(0.0, 20.0)};
            exp.n_snapshots = gen_count(rng, 4, 12);
            exp.n_trials = trials;
            exp.grid.n_points = 91;
            exp.grid.refine_iters = 20;
            const auto a = aoa::rmse_experiment(exp, s, 1);
            const auto b = aoa::rmse_experiment(exp, s, workers);
            for (std::size_t i = 0; ok && i < a.size(); ++i)
                ok = a[i].rmse_rad == b[i].rmse_rad && a[i].crlb_rad == b[i].crlb_rad;
        }
        if (!ok)
            r.fail("case " + std::to_string(c) + " with " + std::to_string(workers) + " workers");
    }
    return r;
}

} // namespace hris::test
