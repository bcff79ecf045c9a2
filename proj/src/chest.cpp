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

#include "hris/chest.hpp"

#include <cmath>
#include <limits>

#include "hris/parallel.hpp"

namespace hris::chest {

namespace {

std::size_t qr_rank(const cmat &m)
{
    if (m.size() == 0)
        return 0;
    Eigen::ColPivHouseholderQR<cmat> qr(m);
    return static_cast<std::size_t>(qr.rank());
}

cmat noise_block(Eigen::Index rows, Eigen::Index cols, double var, Rng *rng)
{
    if (rng == nullptr)
        return cmat::Zero(rows, cols);
    return rng->complex_normal(rows, cols, var);
}

} // namespace

double PilotSchedule::pilot_scale() const
{
    return (pilots.adjoint() * pilots)(0, 0).real();
}

void PilotSchedule::validate() const
{
    if (pilots.rows() == 0 || pilots.rows() != pilots.cols())
        throw DimensionError("PilotSchedule: pilot block must be square K x K");
    if (slots.empty())
        throw ParameterError("PilotSchedule: at least one slot is required");
    const double c = pilot_scale();
    const cmat gram = pilots * pilots.adjoint();
    if (!(c > 0.0) || !gram.isApprox(c * cmat::Identity(pilots.rows(), pilots.rows()), 1e-10))
        throw ParameterError("PilotSchedule: pilot block is not orthogonal (X X^H != c I)");
    for (const auto &s : slots) {
        s.validate();
        require_size(static_cast<Eigen::Index>(s.size()), static_cast<Eigen::Index>(n_atoms()), "PilotSchedule slot N");
        require_size(static_cast<Eigen::Index>(s.n_rf()), static_cast<Eigen::Index>(n_rf()), "PilotSchedule slot N_r");
    }
}

std::size_t slots_for_pilots(std::size_t pilot_symbols, std::size_t n_users)
{
    if (n_users == 0)
        throw ParameterError("slots_for_pilots: K must be >= 1");
    return (pilot_symbols + n_users - 1) / n_users;
}

std::vector<rvec> dft_reflection_patterns(std::size_t n_atoms, std::size_t n_slots, const rvec &base)
{
    if (base.size() != 0)
        require_size(base.size(), static_cast<Eigen::Index>(n_atoms), "reflection base pattern");
    std::vector<rvec> out;
    out.reserve(n_slots);
    for (std::size_t t = 0; t < n_slots; ++t) {
        rvec phi(static_cast<Eigen::Index>(n_atoms));
        for (std::size_t n = 0; n < n_atoms; ++n) {
            const double b = base.size() ? base(static_cast<Eigen::Index>(n)) : 0.0;
            const auto idx = static_cast<double>((t * n) % n_atoms);
            phi(static_cast<Eigen::Index>(n)) = wrap_phase(b - two_pi * idx / static_cast<double>(n_atoms));
        }
        out.push_back(std::move(phi));
    }
    return out;
}

PilotSchedule make_schedule(const ScheduleSpec &spec)
{
    if (spec.n_users == 0 || spec.n_slots == 0)
        throw ParameterError("make_schedule: K and n_slots must be >= 1");
    const auto N = static_cast<Eigen::Index>(spec.n_atoms);
    const auto combiners =
        surface::combiner_schedule(spec.n_atoms, spec.n_rf, spec.n_slots, spec.combiner, spec.combiner_seed);
    const auto phases = dft_reflection_patterns(spec.n_atoms, spec.n_slots, spec.base_reflect_phase);
    if (spec.sense_phase.size() != 0)
        require_size(spec.sense_phase.size(), N, "make_schedule sense_phase");

    PilotSchedule sched;
    sched.pilots = surface::dft_matrix(spec.n_users);
    sched.slots.reserve(spec.n_slots);
    for (std::size_t t = 0; t < spec.n_slots; ++t) {
        surface::HrisConfig cfg{rvec::Constant(N, spec.rho), phases[t],
                                spec.sense_phase.size() ? spec.sense_phase : rvec::Zero(N), combiners[t]};
        sched.slots.push_back(std::move(cfg));
    }
    sched.validate();
    return sched;
}

HEstimate hris_estimate_H(const PilotSchedule &sched, const channel::ChannelSet &ch, Rng *rng,
                          const HEstimateOptions &options)
{
    sched.validate();
    ch.validate();
    const auto N = static_cast<Eigen::Index>(sched.n_atoms());
    const auto K = static_cast<Eigen::Index>(sched.n_users());
    require_size(ch.H.rows(), N, "hris_estimate_H channel N");
    require_size(ch.H.cols(), K, "hris_estimate_H channel K");

    for (const auto &s : sched.slots)
        for (Eigen::Index n = 0; n < N; ++n)
            if (s.rho(n) >= 1.0)
                throw EstimationInfeasible("hris_estimate_H: atom " + std::to_string(n) +
                                           " reflects all power (rho = 1) and is not sensed");

    std::vector<cmat> combiners;
    combiners.reserve(sched.n_slots());
    for (const auto &s : sched.slots)
        combiners.push_back(s.combiner);
    const std::size_t rank = qr_rank(surface::stack(combiners));
    if (rank < static_cast<std::size_t>(N) && !options.allow_rank_deficient)
        throw IdentifiabilityError("HRIS stacked combiner", rank, static_cast<std::size_t>(N));

    const double amp = std::sqrt(ch.tx_power);
    const double c = sched.pilot_scale();
    const cmat &X = sched.pilots;
    const Eigen::Index n_rf = static_cast<Eigen::Index>(sched.n_rf());
    const auto rows = static_cast<Eigen::Index>(sched.n_slots()) * n_rf;

    HEstimate out;
    out.stacked_rank = rank;
    out.observations.reserve(sched.n_slots());
    cmat A(rows, N);
    cmat Z(rows, K);
    for (std::size_t t = 0; t < sched.n_slots(); ++t) {
        const auto sig = surface::build_signals(sched.slots[t]);
        cmat Y = amp * sig.sensed_map * ch.H * X + noise_block(n_rf, K, ch.noise_var_hris, rng);
        const auto r0 = static_cast<Eigen::Index>(t) * n_rf;
        A.middleRows(r0, n_rf) = amp * sig.sensed_map;
        Z.middleRows(r0, n_rf) = Y * X.adjoint() / c;
        out.observations.push_back(std::move(Y));
    }

    if (rank == static_cast<std::size_t>(N)) {
        out.H_hat = A.colPivHouseholderQr().solve(Z);
        return out;
    }

    // h_k = beta_k A^H (beta_k A A^H + s I)^+ z_k, s = noise variance after decorrelation
    const double s = rng != nullptr ? ch.noise_var_hris / c : 0.0;
    const cmat AAh = A * A.adjoint();
    const cmat I = cmat::Identity(rows, rows);
    out.H_hat.resize(N, K);
    double err = 0.0;
    for (Eigen::Index k = 0; k < K; ++k) {
        const double beta = ch.user_pathloss(k);
        const Eigen::CompleteOrthogonalDecomposition<cmat> cod(beta * AAh + s * I);
        out.H_hat.col(k) = beta * A.adjoint() * cod.solve(Z.col(k));
        err += beta * (static_cast<double>(N) - beta * (A.adjoint() * cod.solve(A)).trace().real());
    }
    out.error_energy = err / static_cast<double>(K);
    return out;
}

GEstimate bs_estimate_G(const PilotSchedule &sched, const channel::ChannelSet &ch, const cmat &H_hat, Rng *rng,
                        const GEstimateOptions &options)
{
    sched.validate();
    ch.validate();
    const auto N = static_cast<Eigen::Index>(sched.n_atoms());
    const auto K = static_cast<Eigen::Index>(sched.n_users());
    const auto M = ch.G.rows();
    require_size(ch.G.cols(), N, "bs_estimate_G channel N");
    require_size(ch.H.cols(), K, "bs_estimate_G channel K");
    require_size(H_hat.rows(), N, "bs_estimate_G H_hat rows");
    require_size(H_hat.cols(), K, "bs_estimate_G H_hat cols");

    const double amp = std::sqrt(ch.tx_power);
    const cmat &X = sched.pilots;
    const auto T = static_cast<Eigen::Index>(sched.n_slots());

    GEstimate out;
    out.observations.reserve(sched.n_slots());
    cmat Yall(M, T * K);
    cmat Zall(N, T * K);
    for (Eigen::Index t = 0; t < T; ++t) {
        const auto sig = surface::build_signals(sched.slots[static_cast<std::size_t>(t)]);
        const auto R = sig.reflected_gain.asDiagonal();
        cmat Y = amp * ch.G * (R * ch.H) * X + noise_block(M, K, ch.noise_var_bs, rng);
        Yall.middleCols(t * K, K) = Y;
        Zall.middleCols(t * K, K) = amp * (R * H_hat) * X;
        out.observations.push_back(std::move(Y));
    }

    // G Zall = Yall  <=>  Zall^H G^H = Yall^H
    const cmat Zh = Zall.adjoint();
    Eigen::ColPivHouseholderQR<cmat> qr(Zh);
    out.regressor_rank = static_cast<std::size_t>(qr.rank());
    if (out.regressor_rank < static_cast<std::size_t>(N)) {
        if (!options.allow_rank_deficient)
            throw IdentifiabilityError("BS stacked regressor", out.regressor_rank, static_cast<std::size_t>(N));
        double rho_mean = 0.0;
        for (const auto &slot : sched.slots)
            rho_mean += slot.rho.mean();
        rho_mean /= static_cast<double>(T);
        const double noise = rng != nullptr ? ch.noise_var_bs : 0.0;
        const double lambda =
            (noise + ch.tx_power * rho_mean * sched.pilot_scale() * options.h_error_energy) / ch.bs_pathloss;
        const cmat gram = Zall * Zh + lambda * cmat::Identity(N, N);
        out.G_hat = gram.completeOrthogonalDecomposition().solve(Zall * Yall.adjoint()).adjoint();
    } else {
        out.G_hat = qr.solve(Yall.adjoint()).adjoint();
    }
    return out;
}

BaselineEstimate cascaded_ls_baseline(const channel::ChannelSet &ch, const std::vector<rvec> &phase_patterns,
                                      Rng *rng)
{
    ch.validate();
    const auto N = ch.H.rows();
    const auto K = ch.H.cols();
    const auto M = ch.G.rows();
    const auto T = static_cast<Eigen::Index>(phase_patterns.size());
    if (T == 0)
        throw ParameterError("cascaded_ls_baseline: at least one reflection pattern is required");

    // V: N x T reflection vectors, one column per slot.
    cmat V(N, T);
    for (Eigen::Index t = 0; t < T; ++t) {
        const auto &phi = phase_patterns[static_cast<std::size_t>(t)];
        require_size(phi.size(), N, "cascaded_ls_baseline pattern");
        for (Eigen::Index n = 0; n < N; ++n)
            V(n, t) = std::polar(1.0, phi(n));
    }
    const cmat Vh = V.adjoint();
    Eigen::ColPivHouseholderQR<cmat> qr(Vh);
    const auto rank = static_cast<std::size_t>(qr.rank());
    if (rank < static_cast<std::size_t>(N))
        throw IdentifiabilityError("reflective pattern matrix", rank, static_cast<std::size_t>(N));

    const cmat X = surface::dft_matrix(static_cast<std::size_t>(K));
    const double c = static_cast<double>(K);
    const double amp = std::sqrt(ch.tx_power);

    // W[k]: M x T, column t = decorrelated observation of user k in slot t.
    std::vector<cmat> W(static_cast<std::size_t>(K), cmat(M, T));
    for (Eigen::Index t = 0; t < T; ++t) {
        const cmat Y = amp * ch.G * V.col(t).asDiagonal() * ch.H * X + noise_block(M, K, ch.noise_var_bs, rng);
        const cmat D = Y * X.adjoint() / c;
        for (Eigen::Index k = 0; k < K; ++k)
            W[static_cast<std::size_t>(k)].col(t) = D.col(k);
    }

    BaselineEstimate out;
    out.A_hat.reserve(static_cast<std::size_t>(K));
    double acc = 0.0;
    for (Eigen::Index k = 0; k < K; ++k) {
        // A_k V = W_k / amp  <=>  V^H A_k^H = W_k^H / amp
        cmat A = qr.solve(W[static_cast<std::size_t>(k)].adjoint() / amp).adjoint();
        acc += nmse(A, channel::cascaded_per_user(ch.H, ch.G, static_cast<std::size_t>(k)));
        out.A_hat.push_back(std::move(A));
    }
    out.nmse = acc / static_cast<double>(K);
    return out;
}

double nmse(const cmat &estimate, const cmat &truth)
{
    if (estimate.rows() != truth.rows() || estimate.cols() != truth.cols())
        throw DimensionError("nmse: shape mismatch");
    const double den = truth.squaredNorm();
    if (!(den > 0.0))
        throw ParameterError("nmse: reference has zero energy");
    return (estimate - truth).squaredNorm() / den;
}

double cascaded_nmse(const cmat &G_hat, const cmat &H_hat, const cmat &G, const cmat &H)
{
    const auto K = H.cols();
    double acc = 0.0;
    for (Eigen::Index k = 0; k < K; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        acc += nmse(channel::cascaded_per_user(H_hat, G_hat, idx), channel::cascaded_per_user(H, G, idx));
    }
    return acc / static_cast<double>(K);
}

void ChestSetup::validate() const
{
    if (n_antennas == 0 || n_users == 0 || n_atoms == 0 || n_rf == 0 || pilots == 0)
        throw ParameterError("ChestSetup: M, K, N, N_r and pilots must be >= 1");
    if (n_rf > n_atoms)
        throw ParameterError("ChestSetup: N_r exceeds N");
    geometry.validate();
}

namespace {

rvec draw_base_phase(std::uint64_t seed, std::size_t draw, std::size_t n_atoms)
{
    Rng rng = Rng::derive(seed, {tag(Stream::phase_draw), draw});
    rvec phi(static_cast<Eigen::Index>(n_atoms));
    for (Eigen::Index n = 0; n < phi.size(); ++n)
        phi(n) = rng.uniform(0.0, two_pi);
    return phi;
}

channel::ChannelSet trial_channels(const ChestSetup &setup, std::uint64_t seed, std::size_t trial)
{
    Rng rng = Rng::derive(seed, {tag(Stream::channel), trial});
    auto opts = setup.channel;
    opts.budget = channel::LinkBudget::from_snr_db(setup.snr_db);
    return channel::draw_channels(setup.geometry, setup.n_atoms, setup.n_users, setup.n_antennas, rng, opts);
}

} // namespace

std::vector<TradeoffRow> tradeoff_experiment(const ChestSetup &setup, const std::vector<double> &rho_grid,
                                             std::size_t n_phase_draws, std::size_t n_trials, std::uint64_t seed,
                                             std::size_t workers)
{
    setup.validate();
    if (rho_grid.empty() || n_phase_draws == 0 || n_trials == 0)
        throw ParameterError("tradeoff_experiment: rho grid, phase draws and trials must be non-empty");
    for (double r : rho_grid)
        if (!(r >= 0.0 && r < 1.0))
            throw ParameterError("tradeoff_experiment: rho must lie in [0, 1) so that every atom is sensed");

    const std::size_t nR = rho_grid.size();
    const std::size_t nD = n_phase_draws;
    std::vector<PilotSchedule> schedules;
    schedules.reserve(nR * nD);
    for (std::size_t d = 0; d < nD; ++d) {
        const rvec base = draw_base_phase(seed, d, setup.n_atoms);
        for (std::size_t r = 0; r < nR; ++r) {
            ScheduleSpec spec{setup.n_atoms, setup.n_users, setup.n_rf, setup.n_slots(), rho_grid[r], base, {},
                              setup.combiner, seed};
            schedules.push_back(make_schedule(spec));
        }
    }

    struct TrialOut
    {
        std::vector<double> h, g;
    };
    std::vector<TrialOut> results(n_trials);
    parallel_for(n_trials, workers, [&](std::size_t trial) {
        const auto ch = trial_channels(setup, seed, trial);
        TrialOut out{std::vector<double>(nR * nD), std::vector<double>(nR * nD)};
        for (std::size_t i = 0; i < nR * nD; ++i) {
            Rng hn = Rng::derive(seed, {tag(Stream::hris_noise), trial});
            Rng bn = Rng::derive(seed, {tag(Stream::bs_noise), trial});
            const auto he = hris_estimate_H(schedules[i], ch, setup.noise ? &hn : nullptr);
            const auto ge = bs_estimate_G(schedules[i], ch, he.H_hat, setup.noise ? &bn : nullptr);
            out.h[i] = nmse(he.H_hat, ch.H);
            out.g[i] = nmse(ge.G_hat, ch.G);
        }
        results[trial] = std::move(out);
    });

    std::vector<TradeoffRow> rows;
    rows.reserve(nR * nD);
    for (std::size_t r = 0; r < nR; ++r)
        for (std::size_t d = 0; d < nD; ++d) {
            const std::size_t i = d * nR + r;
            double h = 0.0, g = 0.0;
            for (const auto &t : results) {
                h += t.h[i];
                g += t.g[i];
            }
            const double n = static_cast<double>(n_trials);
            rows.push_back({rho_grid[r], d, n_trials, h / n, g / n});
        }
    return rows;
}

std::vector<RfSweepRow> rf_chain_sweep(const ChestSetup &setup, const std::vector<std::size_t> &nr_grid,
                                       const std::vector<double> &snr_list, std::size_t n_trials, std::uint64_t seed,
                                       std::size_t workers, double rho)
{
    setup.validate();
    if (nr_grid.empty() || snr_list.empty() || n_trials == 0)
        throw ParameterError("rf_chain_sweep: N_r grid, SNR list and trials must be non-empty");
    if (!(rho > 0.0 && rho < 1.0))
        throw ParameterError("rf_chain_sweep: rho must lie in (0, 1)");

    const std::size_t nQ = nr_grid.size();
    const std::size_t nS = snr_list.size();
    const std::size_t n_slots = setup.n_slots();
    const rvec base = draw_base_phase(seed, 0, setup.n_atoms);

    std::vector<PilotSchedule> schedules;
    schedules.reserve(nQ);
    for (auto nr : nr_grid) {
        if (nr == 0 || nr > setup.n_atoms)
            throw ParameterError("rf_chain_sweep: N_r must lie in [1, N]");
        ScheduleSpec spec{setup.n_atoms, setup.n_users, nr, n_slots, rho, base, {}, setup.combiner, seed};
        schedules.push_back(make_schedule(spec));
    }

    const auto patterns = dft_reflection_patterns(setup.n_atoms, n_slots, base);
    const bool baseline_ok = n_slots >= setup.n_atoms;
    const std::string baseline_status =
        baseline_ok ? "ok"
                    : "infeasible: reflective pattern rank " + std::to_string(n_slots) + " < " +
                          std::to_string(setup.n_atoms);

    struct TrialOut
    {
        std::vector<double> cascaded; // nQ x nS
        std::vector<std::size_t> rank;
        std::vector<std::size_t> bs_rank;
        std::vector<double> baseline; // nS
    };
    std::vector<TrialOut> results(n_trials);
    parallel_for(n_trials, workers, [&](std::size_t trial) {
        auto ch = trial_channels(setup, seed, trial);
        TrialOut out{std::vector<double>(nQ * nS), std::vector<std::size_t>(nQ), std::vector<std::size_t>(nQ),
                     std::vector<double>(nS)};
        for (std::size_t s = 0; s < nS; ++s) {
            ch.tx_power = db2lin(snr_list[s]) * ch.noise_var_bs;
            for (std::size_t q = 0; q < nQ; ++q) {
                Rng hn = Rng::derive(seed, {tag(Stream::hris_noise), trial});
                Rng bn = Rng::derive(seed, {tag(Stream::bs_noise), trial});
                const auto he = hris_estimate_H(schedules[q], ch, setup.noise ? &hn : nullptr, {true});
                const auto ge = bs_estimate_G(schedules[q], ch, he.H_hat, setup.noise ? &bn : nullptr,
                                              {true, he.error_energy});
                out.cascaded[q * nS + s] = cascaded_nmse(ge.G_hat, he.H_hat, ch.G, ch.H);
                out.rank[q] = he.stacked_rank;
                out.bs_rank[q] = std::max(out.bs_rank[q], ge.regressor_rank);
            }
            if (baseline_ok) {
                Rng bn = Rng::derive(seed, {tag(Stream::baseline_noise), trial});
                out.baseline[s] = cascaded_ls_baseline(ch, patterns, setup.noise ? &bn : nullptr).nmse;
            }
        }
        results[trial] = std::move(out);
    });

    std::vector<RfSweepRow> rows;
    rows.reserve(nQ * nS);
    const double n = static_cast<double>(n_trials);
    for (std::size_t q = 0; q < nQ; ++q)
        for (std::size_t s = 0; s < nS; ++s) {
            double acc = 0.0, base_acc = 0.0;
            for (const auto &t : results) {
                acc += t.cascaded[q * nS + s];
                base_acc += t.baseline[s];
            }
            rows.push_back({nr_grid[q], snr_list[s], n_trials, results.front().rank[q], results.front().bs_rank[q], acc / n,
                            baseline_ok ? base_acc / n : std::numeric_limits<double>::quiet_NaN(), baseline_status});
        }
    return rows;
}

} // namespace hris::chest
