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
#include <optional>
#include <string>
#include <vector>

#include "hris/channel.hpp"
#include "hris/common.hpp"
#include "hris/rng.hpp"
#include "hris/surface.hpp"

namespace hris::chest {

/// Orthogonal pilot block repeated in every slot, plus the HRIS configuration
/// (combiner and reflection phases) used during each slot.
struct PilotSchedule
{
    cmat pilots; ///< K x K, X X^H = c I
    std::vector<surface::HrisConfig> slots;

    std::size_t n_slots() const noexcept { return slots.size(); }
    std::size_t n_users() const noexcept { return static_cast<std::size_t>(pilots.rows()); }
    std::size_t n_atoms() const noexcept { return slots.empty() ? 0 : slots.front().size(); }
    std::size_t n_rf() const noexcept { return slots.empty() ? 0 : slots.front().n_rf(); }
    std::size_t pilot_symbols() const noexcept { return n_slots() * n_users(); }
    /// c in X X^H = c I.
    double pilot_scale() const;

    void validate() const;
};

struct ScheduleSpec
{
    std::size_t n_atoms = 64;
    std::size_t n_users = 8;
    std::size_t n_rf = 8;
    std::size_t n_slots = 8;
    double rho = 0.5;
    /// Per-atom offset added to every slot's DFT reflection pattern. Empty means zero.
    rvec base_reflect_phase;
    /// Empty means zero.
    rvec sense_phase;
    surface::CombinerKind combiner = surface::CombinerKind::dft;
    std::uint64_t combiner_seed = 0;
};

/// Slot t uses combiner block t of the schedule and reflection phases
/// base_n - 2 pi t n / N (row t of the N-point DFT on top of the base pattern).
/// Pilots are the K-point DFT matrix.
PilotSchedule make_schedule(const ScheduleSpec &spec);

/// ceil(pilot_symbols / K).
std::size_t slots_for_pilots(std::size_t pilot_symbols, std::size_t n_users);

struct HEstimateOptions
{
    /// When the stacked combiner has rank < N, return the LMMSE estimate under
    /// the Rayleigh prior h_k ~ CN(0, user_pathloss_k I) instead of throwing.
    /// Without noise this is the minimum-norm LS solution.
    bool allow_rank_deficient = false;
};

struct HEstimate
{
    cmat H_hat;                     ///< N x K
    std::vector<cmat> observations; ///< per slot, N_r x K raw sensed samples
    std::size_t stacked_rank = 0;
    /// Mean over users of the prior-expected ||h_k - h_hat_k||^2 left by the
    /// rank-deficient fallback; 0 for the LS estimate.
    double error_energy = 0.0;
};

/// HRIS-side least squares. Per slot the RF chains observe
///   Y_t = sqrt(P) Q_t S H X + N_t,  S = diag(sqrt(1 - rho) exp(j sense_phase)).
/// Right-multiplying by X^H / c decorrelates the users; the slots are stacked
/// and solved for H. A null `rng` gives noise-free observations.
///
/// Throws EstimationInfeasible if an atom is not sensed (rho_n = 1) and
/// IdentifiabilityError if the stacked combiner has rank < N (unless allowed).
HEstimate hris_estimate_H(const PilotSchedule &sched, const channel::ChannelSet &ch, Rng *rng,
                          const HEstimateOptions &options = {});

struct GEstimate
{
    cmat G_hat;                     ///< M x N
    std::vector<cmat> observations; ///< per slot, M x K
    std::size_t regressor_rank = 0;
};

struct GEstimateOptions
{
    /// When the stacked regressor has rank < N, return the LMMSE estimate under
    /// the prior G ~ CN(0, bs_pathloss I) instead of throwing. The energy of
    /// G R_t (H - H_hat) X is treated as extra white noise.
    bool allow_rank_deficient = false;
    /// Expected ||h_k - h_hat_k||^2 of the forwarded estimate (HEstimate::error_energy).
    double h_error_energy = 0.0;
};

/// BS-side least squares. The BS observes Y_t = sqrt(P) G R_t H X + N_t with
/// R_t = diag(sqrt(rho) exp(j phi_t)), forms Z_t = sqrt(P) R_t H_hat X from the
/// forwarded estimate and solves min_G sum_t ||Y_t - G Z_t||_F^2.
/// Throws IdentifiabilityError if the stacked regressor has rank < N (unless allowed).
GEstimate bs_estimate_G(const PilotSchedule &sched, const channel::ChannelSet &ch, const cmat &H_hat, Rng *rng,
                        const GEstimateOptions &options = {});

/// Reflection phase patterns phi_t = base - 2 pi t n / N for t < n_slots.
std::vector<rvec> dft_reflection_patterns(std::size_t n_atoms, std::size_t n_slots, const rvec &base = {});

struct BaselineEstimate
{
    std::vector<cmat> A_hat; ///< per user, M x N
    double nmse = 0.0;       ///< mean over users of ||A_hat_k - A_k||^2 / ||A_k||^2
};

/// Purely reflective RIS (rho = 1, nothing sensed): the BS estimates every
/// per-user cascaded matrix A_k = G diag(h_k) from one orthogonal pilot block
/// per reflection pattern. Needs at least N patterns (N K pilot symbols).
BaselineEstimate cascaded_ls_baseline(const channel::ChannelSet &ch, const std::vector<rvec> &phase_patterns,
                                      Rng *rng);

/// ||est - truth||_F^2 / ||truth||_F^2.
double nmse(const cmat &estimate, const cmat &truth);

/// Mean over users of the NMSE of G_hat diag(h_hat_k) against G diag(h_k).
double cascaded_nmse(const cmat &G_hat, const cmat &H_hat, const cmat &G, const cmat &H);

struct ChestSetup
{
    std::size_t n_antennas = 16;
    std::size_t n_users = 8;
    std::size_t n_atoms = 64;
    std::size_t n_rf = 8;
    std::size_t pilots = 70;
    double snr_db = 30.0;
    channel::LinkGeometry geometry{};
    channel::ChannelOptions channel{channel::PathlossMode::normalized, 0.0, {}};
    surface::CombinerKind combiner = surface::CombinerKind::dft;
    bool noise = true;

    void validate() const;
    std::size_t n_slots() const { return slots_for_pilots(pilots, n_users); }
};

struct TradeoffRow
{
    double rho;
    std::size_t phase_draw;
    std::size_t n_trials;
    double nmse_H;
    double nmse_G;
};

/// Sweeps the power split: for every rho and random per-atom base phase draw,
/// estimates H at the HRIS and G at the BS over `n_trials` channel draws and
/// averages the NMSEs. Channel and noise draws depend on the trial index only.
std::vector<TradeoffRow> tradeoff_experiment(const ChestSetup &setup, const std::vector<double> &rho_grid,
                                             std::size_t n_phase_draws, std::size_t n_trials, std::uint64_t seed,
                                             std::size_t workers = 1);

struct RfSweepRow
{
    std::size_t n_rf;
    double snr_db;
    std::size_t n_trials;
    std::size_t hris_rank;
    std::size_t bs_rank;
    double nmse_cascaded;
    /// NaN when the baseline is infeasible at the pilot budget.
    double baseline_nmse;
    std::string baseline_status;
};

/// Cascaded-channel NMSE of the two-sided HRIS scheme (rho = 0.5) versus the
/// number of RF chains at a fixed pilot budget, alongside the reflective LS
/// baseline at the same budget. When N_r * n_slots < N the HRIS stage, and in
/// turn the BS stage, fall back to LMMSE estimates.
std::vector<RfSweepRow> rf_chain_sweep(const ChestSetup &setup, const std::vector<std::size_t> &nr_grid,
                                       const std::vector<double> &snr_list, std::size_t n_trials, std::uint64_t seed,
                                       std::size_t workers = 1, double rho = 0.5);

} // namespace hris::chest
