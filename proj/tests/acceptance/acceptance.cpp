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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hris/config.hpp"
#include "hris/runner.hpp"
#include "../support.hpp"

using namespace hris;

namespace {

struct Outcome
{
    bool pass = false;
    std::string detail;
};

struct Criterion
{
    const char *id;
    const char *title;
    double budget_s;
    std::function<Outcome()> run;
};

std::string fmt(const char *f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

channel::ChannelSet unit_channels(std::size_t N, std::size_t K, std::size_t M, std::uint64_t seed)
{
    Rng rng = Rng::derive(seed, {tag(Stream::channel), 0});
    return channel::draw_channels({}, N, K, M, rng, {channel::PathlossMode::normalized, 0.0, {}});
}

Outcome ac1()
{
    const auto ch = unit_channels(64, 8, 16, 1);
    const chest::ScheduleSpec spec{64, 8, 8, chest::slots_for_pilots(64, 8), 0.5, {}, {},
                                   surface::CombinerKind::dft, 0};
    const auto sched = chest::make_schedule(spec);
    const auto h = chest::hris_estimate_H(sched, ch, nullptr);
    const auto g = chest::bs_estimate_G(sched, ch, h.H_hat, nullptr);
    const double eh = test::rel_err(h.H_hat, ch.H);
    const double eg = test::rel_err(g.G_hat, ch.G);
    return {sched.pilot_symbols() == 64 && eh <= 1e-9 && eg <= 1e-9,
            "pilots " + std::to_string(sched.pilot_symbols()) + ", rel err H " + fmt("%.2e", eh) + ", G " +
                fmt("%.2e", eg)};
}

Outcome ac2()
{
    auto cfg = sim::preset_config("fig5");
    cfg.chest.pilots = 56;
    cfg.chest.noise = false;
    cfg.n_trials = 1;
    cfg.rho_grid = {0.5};
    cfg.n_phase_draws = 1;
    cfg.output_dir = (std::filesystem::temp_directory_path() / "hris_acceptance_ac2").string();
    try {
        (void)sim::run_experiment(cfg);
    } catch (const IdentifiabilityError &e) {
        const std::string msg = e.what();
        const bool names_rank = msg.find("stacked combiner") != std::string::npos &&
                                msg.find("rank 56") != std::string::npos;
        return {names_rank && e.rank() == 56 && sim::exit_code_for(e) == sim::exit_infeasible, "\"" + msg + "\""};
    } catch (const std::exception &e) {
        return {false, std::string("wrong error: ") + e.what()};
    }
    return {false, "no error raised"};
}

Outcome ac3()
{
    auto cfg = sim::preset_config("fig5");
    cfg.workers = 8;
    const auto rows = chest::tradeoff_experiment(cfg.chest, cfg.rho_grid, cfg.n_phase_draws, cfg.n_trials, cfg.seed,
                                                 cfg.workers);
    std::map<double, std::pair<double, double>> mean; // rho -> (H, G)
    std::map<double, int> count;
    for (const auto &r : rows) {
        mean[r.rho].first += r.nmse_H;
        mean[r.rho].second += r.nmse_G;
        ++count[r.rho];
    }
    for (auto &[rho, v] : mean) {
        v.first /= count[rho];
        v.second /= count[rho];
    }
    bool monotone = true;
    double prev = mean.at(0.1).second;
    for (double rho : {0.2, 0.3, 0.4, 0.5}) {
        monotone = monotone && mean.at(rho).second <= prev;
        prev = mean.at(rho).second;
    }
    const double g_gain = lin2db(mean.at(0.1).second / mean.at(0.5).second);
    const double h_loss = lin2db(mean.at(0.9).first / mean.at(0.5).first);
    return {cfg.n_trials == 200 && monotone && g_gain >= 3.0 && h_loss >= 3.0,
            std::string("nmse_G non-increasing on [0.1, 0.5]: ") + (monotone ? "yes" : "no") + ", G gain " +
                fmt("%.2f", g_gain) + " dB, H loss 0.5->0.9 " + fmt("%.2f", h_loss) + " dB"};
}

Outcome ac4()
{
    auto cfg = sim::preset_config("fig6");
    const auto rows = chest::rf_chain_sweep(cfg.chest, cfg.nr_grid, cfg.snr_list, cfg.n_trials, cfg.seed, cfg.workers,
                                            cfg.hris.scalar_rho());
    const std::size_t nS = cfg.snr_list.size();
    bool monotone = true, ordered = true;
    std::ostringstream detail;
    for (std::size_t s = 0; s < nS; ++s) {
        detail << fmt("%g dB:", cfg.snr_list[s]);
        for (std::size_t q = 0; q < cfg.nr_grid.size(); ++q) {
            detail << fmt(" %.2f", lin2db(rows[q * nS + s].nmse_cascaded));
            if (q > 0)
                monotone = monotone && rows[q * nS + s].nmse_cascaded <= rows[(q - 1) * nS + s].nmse_cascaded;
        }
        detail << "; ";
    }
    for (std::size_t q = 0; q < cfg.nr_grid.size(); ++q)
        ordered = ordered && rows[q * nS + 1].nmse_cascaded < rows[q * nS].nmse_cascaded;
    const bool setup_ok = cfg.snr_list.size() == 2 && cfg.snr_list[1] - cfg.snr_list[0] == 10.0 &&
                          cfg.hris.scalar_rho() == 0.5 && cfg.nr_grid == std::vector<std::size_t>{1, 2, 4, 8};
    detail << "non-increasing: " << (monotone ? "yes" : "no") << ", higher SNR lower: " << (ordered ? "yes" : "no");
    return {setup_ok && monotone && ordered, detail.str()};
}

Outcome ac5()
{
    auto cfg = sim::preset_config("fig4");
    const auto rows = aoa::rmse_experiment(cfg.aoa, cfg.seed, cfg.workers);
    bool a = true, b = true, c = true;
    double worst_ratio = 1e9, top_ratio = 0.0;
    const double top_snr = *std::max_element(cfg.aoa.snr_db.begin(), cfg.aoa.snr_db.end());
    for (const auto &r : rows) {
        const double ratio = r.rmse_rad / r.crlb_rad;
        worst_ratio = std::min(worst_ratio, ratio);
        a = a && ratio >= 0.9;
        if (r.snr_db == top_snr) {
            top_ratio = std::max(top_ratio, ratio);
            b = b && ratio <= 2.0;
        }
        if (r.sensed_fraction == 0.8)
            for (const auto &o : rows)
                if (o.n_atoms == r.n_atoms && o.snr_db == r.snr_db && o.sensed_fraction == 0.2)
                    c = c && r.rmse_rad <= o.rmse_rad;
    }
    const bool setup_ok = cfg.aoa.n_trials == 500 && cfg.aoa.n_snapshots == 64 && rows.size() == 36;
    return {setup_ok && a && b && c, "(a) min RMSE/sqrt(CRLB) " + fmt("%.3f", worst_ratio) + ", (b) max ratio at " +
                                         fmt("%g", top_snr) + " dB " + fmt("%.3f", top_ratio) +
                                         ", (c) fraction 0.8 never worse: " + (c ? "yes" : "no")};
}

Outcome ac6()
{
    Rng rng(6);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto sc = test::gen_aoa_scenario(rng);
        const double closed = aoa::crlb_elevation(sc);
        const double fd = test::crlb_fd_oracle(sc);
        worst = std::max(worst, std::abs(closed - fd) / fd);
    }
    return {worst < 1e-4, "20 scenarios, worst relative mismatch " + fmt("%.2e", worst)};
}

Outcome ac7()
{
    const std::vector<std::pair<const char *, test::PropertyResult>> results{
        {"power", test::check_power_conservation(701, 1000)},
        {"linearity", test::check_linearity(702, 1000)},
        {"unit modulus", test::check_steering_unit_modulus(703, 1000)},
        {"cascade", test::check_cascade(704, 1000)},
        {"workers", test::check_worker_determinism(705, 1000)},
    };
    bool pass = true;
    std::ostringstream detail;
    for (const auto &[name, r] : results) {
        pass = pass && r.failures == 0 && r.cases == 1000;
        detail << name << " " << r.failures << "/" << r.cases;
        if (r.failures)
            detail << " (" << r.first_failure << ")";
        detail << "; ";
    }
    return {pass, detail.str() + "failures/cases"};
}

Outcome ac8()
{
    const auto arr = array::PlanarArray::square(12);
    const sim::BeamGrid grid{};
    Rng rng(8);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double target = rng.uniform(-60.0, 60.0);
        const rvec phi = array::gradient_phase_profile(arr, array::Direction::from_signed(deg2rad(target), 0.0));
        const auto rows = sim::emit_beampattern(arr, phi, grid);
        const auto peak = std::max_element(rows.begin(), rows.end(),
                                           [](const auto &x, const auto &y) { return x.gain_db < y.gain_db; });
        worst = std::max(worst, std::abs(peak->angle_deg - target));
    }
    return {worst <= grid.step_deg(), "worst peak offset " + fmt("%.4f", worst) + " deg, grid step " +
                                          fmt("%.4f", grid.step_deg()) + " deg"};
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {"AC1", "noise-free recovery from 64 pilots", 10.0, ac1},
        {"AC2", "56 pilots raise an identifiability error", 10.0, ac2},
        {"AC3", "power-split trade-off shape", 300.0, ac3},
        {"AC4", "RF-chain sweep shape", 300.0, ac4},
        {"AC5", "AoA RMSE against the CRLB", 600.0, ac5},
        {"AC6", "closed-form CRLB against likelihood curvature", 30.0, ac6},
        {"AC7", "invariant suite, 1000 randomized cases each", 600.0, ac7},
        {"AC8", "steered beampattern peak", 60.0, ac8},
    };

    int failed = 0;
    for (const auto &c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = dt < c.budget_s;
        const bool pass = o.pass && in_time;
        failed += pass ? 0 : 1;
        std::printf("%s %s  %s: %s [%.1f s / %.0f s%s]\n", c.id, pass ? "PASS" : "FAIL", c.title, o.detail.c_str(), dt,
                    c.budget_s, in_time ? "" : ", over budget");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
