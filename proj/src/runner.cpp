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

#include "hris/runner.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include "hris/channel.hpp"
#include "hris/matfile.hpp"

namespace hris::sim {

using nlohmann::json;

std::vector<BeamRow> emit_beampattern(const array::PlanarArray &array, const surface::HrisConfig &cfg,
                                      const BeamGrid &grid)
{
    if (grid.n_points < 2 || !(grid.lo_deg < grid.hi_deg))
        throw ParameterError("beampattern grid needs lo < hi and at least two points");
    const auto signals = surface::build_signals(cfg);
    const cvec weights = surface::reflect(signals, cvec::Ones(static_cast<Eigen::Index>(array.size())));

    std::vector<BeamRow> rows;
    rows.reserve(grid.n_points);
    double peak = 0.0;
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        const double ang = grid.lo_deg + grid.step_deg() * static_cast<double>(i);
        const auto dir = array::Direction::from_signed(deg2rad(ang), deg2rad(grid.plane_azimuth_deg));
        const double p = std::norm(array::array_factor(array, weights, dir));
        peak = std::max(peak, p);
        rows.push_back({ang, p});
    }
    for (auto &r : rows)
        r.gain_db = peak > 0.0 ? 10.0 * std::log10(std::max(r.gain_db / peak, 1e-30)) : -300.0;
    return rows;
}

std::vector<BeamRow> emit_beampattern(const array::PlanarArray &array, const rvec &phase_profile, const BeamGrid &grid)
{
    const auto N = static_cast<Eigen::Index>(array.size());
    require_size(phase_profile.size(), N, "beampattern phase profile");
    surface::HrisConfig cfg{rvec::Ones(N), phase_profile.unaryExpr([](double p) { return wrap_phase(p); }),
                            rvec::Zero(N), surface::combiner_schedule(array.size(), 1, 1, surface::CombinerKind::dft).front()};
    return emit_beampattern(array, cfg, grid);
}

namespace {

std::string db_or_nan(double lin)
{
    return format_number(lin > 0.0 ? lin2db(lin) : std::nan(""));
}

} // namespace

CsvTable aoa_table(const std::vector<aoa::AoaRow> &rows)
{
    CsvTable t({"N", "sensed_fraction", "snr_db", "n_trials", "rmse_rad", "rmse_deg", "crlb_rad"});
    for (const auto &r : rows)
        t.add_row({format_number(r.n_atoms), format_number(r.sensed_fraction), format_number(r.snr_db),
                   format_number(r.n_trials), format_number(r.rmse_rad), format_number(r.rmse_deg),
                   format_number(r.crlb_rad)});
    return t;
}

CsvTable tradeoff_table(const std::vector<chest::TradeoffRow> &rows)
{
    CsvTable t({"rho", "phase_draw", "n_trials", "nmse_H", "nmse_H_db", "nmse_G", "nmse_G_db"});
    for (const auto &r : rows)
        t.add_row({format_number(r.rho), format_number(r.phase_draw), format_number(r.n_trials),
                   format_number(r.nmse_H), db_or_nan(r.nmse_H), format_number(r.nmse_G), db_or_nan(r.nmse_G)});
    return t;
}

CsvTable rfsweep_table(const std::vector<chest::RfSweepRow> &rows)
{
    CsvTable t({"n_rf", "snr_db", "n_trials", "hris_rank", "bs_rank", "nmse_cascaded", "nmse_cascaded_db", "baseline_nmse",
                "baseline_nmse_db", "baseline_status"});
    for (const auto &r : rows)
        t.add_row({format_number(r.n_rf), format_number(r.snr_db), format_number(r.n_trials),
                   format_number(r.hris_rank), format_number(r.bs_rank), format_number(r.nmse_cascaded), db_or_nan(r.nmse_cascaded),
                   format_number(r.baseline_nmse), db_or_nan(r.baseline_nmse), r.baseline_status});
    return t;
}

CsvTable beampattern_table(const std::vector<BeamRow> &rows)
{
    CsvTable t({"angle_deg", "gain_db"});
    for (const auto &r : rows)
        t.add_row({format_number(r.angle_deg), format_number(r.gain_db)});
    return t;
}

namespace {

json chest_derived(const ExperimentConfig &c)
{
    const auto &s = c.chest;
    const double lambda = s.geometry.wavelength();
    json d;
    d["pilot_symbols_requested"] = s.pilots;
    d["pilot_slots"] = s.n_slots();
    d["pilot_symbols_used"] = s.n_slots() * s.n_users;
    d["pilot_decomposition"] = "ceil(pilots / K) slots of one K x K orthogonal block; every slot is reused by the "
                               "HRIS (sensing) and the BS (reflection) estimators";
    d["hris_min_pilots"] = (s.n_atoms * s.n_users + s.n_rf - 1) / s.n_rf;
    d["bs_min_pilots"] = s.n_atoms;
    d["pathloss_model"] = std::string(channel::to_string(s.channel.pathloss));
    d["wavelength_m"] = lambda;
    d["pathloss_hris_bs"] = channel::free_space_pathloss(s.geometry.hris_bs_distance_m, lambda);
    d["pathloss_cell_edge"] = channel::free_space_pathloss(2.0 * s.geometry.cell_radius_m, lambda);
    d["fading"] = s.channel.rician_k > 0.0 ? "rician" : "rayleigh";
    return d;
}

void write_json(const std::filesystem::path &path, const json &j)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw Error("cannot open '" + path.string() + "' for writing");
    f << j.dump(2) << '\n';
}

void dump_channels(const ExperimentConfig &c, const std::filesystem::path &dir)
{
    Rng rng = Rng::derive(c.seed, {tag(Stream::channel), 0});
    auto opts = c.chest.channel;
    opts.budget = channel::LinkBudget::from_snr_db(c.chest.snr_db);
    const auto ch =
        channel::draw_channels(c.chest.geometry, c.chest.n_atoms, c.chest.n_users, c.chest.n_antennas, rng, opts);
    const std::uint64_t stream = derive_key(c.seed, {tag(Stream::channel), 0});
    channel::write_matrix_file(dir / "channels_H.bin", ch.H, c.seed, stream);
    channel::write_matrix_file(dir / "channels_G.bin", ch.G, c.seed, stream);
}

} // namespace

RunOutputs run_experiment(const ExperimentConfig &c)
{
    const auto start = std::chrono::steady_clock::now();
    const std::filesystem::path dir(c.output_dir);
    std::filesystem::create_directories(dir);

    RunOutputs out;
    json meta;
    meta["artifact"] = "hris-sim";
    meta["version"] = HRIS_VERSION;
    meta["config"] = c.to_json();

    std::string name;
    CsvTable table({"_"});
    switch (c.experiment) {
    case ExperimentKind::aoa_rmse: {
        name = "aoa_rmse";
        table = aoa_table(aoa::rmse_experiment(c.aoa, c.seed, c.workers));
        meta["derived"] = {{"grid_step_rad", c.aoa.grid.step()},
                           {"crlb_column", "sqrt of the CRLB averaged over the truth draws"},
                           {"knob", "sensed_fraction = 1 - rho"},
                           {"noise_var", 1.0}};
        break;
    }
    case ExperimentKind::chest_tradeoff: {
        name = "tradeoff";
        table = tradeoff_table(
            chest::tradeoff_experiment(c.chest, c.rho_grid, c.n_phase_draws, c.n_trials, c.seed, c.workers));
        meta["derived"] = chest_derived(c);
        break;
    }
    case ExperimentKind::rf_chain_sweep: {
        name = "rfsweep";
        table = rfsweep_table(
            chest::rf_chain_sweep(c.chest, c.nr_grid, c.snr_list, c.n_trials, c.seed, c.workers, c.hris.scalar_rho()));
        meta["derived"] = chest_derived(c);
        break;
    }
    case ExperimentKind::beampattern: {
        name = "beampattern";
        const array::PlanarArray arr(c.n_h, c.n_v, c.spacing_m, c.wavelength_m);
        table = beampattern_table(emit_beampattern(arr, c.hris.materialize(arr), c.beam));
        meta["derived"] = {{"n_atoms", arr.size()}, {"grid_step_deg", c.beam.step_deg()}};
        break;
    }
    }

    const auto csv = dir / (name + ".csv");
    table.write(csv);
    out.files.push_back(csv);

    if (c.dump_channels &&
        (c.experiment == ExperimentKind::chest_tradeoff || c.experiment == ExperimentKind::rf_chain_sweep)) {
        dump_channels(c, dir);
        out.files.push_back(dir / "channels_H.bin");
        out.files.push_back(dir / "channels_G.bin");
    }

    meta["rows"] = table.n_rows();
    meta["wall_clock_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto meta_path = dir / (name + ".meta.json");
    write_json(meta_path, meta);
    out.files.push_back(meta_path);
    out.metadata = std::move(meta);
    return out;
}

int exit_code_for(const std::exception &e)
{
    if (dynamic_cast<const IdentifiabilityError *>(&e) || dynamic_cast<const EstimationInfeasible *>(&e))
        return exit_infeasible;
    if (dynamic_cast<const ConfigError *>(&e) || dynamic_cast<const ParameterError *>(&e) ||
        dynamic_cast<const DimensionError *>(&e))
        return exit_config_error;
    return exit_failure;
}

} // namespace hris::sim
