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

// hris-sim: command line front end.
//
//   hris-sim run <config.json> [--seed N] [--workers N] [--out DIR] [--trials N]
//   hris-sim preset <fig4|fig5|fig6|beampattern> [same overrides] [--print-config]
//   hris-sim beampattern [--n-h 12 --n-v 12 --steer-deg 25 ... --out FILE]
//
// Exit codes: 0 success, 2 config error, 3 infeasible estimation problem.

#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "hris/config.hpp"
#include "hris/runner.hpp"

namespace {

struct Overrides
{
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> workers;
    std::optional<std::size_t> trials;
    std::optional<std::string> out;

    void attach(CLI::App *app)
    {
        app->add_option("--seed", seed, "Override the experiment seed");
        app->add_option("--workers", workers, "Worker threads (0 = all cores)");
        app->add_option("--trials", trials, "Override the number of Monte Carlo trials")->check(CLI::PositiveNumber);
        app->add_option("--out", out, "Output directory");
    }

    void apply(hris::sim::ExperimentConfig &c) const
    {
        if (seed)
            c.seed = *seed;
        if (workers)
            c.workers = *workers;
        if (trials) {
            c.n_trials = *trials;
            c.aoa.n_trials = *trials;
        }
        if (out)
            c.output_dir = *out;
    }
};

int run_config(hris::sim::ExperimentConfig cfg, const Overrides &ov)
{
    ov.apply(cfg);
    const auto result = hris::sim::run_experiment(cfg);
    for (const auto &f : result.files)
        std::cout << f.string() << '\n';
    return hris::sim::exit_ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Link-level simulator for hybrid reflecting and sensing metasurfaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", HRIS_VERSION);

    std::string config_path;
    Overrides run_ov;
    auto *run = app.add_subcommand("run", "Run an experiment described by a JSON config file");
    run->add_option("config", config_path, "Config file")->required();
    run_ov.attach(run);

    std::string preset_name;
    bool print_config = false;
    Overrides preset_ov;
    auto *preset = app.add_subcommand("preset", "Run a bundled figure preset");
    preset->add_option("name", preset_name, "fig4, fig5, fig6 or beampattern")
        ->required()
        ->check(CLI::IsMember(hris::sim::preset_names()));
    preset->add_flag("--print-config", print_config, "Print the preset config as JSON and exit");
    preset_ov.attach(preset);

    std::size_t n_h = 12, n_v = 12, points = 719;
    double spacing = hris::array::default_spacing_m, wavelength = hris::array::default_wavelength_m;
    double steer = 25.0, plane_az = 0.0, lo = -89.75, hi = 89.75, rho = 1.0;
    std::string profile = "gradient", beam_out = "beampattern.csv";
    auto *beam = app.add_subcommand("beampattern", "Emit the reflected beampattern of a steered surface as CSV");
    beam->add_option("--n-h", n_h, "Elements per row")->check(CLI::PositiveNumber);
    beam->add_option("--n-v", n_v, "Elements per column")->check(CLI::PositiveNumber);
    beam->add_option("--spacing", spacing, "Element spacing [m]")->check(CLI::PositiveNumber);
    beam->add_option("--wavelength", wavelength, "Wavelength [m]")->check(CLI::PositiveNumber);
    beam->add_option("--steer-deg", steer, "Steering angle [deg] for the gradient profile")
        ->check(CLI::Range(-89.99, 89.99));
    beam->add_option("--azimuth-deg", plane_az, "Azimuth of the cut plane [deg]");
    beam->add_option("--lo-deg", lo, "First grid angle [deg]");
    beam->add_option("--hi-deg", hi, "Last grid angle [deg]");
    beam->add_option("--points", points, "Grid points")->check(CLI::Range(2, 1'000'000));
    beam->add_option("--rho", rho, "Reflected power fraction")->check(CLI::Range(0.0, 1.0));
    beam->add_option("--profile", profile, "gradient, zero or random")
        ->check(CLI::IsMember({"gradient", "zero", "random"}));
    beam->add_option("--out", beam_out, "Output CSV path ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : hris::sim::exit_config_error;
    }

    try {
        if (*run)
            return run_config(hris::sim::load_config(config_path), run_ov);

        if (*preset) {
            if (print_config) {
                std::cout << hris::sim::preset_json(preset_name).dump(2) << '\n';
                return hris::sim::exit_ok;
            }
            return run_config(hris::sim::preset_config(preset_name), preset_ov);
        }

        if (*beam) {
            nlohmann::json j = hris::sim::preset_json("beampattern");
            j["array"] = {{"n_h", n_h}, {"n_v", n_v}, {"spacing_m", spacing}, {"wavelength_m", wavelength}};
            j["hris"] = {{"rho", rho}, {"reflect_phase", profile}, {"steer_deg", steer},
                         {"steer_azimuth_deg", plane_az}};
            j["beampattern"] = {{"lo_deg", lo}, {"hi_deg", hi}, {"n_points", points}, {"plane_azimuth_deg", plane_az}};
            const auto cfg = hris::sim::parse_config(j);
            const hris::array::PlanarArray arr(cfg.n_h, cfg.n_v, cfg.spacing_m, cfg.wavelength_m);
            const auto table =
                hris::sim::beampattern_table(hris::sim::emit_beampattern(arr, cfg.hris.materialize(arr), cfg.beam));
            if (beam_out == "-")
                std::cout << table.str();
            else
                table.write(beam_out);
            return hris::sim::exit_ok;
        }
    } catch (const std::exception &e) {
        std::cerr << "hris-sim: " << e.what() << '\n';
        return hris::sim::exit_code_for(e);
    }
    return hris::sim::exit_failure;
}
