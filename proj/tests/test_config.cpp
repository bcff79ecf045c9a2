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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hris/config.hpp"
#include "hris/csv.hpp"
#include "hris/matfile.hpp"
#include "hris/runner.hpp"
#include "support.hpp"

using namespace hris;
using namespace hris::sim;
using nlohmann::json;

namespace {

std::string field_of(const json &j)
{
    try {
        (void)parse_config(j);
    } catch (const ConfigError &e) {
        return e.field();
    }
    return "<accepted>";
}

std::filesystem::path scratch(const std::string &name)
{
    const auto p = std::filesystem::temp_directory_path() / ("hris_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("presets parse and echo back to the same config")
{
    for (const auto &name : preset_names()) {
        const auto cfg = preset_config(name);
        const auto again = parse_config(cfg.to_json());
        CHECK(again.to_json() == cfg.to_json());
    }
    const auto f5 = preset_config("fig5");
    CHECK(f5.experiment == ExperimentKind::chest_tradeoff);
    CHECK(f5.chest.n_antennas == 16);
    CHECK(f5.chest.n_users == 8);
    CHECK(f5.chest.n_atoms == 64);
    CHECK(f5.chest.n_rf == 8);
    CHECK(f5.chest.pilots == 70);
    CHECK(f5.chest.snr_db == 30.0);
    CHECK(f5.n_trials == 200);
    const auto f4 = preset_config("fig4");
    CHECK(f4.aoa.n_list == std::vector<std::size_t>{144, 400});
    CHECK(f4.aoa.n_snapshots == 64);
    CHECK(f4.aoa.n_trials == 500);
    const auto f6 = preset_config("fig6");
    CHECK(f6.hris.scalar_rho() == 0.5);
    CHECK(f6.nr_grid == std::vector<std::size_t>{1, 2, 4, 8});
    CHECK_THROWS_AS(preset_config("fig7"), ConfigError);
}

TEST_CASE("shipped example configs load and match the presets")
{
    const std::filesystem::path dir = HRIS_SOURCE_DIR "/configs";
    for (const auto &name : {"fig4", "fig5", "fig6", "beampattern"}) {
        const auto cfg = load_config(dir / (std::string(name) + ".json"));
        CHECK(cfg.to_json() == preset_config(name).to_json());
    }
    const auto quick = load_config(dir / "quick_tradeoff.json");
    CHECK(quick.experiment == ExperimentKind::chest_tradeoff);
    CHECK(quick.n_trials == 20);
}

TEST_CASE("strict schema names the offending field")
{
    json base = preset_json("fig5");

    json j = base;
    j["chest"]["antennas"] = 16;
    CHECK(field_of(j) == "/chest/antennas");

    j = base;
    j["chest"]["K"] = "eight";
    CHECK(field_of(j) == "/chest/K");

    j = base;
    j["chest"]["n_rf"] = 65;
    CHECK(field_of(j) == "/chest/n_rf");

    j = base;
    j["chest"]["rho_grid"] = {0.5, 1.0};
    CHECK(field_of(j) == "/chest/rho_grid");

    j = base;
    j["version"] = 2;
    CHECK(field_of(j) == "/version");

    j = base;
    j.erase("version");
    CHECK(field_of(j) == "/version");

    j = base;
    j["hris"]["rho"] = 1.5;
    CHECK(field_of(j) == "/hris/rho");

    j = base;
    j["extra"] = true;
    CHECK(field_of(j) == "/extra");

    j = base;
    j["seed"] = -1;
    CHECK(field_of(j) == "/seed");

    CHECK(field_of(base) == "<accepted>");
}

TEST_CASE("syntax errors report line and column")
{
    try {
        (void)parse_config_text("{\n  \"version\": 1,\n  \"seed\": ,\n}");
        FAIL("expected a syntax error");
    } catch (const ConfigError &e) {
        CHECK(e.line() == 3);
        CHECK(e.column() > 0);
    }
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("infinite SNR can be spelled as a string")
{
    json j = preset_json("fig4");
    j["aoa"]["snr_db"] = {"inf", 10};
    const auto cfg = parse_config(j);
    CHECK(std::isinf(cfg.aoa.snr_db[0]));
    CHECK(cfg.to_json()["aoa"]["snr_db"][0] == "inf");
}

TEST_CASE("hris block materializes per-atom lists and presets")
{
    const auto arr = array::PlanarArray(2, 2);
    HrisBlock b;
    b.rho = std::vector<double>{0.1, 0.2, 0.3, 0.4};
    b.reflect_phase = std::vector<double>{0.0, 1.0, 2.0, 3.0};
    const auto cfg = b.materialize(arr, 2);
    CHECK(cfg.rho(2) == 0.3);
    CHECK(cfg.reflect_phase(3) == 3.0);
    CHECK(cfg.n_rf() == 2);
    CHECK_THROWS_AS(b.materialize(array::PlanarArray(3, 3)), Error);

    HrisBlock g;
    g.reflect_phase = HrisBlock::PhasePreset::gradient;
    g.steer_deg = -20.0;
    const auto gc = g.materialize(arr);
    const rvec want = array::gradient_phase_profile(arr, array::Direction::from_signed(deg2rad(-20.0), 0.0));
    CHECK((gc.reflect_phase - want).norm() < 1e-12);

    const json j = to_json(b);
    const auto back = hris_block_from_json(j);
    CHECK(std::get<std::vector<double>>(back.rho) == std::get<std::vector<double>>(b.rho));
}

TEST_CASE("number formatting and CSV dialect")
{
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_number(std::size_t{42}) == "42");
    CsvTable t({"a", "b"});
    t.add_row({"1", "2"});
    CHECK(t.str() == "a,b\n1,2\n");
    CHECK_THROWS_AS(t.add_row({"1"}), Error);
}

TEST_CASE("reflected beampattern follows the Dirichlet kernel")
{
    const auto arr = array::PlanarArray::square(12);
    const double steer = deg2rad(25.0);
    const rvec phi = array::gradient_phase_profile(arr, array::Direction(steer, 0.0));
    const BeamGrid grid{};
    const auto rows = emit_beampattern(arr, phi, grid);
    REQUIRE(rows.size() == 719);

    // broadside incidence, 12 columns along x: |AF|^2 / N^2 = D_12(psi)^2
    const double kd = arr.wavenumber() * arr.spacing_m();
    std::vector<double> oracle;
    double peak = 0.0;
    for (const auto &r : rows) {
        const double psi = kd * (std::sin(deg2rad(r.angle_deg)) - std::sin(steer));
        const double s = std::sin(psi / 2.0);
        const double dk = std::abs(s) < 1e-12 ? 1.0 : std::sin(12.0 * psi / 2.0) / (12.0 * s);
        oracle.push_back(dk * dk);
        peak = std::max(peak, dk * dk);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double want = 10.0 * std::log10(std::max(oracle[i] / peak, 1e-30));
        if (want > -60.0)
            worst = std::max(worst, std::abs(rows[i].gain_db - want));
    }
    CHECK(worst < 1e-6);

    // highest sidelobe of a 12-element uniform aperture
    double sidelobe = -1e9;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
        const bool local_max = rows[i].gain_db > rows[i - 1].gain_db && rows[i].gain_db > rows[i + 1].gain_db;
        if (local_max && rows[i].gain_db < -1.0)
            sidelobe = std::max(sidelobe, rows[i].gain_db);
    }
    CHECK(sidelobe == doctest::Approx(-13.1).epsilon(0.02));
}

TEST_CASE("runner writes CSV and metadata")
{
    const auto dir = scratch("runner");
    auto cfg = preset_config("fig6");
    cfg.n_trials = 2;
    cfg.nr_grid = {4, 8};
    cfg.output_dir = dir.string();
    cfg.dump_channels = true;
    const auto out = run_experiment(cfg);
    CHECK(std::filesystem::exists(dir / "rfsweep.csv"));
    CHECK(std::filesystem::exists(dir / "rfsweep.meta.json"));
    const auto H = channel::read_matrix_file(dir / "channels_H.bin");
    CHECK(H.data.rows() == 64);
    CHECK(H.seed == cfg.seed);

    const std::string csv = slurp(dir / "rfsweep.csv");
    CHECK(csv.rfind("n_rf,snr_db,n_trials,hris_rank,bs_rank,nmse_cascaded,nmse_cascaded_db", 0) == 0);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

    const json meta = json::parse(slurp(dir / "rfsweep.meta.json"));
    CHECK(meta["derived"]["pilot_slots"] == 9);
    CHECK(meta["derived"]["pilot_symbols_used"] == 72);
    CHECK(meta["config"]["seed"] == cfg.seed);
    CHECK(out.metadata["rows"] == 4);
    std::filesystem::remove_all(dir);
}

TEST_CASE("exit code mapping")
{
    CHECK(exit_code_for(IdentifiabilityError("x", 1, 2)) == exit_infeasible);
    CHECK(exit_code_for(EstimationInfeasible("x")) == exit_infeasible);
    CHECK(exit_code_for(ConfigError("/a", "b")) == exit_config_error);
    CHECK(exit_code_for(ParameterError("x")) == exit_config_error);
    CHECK(exit_code_for(std::runtime_error("x")) == exit_failure);
}

#ifdef HRIS_SIM_EXE
namespace {

int run_cli(const std::string &args)
{
    const std::string cmd = std::string("\"") + HRIS_SIM_EXE + "\" " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

} // namespace

TEST_CASE("command line exit codes")
{
    const auto dir = scratch("cli");
    CHECK(run_cli("--version") == 0);
    CHECK(run_cli("preset fig5 --print-config") == 0);
    CHECK(run_cli("preset fig9") == 2);
    CHECK(run_cli("run " + (dir / "missing.json").string()) == 2);

    json bad = preset_json("fig5");
    bad["chest"]["bogus"] = 1;
    std::ofstream(dir / "bad.json") << bad.dump();
    CHECK(run_cli("run " + (dir / "bad.json").string()) == 2);

    json short_pilots = preset_json("fig5");
    short_pilots["chest"]["pilots"] = 56;
    short_pilots["n_trials"] = 1;
    short_pilots["output_dir"] = (dir / "out").string();
    std::ofstream(dir / "short.json") << short_pilots.dump();
    CHECK(run_cli("run " + (dir / "short.json").string()) == 3);

    CHECK(run_cli("run " + (dir / "short.json").string() + " --workers notanumber") == 2);
    CHECK(run_cli("beampattern --steer-deg 30 --out " + (dir / "bp.csv").string()) == 0);
    CHECK(slurp(dir / "bp.csv").rfind("angle_deg,gain_db\n", 0) == 0);
    CHECK(run_cli("preset beampattern --out " + (dir / "bpp").string()) == 0);
    CHECK(std::filesystem::exists(dir / "bpp" / "beampattern.csv"));
    std::filesystem::remove_all(dir);
}
#endif
