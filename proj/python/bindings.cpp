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

#include <optional>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "hris/aoa.hpp"
#include "hris/array.hpp"
#include "hris/channel.hpp"
#include "hris/chest.hpp"
#include "hris/config.hpp"
#include "hris/runner.hpp"
#include "hris/surface.hpp"

namespace py = pybind11;
using namespace hris;

namespace {

std::optional<Rng> maybe_rng(std::optional<std::uint64_t> seed)
{
    if (!seed)
        return std::nullopt;
    return Rng(*seed);
}

Rng *ptr(std::optional<Rng> &r)
{
    return r ? &*r : nullptr;
}

py::dict metadata(const nlohmann::json &j)
{
    return py::module_::import("json").attr("loads")(j.dump()).cast<py::dict>();
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Hybrid reflecting and sensing surface simulator (C++ core)";
    m.attr("__version__") = HRIS_VERSION;

    auto base = py::register_exception<Error>(m, "HrisError", PyExc_RuntimeError);
    py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
    py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
    py::register_exception<IdentifiabilityError>(m, "IdentifiabilityError", base.ptr());
    py::register_exception<EstimationInfeasible>(m, "EstimationInfeasible", base.ptr());
    py::register_exception<sim::ConfigError>(m, "ConfigError", base.ptr());

    // ---------------------------------------------------------------- array
    py::class_<array::PlanarArray>(m, "PlanarArray")
        .def(py::init<std::size_t, std::size_t, double, double>(), py::arg("n_h"), py::arg("n_v"),
             py::arg("spacing_m") = array::default_spacing_m, py::arg("wavelength_m") = array::default_wavelength_m)
        .def_static("square", &array::PlanarArray::square, py::arg("side"),
                    py::arg("spacing_m") = array::default_spacing_m,
                    py::arg("wavelength_m") = array::default_wavelength_m)
        .def_property_readonly("n_h", &array::PlanarArray::n_h)
        .def_property_readonly("n_v", &array::PlanarArray::n_v)
        .def_property_readonly("size", &array::PlanarArray::size)
        .def_property_readonly("spacing_m", &array::PlanarArray::spacing_m)
        .def_property_readonly("wavelength_m", &array::PlanarArray::wavelength_m)
        .def_property_readonly("wavenumber", &array::PlanarArray::wavenumber)
        .def_property_readonly("positions", &array::PlanarArray::positions)
        .def("__len__", &array::PlanarArray::size);

    py::class_<array::Direction>(m, "Direction")
        .def(py::init<double, double>(), py::arg("elevation_rad"), py::arg("azimuth_rad") = 0.0)
        .def_static("from_signed", &array::Direction::from_signed, py::arg("angle_rad"),
                    py::arg("plane_azimuth_rad") = 0.0)
        .def_property_readonly("elevation", &array::Direction::elevation)
        .def_property_readonly("azimuth", &array::Direction::azimuth)
        .def("unit", &array::Direction::unit);

    m.def("steering_vector", &array::steering_vector, py::arg("array"), py::arg("direction"));
    m.def("array_factor", &array::array_factor, py::arg("array"), py::arg("weights"), py::arg("direction"));
    m.def("gradient_phase_profile", &array::gradient_phase_profile, py::arg("array"), py::arg("target"));

    // -------------------------------------------------------------- surface
    py::class_<surface::HrisConfig>(m, "HrisConfig")
        .def(py::init([](rvec rho, rvec reflect_phase, rvec sense_phase, cmat combiner) {
                 surface::HrisConfig c{std::move(rho), std::move(reflect_phase), std::move(sense_phase),
                                       std::move(combiner)};
                 c.validate();
                 return c;
             }),
             py::arg("rho"), py::arg("reflect_phase"), py::arg("sense_phase"), py::arg("combiner"))
        .def_static("uniform", &surface::HrisConfig::uniform, py::arg("rho"), py::arg("combiner"))
        .def_readwrite("rho", &surface::HrisConfig::rho)
        .def_readwrite("reflect_phase", &surface::HrisConfig::reflect_phase)
        .def_readwrite("sense_phase", &surface::HrisConfig::sense_phase)
        .def_readwrite("combiner", &surface::HrisConfig::combiner)
        .def("validate", &surface::HrisConfig::validate);

    py::class_<surface::HrisSignals>(m, "HrisSignals")
        .def_readonly("reflected_gain", &surface::HrisSignals::reflected_gain)
        .def_readonly("sensed_map", &surface::HrisSignals::sensed_map);

    m.def("build_signals", &surface::build_signals, py::arg("config"));
    m.def(
        "sense",
        [](const surface::HrisSignals &s, const cvec &x, double noise_std, std::optional<std::uint64_t> seed) {
            if (noise_std == 0.0)
                return surface::sense(s, x);
            if (!seed)
                throw ParameterError("sense: a seed is required when noise_std > 0");
            Rng rng(*seed);
            return surface::sense(s, x, noise_std, rng);
        },
        py::arg("signals"), py::arg("incident"), py::arg("noise_std") = 0.0, py::arg("seed") = py::none());
    m.def("reflect", &surface::reflect, py::arg("signals"), py::arg("incident"));
    m.def("dft_matrix", &surface::dft_matrix, py::arg("n"));
    m.def(
        "combiner_schedule",
        [](std::size_t n, std::size_t nr, std::size_t slots, const std::string &kind, std::uint64_t seed) {
            return surface::combiner_schedule(n, nr, slots, surface::parse_combiner_kind(kind), seed);
        },
        py::arg("n_atoms"), py::arg("n_rf"), py::arg("n_slots"), py::arg("kind") = "dft", py::arg("seed") = 0);

    // -------------------------------------------------------------- channel
    py::class_<channel::ChannelSet>(m, "ChannelSet")
        .def(py::init<>())
        .def_readwrite("H", &channel::ChannelSet::H)
        .def_readwrite("G", &channel::ChannelSet::G)
        .def_readwrite("noise_var_hris", &channel::ChannelSet::noise_var_hris)
        .def_readwrite("noise_var_bs", &channel::ChannelSet::noise_var_bs)
        .def_readwrite("tx_power", &channel::ChannelSet::tx_power)
        .def_readwrite("user_distance_m", &channel::ChannelSet::user_distance_m)
        .def_readwrite("user_pathloss", &channel::ChannelSet::user_pathloss)
        .def_readwrite("bs_pathloss", &channel::ChannelSet::bs_pathloss);

    m.def("free_space_pathloss", &channel::free_space_pathloss, py::arg("distance_m"),
          py::arg("wavelength_m") = array::default_wavelength_m);
    m.def(
        "draw_channels",
        [](std::size_t n, std::size_t k, std::size_t mm, std::uint64_t seed, const std::string &pathloss,
           double rician_k, double snr_db) {
            Rng rng(seed);
            channel::ChannelOptions opt{channel::parse_pathloss_mode(pathloss), rician_k,
                                        channel::LinkBudget::from_snr_db(snr_db)};
            return channel::draw_channels({}, n, k, mm, rng, opt);
        },
        py::arg("n_atoms"), py::arg("n_users"), py::arg("n_antennas"), py::arg("seed") = 0,
        py::arg("pathloss") = "free_space", py::arg("rician_k") = 0.0, py::arg("snr_db") = 0.0);
    m.def("cascade", &channel::cascade, py::arg("H"), py::arg("G"), py::arg("config"));
    m.def("cascaded_per_user", &channel::cascaded_per_user, py::arg("H"), py::arg("G"), py::arg("k"));

    // ------------------------------------------------------------------ aoa
    py::class_<aoa::AoaScenario>(m, "AoaScenario")
        .def(py::init([](const array::PlanarArray &arr, double fraction, double snr_db, const array::Direction &truth,
                         std::size_t n_snapshots, const std::string &schedule, std::uint64_t seed) {
                 aoa::AoaScenario sc{arr, fraction, snr_db, truth, {},
                                     cvec::Ones(static_cast<Eigen::Index>(n_snapshots)), 1.0};
                 sc.combiner = aoa::snapshot_schedule(arr, truth.azimuth(), n_snapshots,
                                                      aoa::parse_schedule_kind(schedule), seed);
                 sc.validate();
                 return sc;
             }),
             py::arg("array"), py::arg("sensed_fraction"), py::arg("snr_db"), py::arg("truth"),
             py::arg("n_snapshots") = 64, py::arg("schedule") = "beam_sweep", py::arg("seed") = 0)
        .def_readonly("array", &aoa::AoaScenario::array)
        .def_readwrite("sensed_fraction", &aoa::AoaScenario::sensed_fraction)
        .def_readwrite("snr_db", &aoa::AoaScenario::snr_db)
        .def_readwrite("truth", &aoa::AoaScenario::truth)
        .def_readwrite("combiner", &aoa::AoaScenario::combiner)
        .def_readwrite("pilot", &aoa::AoaScenario::pilot)
        .def_readwrite("noise_var", &aoa::AoaScenario::noise_var);

    m.def(
        "simulate_snapshots",
        [](const aoa::AoaScenario &sc, std::optional<std::uint64_t> seed) {
            auto rng = maybe_rng(seed);
            return aoa::simulate_snapshots(sc, ptr(rng));
        },
        py::arg("scenario"), py::arg("seed") = py::none());
    m.def(
        "ml_estimate",
        [](const cvec &y, const aoa::AoaScenario &sc, std::size_t grid_points) {
            aoa::AoaGrid g;
            g.n_points = grid_points;
            return aoa::ml_estimate(y, sc, g);
        },
        py::arg("y"), py::arg("scenario"), py::arg("grid_points") = 721);
    m.def("crlb_elevation", &aoa::crlb_elevation, py::arg("scenario"));

    // ---------------------------------------------------------------- chest
    py::class_<chest::PilotSchedule>(m, "PilotSchedule")
        .def_readonly("pilots", &chest::PilotSchedule::pilots)
        .def_property_readonly("n_slots", &chest::PilotSchedule::n_slots)
        .def_property_readonly("pilot_symbols", &chest::PilotSchedule::pilot_symbols);

    m.def(
        "make_schedule",
        [](std::size_t n, std::size_t k, std::size_t nr, std::size_t slots, double rho, const std::string &combiner) {
            return chest::make_schedule({n, k, nr, slots, rho, {}, {}, surface::parse_combiner_kind(combiner), 0});
        },
        py::arg("n_atoms"), py::arg("n_users"), py::arg("n_rf"), py::arg("n_slots"), py::arg("rho") = 0.5,
        py::arg("combiner") = "dft");
    m.def("slots_for_pilots", &chest::slots_for_pilots, py::arg("pilot_symbols"), py::arg("n_users"));
    m.def(
        "hris_estimate_H",
        [](const chest::PilotSchedule &s, const channel::ChannelSet &ch, std::optional<std::uint64_t> seed,
           bool allow_rank_deficient) {
            auto rng = maybe_rng(seed);
            return chest::hris_estimate_H(s, ch, ptr(rng), {allow_rank_deficient}).H_hat;
        },
        py::arg("schedule"), py::arg("channels"), py::arg("seed") = py::none(),
        py::arg("allow_rank_deficient") = false);
    m.def(
        "bs_estimate_G",
        [](const chest::PilotSchedule &s, const channel::ChannelSet &ch, const cmat &H_hat,
           std::optional<std::uint64_t> seed) {
            auto rng = maybe_rng(seed);
            return chest::bs_estimate_G(s, ch, H_hat, ptr(rng)).G_hat;
        },
        py::arg("schedule"), py::arg("channels"), py::arg("H_hat"), py::arg("seed") = py::none());
    m.def("nmse", &chest::nmse, py::arg("estimate"), py::arg("truth"));
    m.def("cascaded_nmse", &chest::cascaded_nmse, py::arg("G_hat"), py::arg("H_hat"), py::arg("G"), py::arg("H"));

    // ---------------------------------------------------------- experiments
    m.def(
        "run_preset",
        [](const std::string &name, std::optional<std::string> out, std::optional<std::size_t> trials,
           std::optional<std::uint64_t> seed, std::size_t workers) {
            auto cfg = sim::preset_config(name);
            if (out)
                cfg.output_dir = *out;
            if (trials) {
                cfg.n_trials = *trials;
                cfg.aoa.n_trials = *trials;
            }
            if (seed)
                cfg.seed = *seed;
            cfg.workers = workers;
            py::gil_scoped_release release;
            auto r = sim::run_experiment(cfg);
            py::gil_scoped_acquire acquire;
            return py::make_tuple(r.files, metadata(r.metadata));
        },
        py::arg("name"), py::arg("out") = py::none(), py::arg("trials") = py::none(), py::arg("seed") = py::none(),
        py::arg("workers") = 0, "Runs a bundled preset; returns (written files, metadata dict).");
    m.def(
        "run_config",
        [](const std::filesystem::path &path, std::optional<std::string> out) {
            auto cfg = sim::load_config(path);
            if (out)
                cfg.output_dir = *out;
            py::gil_scoped_release release;
            auto r = sim::run_experiment(cfg);
            py::gil_scoped_acquire acquire;
            return py::make_tuple(r.files, metadata(r.metadata));
        },
        py::arg("path"), py::arg("out") = py::none());
    m.def(
        "preset_config",
        [](const std::string &name) { return metadata(sim::preset_json(name)); }, py::arg("name"));
    m.def(
        "beampattern",
        [](const array::PlanarArray &arr, const rvec &phase_profile, double lo_deg, double hi_deg,
           std::size_t n_points) {
            const auto rows = sim::emit_beampattern(arr, phase_profile, {lo_deg, hi_deg, n_points, 0.0});
            rvec ang(static_cast<Eigen::Index>(rows.size())), gain(static_cast<Eigen::Index>(rows.size()));
            for (std::size_t i = 0; i < rows.size(); ++i) {
                ang(static_cast<Eigen::Index>(i)) = rows[i].angle_deg;
                gain(static_cast<Eigen::Index>(i)) = rows[i].gain_db;
            }
            return py::make_tuple(ang, gain);
        },
        py::arg("array"), py::arg("phase_profile"), py::arg("lo_deg") = -89.75, py::arg("hi_deg") = 89.75,
        py::arg("n_points") = 719, "Reflected beampattern (angles in degrees, gain in dB re peak).");
}
