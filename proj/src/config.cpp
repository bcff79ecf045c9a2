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

#include "hris/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace hris::sim {

using nlohmann::json;

ConfigError::ConfigError(const std::string &field, const std::string &message, std::size_t line, std::size_t column)
    : Error(line ? "config error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message
                 : "config error at '" + (field.empty() ? std::string("/") : field) + "': " + message),
      field_(field), line_(line), column_(column)
{
}

ExperimentKind parse_experiment_kind(std::string_view name)
{
    if (name == "aoa_rmse")
        return ExperimentKind::aoa_rmse;
    if (name == "chest_tradeoff")
        return ExperimentKind::chest_tradeoff;
    if (name == "rf_chain_sweep")
        return ExperimentKind::rf_chain_sweep;
    if (name == "beampattern")
        return ExperimentKind::beampattern;
    throw ParameterError("unknown experiment '" + std::string(name) +
                         "' (expected aoa_rmse, chest_tradeoff, rf_chain_sweep or beampattern)");
}

std::string_view to_string(ExperimentKind kind)
{
    switch (kind) {
    case ExperimentKind::aoa_rmse:
        return "aoa_rmse";
    case ExperimentKind::chest_tradeoff:
        return "chest_tradeoff";
    case ExperimentKind::rf_chain_sweep:
        return "rf_chain_sweep";
    case ExperimentKind::beampattern:
        return "beampattern";
    }
    return "?";
}

namespace {

// Number that may also be spelled "inf" / "-inf" (JSON has no literal for it).
json number_json(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return v;
}

json numbers_json(const std::vector<double> &v)
{
    json a = json::array();
    for (double x : v)
        a.push_back(number_json(x));
    return a;
}

/// Strict view over one JSON object: every key must be consumed.
class Section
{
  public:
    Section(const json &j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            throw ConfigError(path_, "expected an object");
    }

    std::string field(const std::string &key) const { return path_ + "/" + key; }

    const json *find(const std::string &key)
    {
        used_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    bool has(const std::string &key) const { return j_.contains(key); }

    double number(const std::string &key, double def)
    {
        const json *v = find(key);
        return v ? as_number(*v, field(key)) : def;
    }

    double positive(const std::string &key, double def)
    {
        const double v = number(key, def);
        if (!(v > 0.0) || !std::isfinite(v))
            throw ConfigError(field(key), "must be a finite positive number");
        return v;
    }

    std::size_t count(const std::string &key, std::size_t def, std::size_t min = 0)
    {
        const json *v = find(key);
        if (!v)
            return def;
        const std::size_t n = as_count(*v, field(key));
        if (n < min)
            throw ConfigError(field(key), "must be >= " + std::to_string(min));
        return n;
    }

    std::uint64_t u64(const std::string &key, std::uint64_t def)
    {
        const json *v = find(key);
        if (!v)
            return def;
        if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<std::int64_t>() >= 0))
            throw ConfigError(field(key), "expected an unsigned 64-bit integer");
        return v->get<std::uint64_t>();
    }

    bool boolean(const std::string &key, bool def)
    {
        const json *v = find(key);
        if (!v)
            return def;
        if (!v->is_boolean())
            throw ConfigError(field(key), "expected true or false");
        return v->get<bool>();
    }

    std::string string(const std::string &key, const std::string &def)
    {
        const json *v = find(key);
        if (!v)
            return def;
        if (!v->is_string())
            throw ConfigError(field(key), "expected a string");
        return v->get<std::string>();
    }

    std::vector<double> numbers(const std::string &key, std::vector<double> def)
    {
        const json *v = find(key);
        if (!v)
            return def;
        if (!v->is_array() || v->empty())
            throw ConfigError(field(key), "expected a non-empty array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v->size(); ++i)
            out.push_back(as_number((*v)[i], field(key) + "/" + std::to_string(i)));
        return out;
    }

    std::vector<std::size_t> counts(const std::string &key, std::vector<std::size_t> def)
    {
        const json *v = find(key);
        if (!v)
            return def;
        if (!v->is_array() || v->empty())
            throw ConfigError(field(key), "expected a non-empty array of counts");
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < v->size(); ++i)
            out.push_back(as_count((*v)[i], field(key) + "/" + std::to_string(i)));
        return out;
    }

    std::optional<Section> section(const std::string &key)
    {
        const json *v = find(key);
        if (!v)
            return std::nullopt;
        return Section(*v, field(key));
    }

    void finish() const
    {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!used_.count(it.key()))
                throw ConfigError(field(it.key()), "unknown key");
    }

    static double as_number(const json &v, const std::string &path)
    {
        if (v.is_number())
            return v.get<double>();
        if (v.is_string()) {
            const auto s = v.get<std::string>();
            if (s == "inf")
                return std::numeric_limits<double>::infinity();
            if (s == "-inf")
                return -std::numeric_limits<double>::infinity();
        }
        throw ConfigError(path, "expected a number");
    }

    static std::size_t as_count(const json &v, const std::string &path)
    {
        if (v.is_number_unsigned())
            return v.get<std::size_t>();
        if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
            return static_cast<std::size_t>(v.get<std::int64_t>());
        throw ConfigError(path, "expected a non-negative integer");
    }

  private:
    const json &j_;
    std::string path_;
    std::set<std::string> used_;
};

// Maps library ParameterErrors raised while validating a block onto the block path.
template <typename Fn>
void checked(const std::string &path, Fn &&fn)
{
    try {
        fn();
    } catch (const ConfigError &) {
        throw;
    } catch (const Error &e) {
        throw ConfigError(path, e.what());
    }
}

std::string_view to_string(HrisBlock::PhasePreset p)
{
    switch (p) {
    case HrisBlock::PhasePreset::zero:
        return "zero";
    case HrisBlock::PhasePreset::gradient:
        return "gradient";
    case HrisBlock::PhasePreset::random:
        return "random";
    }
    return "?";
}

} // namespace

double HrisBlock::scalar_rho() const
{
    if (!uniform_rho())
        throw ParameterError("a uniform (scalar) rho is required here");
    return std::get<double>(rho);
}

surface::HrisConfig HrisBlock::materialize(const array::PlanarArray &array, std::size_t n_rf) const
{
    const auto N = static_cast<Eigen::Index>(array.size());
    surface::HrisConfig cfg;
    if (uniform_rho()) {
        cfg.rho = rvec::Constant(N, std::get<double>(rho));
    } else {
        const auto &v = std::get<std::vector<double>>(rho);
        require_size(static_cast<Eigen::Index>(v.size()), N, "hris rho list");
        cfg.rho = Eigen::Map<const rvec>(v.data(), N);
    }

    if (std::holds_alternative<std::vector<double>>(reflect_phase)) {
        const auto &v = std::get<std::vector<double>>(reflect_phase);
        require_size(static_cast<Eigen::Index>(v.size()), N, "hris reflect_phase list");
        cfg.reflect_phase = Eigen::Map<const rvec>(v.data(), N).unaryExpr([](double p) { return wrap_phase(p); });
    } else {
        switch (std::get<PhasePreset>(reflect_phase)) {
        case PhasePreset::zero:
            cfg.reflect_phase = rvec::Zero(N);
            break;
        case PhasePreset::gradient:
            cfg.reflect_phase = array::gradient_phase_profile(
                array, array::Direction::from_signed(deg2rad(steer_deg), deg2rad(steer_azimuth_deg)));
            break;
        case PhasePreset::random: {
            Rng rng = Rng::derive(phase_seed, {tag(Stream::phase_draw)});
            cfg.reflect_phase.resize(N);
            for (Eigen::Index n = 0; n < N; ++n)
                cfg.reflect_phase(n) = rng.uniform(0.0, two_pi);
            break;
        }
        }
    }
    cfg.sense_phase = rvec::Zero(N);
    cfg.combiner = surface::combiner_schedule(array.size(), n_rf, 1, combiner, combiner_seed).front();
    cfg.validate();
    return cfg;
}

json to_json(const HrisBlock &b)
{
    json j;
    if (b.uniform_rho())
        j["rho"] = std::get<double>(b.rho);
    else
        j["rho"] = std::get<std::vector<double>>(b.rho);
    if (std::holds_alternative<std::vector<double>>(b.reflect_phase))
        j["reflect_phase"] = std::get<std::vector<double>>(b.reflect_phase);
    else
        j["reflect_phase"] = std::string(to_string(std::get<HrisBlock::PhasePreset>(b.reflect_phase)));
    j["steer_deg"] = b.steer_deg;
    j["steer_azimuth_deg"] = b.steer_azimuth_deg;
    j["phase_seed"] = b.phase_seed;
    j["combiner"] = {{"kind", std::string(surface::to_string(b.combiner))}, {"seed", b.combiner_seed}};
    return j;
}

HrisBlock hris_block_from_json(const json &j, const std::string &path)
{
    Section s(j, path);
    HrisBlock b;

    if (const json *rho = s.find("rho")) {
        if (rho->is_number()) {
            b.rho = rho->get<double>();
        } else if (rho->is_array()) {
            std::vector<double> v;
            for (std::size_t i = 0; i < rho->size(); ++i)
                v.push_back(Section::as_number((*rho)[i], s.field("rho") + "/" + std::to_string(i)));
            b.rho = std::move(v);
        } else {
            throw ConfigError(s.field("rho"), "expected a number or a per-atom list");
        }
        auto check = [&](double r) {
            if (!(r >= 0.0 && r <= 1.0))
                throw ConfigError(s.field("rho"), "values must lie in [0, 1]");
        };
        if (b.uniform_rho())
            check(std::get<double>(b.rho));
        else
            for (double r : std::get<std::vector<double>>(b.rho))
                check(r);
    }

    if (const json *ph = s.find("reflect_phase")) {
        if (ph->is_string()) {
            const auto name = ph->get<std::string>();
            if (name == "zero")
                b.reflect_phase = HrisBlock::PhasePreset::zero;
            else if (name == "gradient")
                b.reflect_phase = HrisBlock::PhasePreset::gradient;
            else if (name == "random")
                b.reflect_phase = HrisBlock::PhasePreset::random;
            else
                throw ConfigError(s.field("reflect_phase"), "unknown preset '" + name +
                                                                "' (expected zero, gradient, random or a list)");
        } else if (ph->is_array()) {
            std::vector<double> v;
            for (std::size_t i = 0; i < ph->size(); ++i)
                v.push_back(Section::as_number((*ph)[i], s.field("reflect_phase") + "/" + std::to_string(i)));
            b.reflect_phase = std::move(v);
        } else {
            throw ConfigError(s.field("reflect_phase"), "expected a preset name or a per-atom list");
        }
    }

    b.steer_deg = s.number("steer_deg", b.steer_deg);
    if (!(std::abs(b.steer_deg) < 90.0))
        throw ConfigError(s.field("steer_deg"), "must lie in (-90, 90)");
    b.steer_azimuth_deg = s.number("steer_azimuth_deg", b.steer_azimuth_deg);
    b.phase_seed = s.u64("phase_seed", b.phase_seed);

    if (auto c = s.section("combiner")) {
        const auto kind = c->string("kind", std::string(surface::to_string(b.combiner)));
        checked(c->field("kind"), [&] { b.combiner = surface::parse_combiner_kind(kind); });
        b.combiner_seed = c->u64("seed", b.combiner_seed);
        c->finish();
    }
    s.finish();
    return b;
}

json ExperimentConfig::to_json() const
{
    json j;
    j["version"] = config_version;
    j["experiment"] = std::string(to_string(experiment));
    j["seed"] = seed;
    j["n_trials"] = n_trials;
    j["workers"] = workers == 0 ? json("auto") : json(workers);
    j["output_dir"] = output_dir;
    j["array"] = {{"n_h", n_h}, {"n_v", n_v}, {"spacing_m", spacing_m}, {"wavelength_m", wavelength_m}};
    j["hris"] = sim::to_json(hris);
    j["channel"] = {{"cell_radius_m", chest.geometry.cell_radius_m},
                    {"hris_bs_distance_m", chest.geometry.hris_bs_distance_m},
                    {"carrier_hz", chest.geometry.carrier_hz},
                    {"wavelength_m", chest.geometry.wavelength_m},
                    {"min_distance_m", chest.geometry.min_distance_m},
                    {"pathloss", std::string(channel::to_string(chest.channel.pathloss))},
                    {"rician_k", chest.channel.rician_k},
                    {"dump", dump_channels}};
    j["chest"] = {{"M", chest.n_antennas},
                  {"K", chest.n_users},
                  {"N", chest.n_atoms},
                  {"n_rf", chest.n_rf},
                  {"pilots", chest.pilots},
                  {"snr_db", number_json(chest.snr_db)},
                  {"noise", chest.noise},
                  {"rho_grid", rho_grid},
                  {"n_phase_draws", n_phase_draws},
                  {"nr_grid", nr_grid},
                  {"snr_list", numbers_json(snr_list)}};
    j["aoa"] = {{"n_list", aoa.n_list},
                {"sensed_fractions", aoa.sensed_fractions},
                {"n_snapshots", aoa.n_snapshots},
                {"snr_db", numbers_json(aoa.snr_db)},
                {"azimuth_deg", rad2deg(aoa.azimuth_rad)},
                {"truth_lo_deg", rad2deg(aoa.truth_lo_rad)},
                {"truth_hi_deg", rad2deg(aoa.truth_hi_rad)},
                {"schedule", std::string(aoa::to_string(aoa.schedule))},
                {"grid",
                 {{"lo_deg", rad2deg(aoa.grid.lo_rad)},
                  {"hi_deg", rad2deg(aoa.grid.hi_rad)},
                  {"n_points", aoa.grid.n_points},
                  {"refine_iters", aoa.grid.refine_iters},
                  {"tolerance_rad", aoa.grid.tolerance_rad}}}};
    j["beampattern"] = {{"lo_deg", beam.lo_deg},
                        {"hi_deg", beam.hi_deg},
                        {"n_points", beam.n_points},
                        {"plane_azimuth_deg", beam.plane_azimuth_deg}};
    return j;
}

ExperimentConfig parse_config(const json &j)
{
    ExperimentConfig c;
    Section top(j, "");

    const json *ver = top.find("version");
    if (!ver)
        throw ConfigError("/version", "missing (expected " + std::to_string(config_version) + ")");
    if (!ver->is_number_integer() || ver->get<int>() != config_version)
        throw ConfigError("/version", "unsupported config version (expected " + std::to_string(config_version) + ")");

    const json *exp = top.find("experiment");
    if (!exp || !exp->is_string())
        throw ConfigError("/experiment", "missing or not a string");
    checked("/experiment", [&] { c.experiment = parse_experiment_kind(exp->get<std::string>()); });

    c.seed = top.u64("seed", c.seed);
    c.n_trials = top.count("n_trials", c.n_trials, 1);
    if (const json *w = top.find("workers")) {
        if (w->is_string() && w->get<std::string>() == "auto")
            c.workers = 0;
        else
            c.workers = Section::as_count(*w, "/workers");
    }
    c.output_dir = top.string("output_dir", c.output_dir);

    if (auto a = top.section("array")) {
        c.n_h = a->count("n_h", c.n_h, 1);
        c.n_v = a->count("n_v", c.n_v, 1);
        c.spacing_m = a->positive("spacing_m", c.spacing_m);
        c.wavelength_m = a->positive("wavelength_m", c.wavelength_m);
        a->finish();
    }

    if (const json *h = top.find("hris"))
        c.hris = hris_block_from_json(*h, "/hris");

    if (auto ch = top.section("channel")) {
        auto &g = c.chest.geometry;
        g.cell_radius_m = ch->positive("cell_radius_m", g.cell_radius_m);
        g.hris_bs_distance_m = ch->positive("hris_bs_distance_m", g.hris_bs_distance_m);
        g.carrier_hz = ch->positive("carrier_hz", g.carrier_hz);
        g.wavelength_m = ch->number("wavelength_m", g.wavelength_m);
        if (g.wavelength_m < 0.0)
            throw ConfigError(ch->field("wavelength_m"), "must be >= 0 (0 derives it from the carrier)");
        g.min_distance_m = ch->positive("min_distance_m", g.min_distance_m);
        const auto pl = ch->string("pathloss", std::string(channel::to_string(c.chest.channel.pathloss)));
        checked(ch->field("pathloss"), [&] { c.chest.channel.pathloss = channel::parse_pathloss_mode(pl); });
        c.chest.channel.rician_k = ch->number("rician_k", c.chest.channel.rician_k);
        if (!(c.chest.channel.rician_k >= 0.0))
            throw ConfigError(ch->field("rician_k"), "must be >= 0");
        c.dump_channels = ch->boolean("dump", c.dump_channels);
        ch->finish();
    }

    if (auto s = top.section("chest")) {
        auto &cs = c.chest;
        cs.n_antennas = s->count("M", cs.n_antennas, 1);
        cs.n_users = s->count("K", cs.n_users, 1);
        cs.n_atoms = s->count("N", cs.n_atoms, 1);
        cs.n_rf = s->count("n_rf", cs.n_rf, 1);
        cs.pilots = s->count("pilots", cs.pilots, 1);
        cs.snr_db = s->number("snr_db", cs.snr_db);
        cs.noise = s->boolean("noise", cs.noise);
        c.rho_grid = s->numbers("rho_grid", c.rho_grid);
        for (double r : c.rho_grid)
            if (!(r >= 0.0 && r < 1.0))
                throw ConfigError(s->field("rho_grid"), "values must lie in [0, 1)");
        c.n_phase_draws = s->count("n_phase_draws", c.n_phase_draws, 1);
        c.nr_grid = s->counts("nr_grid", c.nr_grid);
        c.snr_list = s->numbers("snr_list", c.snr_list);
        if (cs.n_rf > cs.n_atoms)
            throw ConfigError(s->field("n_rf"), "N_r cannot exceed N");
        for (auto nr : c.nr_grid)
            if (nr == 0 || nr > cs.n_atoms)
                throw ConfigError(s->field("nr_grid"), "entries must lie in [1, N]");
        s->finish();
    }
    c.chest.combiner = c.hris.combiner;

    c.aoa.spacing_m = c.spacing_m;
    c.aoa.wavelength_m = c.wavelength_m;
    if (auto s = top.section("aoa")) {
        auto &a = c.aoa;
        a.n_list = s->counts("n_list", a.n_list);
        a.sensed_fractions = s->numbers("sensed_fractions", a.sensed_fractions);
        a.n_snapshots = s->count("n_snapshots", a.n_snapshots, 1);
        a.snr_db = s->numbers("snr_db", a.snr_db);
        a.azimuth_rad = deg2rad(s->number("azimuth_deg", rad2deg(a.azimuth_rad)));
        a.truth_lo_rad = deg2rad(s->number("truth_lo_deg", rad2deg(a.truth_lo_rad)));
        a.truth_hi_rad = deg2rad(s->number("truth_hi_deg", rad2deg(a.truth_hi_rad)));
        const auto sched = s->string("schedule", std::string(aoa::to_string(a.schedule)));
        checked(s->field("schedule"), [&] { a.schedule = aoa::parse_schedule_kind(sched); });
        if (auto g = s->section("grid")) {
            a.grid.lo_rad = deg2rad(g->number("lo_deg", rad2deg(a.grid.lo_rad)));
            a.grid.hi_rad = deg2rad(g->number("hi_deg", rad2deg(a.grid.hi_rad)));
            a.grid.n_points = g->count("n_points", a.grid.n_points, 2);
            a.grid.refine_iters = g->count("refine_iters", a.grid.refine_iters);
            a.grid.tolerance_rad = g->positive("tolerance_rad", a.grid.tolerance_rad);
            g->finish();
        }
        s->finish();
    }
    c.aoa.n_trials = c.n_trials;

    if (auto s = top.section("beampattern")) {
        c.beam.lo_deg = s->number("lo_deg", c.beam.lo_deg);
        c.beam.hi_deg = s->number("hi_deg", c.beam.hi_deg);
        c.beam.n_points = s->count("n_points", c.beam.n_points, 2);
        c.beam.plane_azimuth_deg = s->number("plane_azimuth_deg", c.beam.plane_azimuth_deg);
        if (!(c.beam.lo_deg < c.beam.hi_deg) || c.beam.lo_deg <= -90.0 || c.beam.hi_deg >= 90.0)
            throw ConfigError("/beampattern", "angle range must satisfy -90 < lo_deg < hi_deg < 90");
        s->finish();
    }
    top.finish();

    // Cross-field checks that depend on the selected experiment.
    switch (c.experiment) {
    case ExperimentKind::aoa_rmse:
        checked("/aoa", [&] { c.aoa.validate(); });
        break;
    case ExperimentKind::chest_tradeoff:
        checked("/chest", [&] { c.chest.validate(); });
        break;
    case ExperimentKind::rf_chain_sweep:
        checked("/chest", [&] { c.chest.validate(); });
        checked("/hris/rho", [&] {
            const double r = c.hris.scalar_rho();
            if (!(r > 0.0 && r < 1.0))
                throw ParameterError("the RF-chain sweep needs a scalar rho in (0, 1)");
        });
        break;
    case ExperimentKind::beampattern:
        checked("/hris", [&] { c.hris.materialize(array::PlanarArray(c.n_h, c.n_v, c.spacing_m, c.wavelength_m)); });
        break;
    }
    return c;
}

ExperimentConfig parse_config_text(std::string_view text)
{
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        // Recover line/column from the byte offset.
        std::size_t line = 1, col = 1;
        const std::size_t end = std::min<std::size_t>(e.byte, text.size());
        for (std::size_t i = 0; i + 1 < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError("", e.what(), line, col);
    }
    return parse_config(j);
}

ExperimentConfig load_config(const std::filesystem::path &path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError("", "cannot read config file '" + path.string() + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

std::vector<std::string> preset_names()
{
    return {"fig4", "fig5", "fig6", "beampattern"};
}

json preset_json(std::string_view name)
{
    if (name == "fig4")
        return {{"version", config_version},
                {"experiment", "aoa_rmse"},
                {"seed", 4},
                {"n_trials", 500},
                {"output_dir", "out/fig4"},
                {"array", {{"spacing_m", 0.004}, {"wavelength_m", 0.01570}}},
                {"aoa",
                 {{"n_list", {144, 400}},
                  {"sensed_fractions", {0.2, 0.8}},
                  {"n_snapshots", 64},
                  {"snr_db", {-10, -5, 0, 5, 10, 15, 20, 25, 30}},
                  {"schedule", "beam_sweep"}}}};
    if (name == "fig5")
        return {{"version", config_version},
                {"experiment", "chest_tradeoff"},
                {"seed", 5},
                {"n_trials", 200},
                {"output_dir", "out/fig5"},
                {"hris", {{"combiner", {{"kind", "dft"}, {"seed", 0}}}}},
                {"channel", {{"cell_radius_m", 10.0}, {"hris_bs_distance_m", 50.0}, {"pathloss", "normalized"}}},
                {"chest",
                 {{"M", 16},
                  {"K", 8},
                  {"N", 64},
                  {"n_rf", 8},
                  {"pilots", 70},
                  {"snr_db", 30.0},
                  {"rho_grid", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}},
                  {"n_phase_draws", 3}}}};
    if (name == "fig6")
        return {{"version", config_version},
                {"experiment", "rf_chain_sweep"},
                {"seed", 6},
                {"n_trials", 200},
                {"output_dir", "out/fig6"},
                {"hris", {{"rho", 0.5}, {"combiner", {{"kind", "dft"}, {"seed", 0}}}}},
                {"channel", {{"cell_radius_m", 10.0}, {"hris_bs_distance_m", 50.0}, {"pathloss", "normalized"}}},
                {"chest",
                 {{"M", 16},
                  {"K", 8},
                  {"N", 64},
                  {"pilots", 70},
                  {"nr_grid", {1, 2, 4, 8}},
                  {"snr_list", {20.0, 30.0}}}}};
    if (name == "beampattern")
        return {{"version", config_version},
                {"experiment", "beampattern"},
                {"output_dir", "out/beampattern"},
                {"array", {{"n_h", 12}, {"n_v", 12}, {"spacing_m", 0.004}, {"wavelength_m", 0.01570}}},
                {"hris", {{"rho", 1.0}, {"reflect_phase", "gradient"}, {"steer_deg", 25.0}}},
                {"beampattern", {{"lo_deg", -89.75}, {"hi_deg", 89.75}, {"n_points", 719}}}};
    throw ConfigError("", "unknown preset '" + std::string(name) + "' (expected fig4, fig5, fig6 or beampattern)");
}

ExperimentConfig preset_config(std::string_view name)
{
    return parse_config(preset_json(name));
}

} // namespace hris::sim
