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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hris/aoa.hpp"
#include "hris/array.hpp"
#include "hris/chest.hpp"
#include "hris/surface.hpp"

namespace hris::sim {

inline constexpr int config_version = 1;

/// Invalid configuration. `field` is a JSON-pointer-like path ("/chest/K"),
/// `line`/`column` are set for syntax errors.
class ConfigError : public Error
{
  public:
    ConfigError(const std::string &field, const std::string &message, std::size_t line = 0, std::size_t column = 0);

    const std::string &field() const noexcept { return field_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    std::string field_;
    std::size_t line_, column_;
};

enum class ExperimentKind
{
    aoa_rmse,
    chest_tradeoff,
    rf_chain_sweep,
    beampattern,
};

ExperimentKind parse_experiment_kind(std::string_view name);
std::string_view to_string(ExperimentKind kind);

/// Serializable description of an HrisConfig: the split, the reflection
/// phase profile and the combiner recipe. Materialized against an array.
struct HrisBlock
{
    enum class PhasePreset
    {
        zero,
        gradient,
        random,
    };

    std::variant<double, std::vector<double>> rho = 1.0;
    std::variant<PhasePreset, std::vector<double>> reflect_phase = PhasePreset::zero;
    /// Target of the gradient preset, signed angle in the plane of `steer_azimuth_deg`.
    double steer_deg = 0.0;
    double steer_azimuth_deg = 0.0;
    std::uint64_t phase_seed = 0;
    surface::CombinerKind combiner = surface::CombinerKind::dft;
    std::uint64_t combiner_seed = 0;

    bool uniform_rho() const { return std::holds_alternative<double>(rho); }
    double scalar_rho() const;

    surface::HrisConfig materialize(const array::PlanarArray &array, std::size_t n_rf = 1) const;
};

nlohmann::json to_json(const HrisBlock &block);
HrisBlock hris_block_from_json(const nlohmann::json &j, const std::string &path = "/hris");

struct BeamGrid
{
    double lo_deg = -89.75;
    double hi_deg = 89.75;
    std::size_t n_points = 719;
    double plane_azimuth_deg = 0.0;

    double step_deg() const { return (hi_deg - lo_deg) / static_cast<double>(n_points - 1); }
};

struct ExperimentConfig
{
    ExperimentKind experiment = ExperimentKind::chest_tradeoff;
    std::uint64_t seed = 1;
    std::size_t n_trials = 200;
    std::size_t workers = 0; ///< 0 = auto
    std::string output_dir = "out";

    // array block (beampattern geometry; spacing/wavelength also feed the AoA study)
    std::size_t n_h = 12;
    std::size_t n_v = 12;
    double spacing_m = array::default_spacing_m;
    double wavelength_m = array::default_wavelength_m;

    HrisBlock hris{};

    // chest / rf sweep
    chest::ChestSetup chest{};
    std::vector<double> rho_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::size_t n_phase_draws = 3;
    std::vector<std::size_t> nr_grid{1, 2, 4, 8};
    std::vector<double> snr_list{20.0, 30.0};
    bool dump_channels = false;

    aoa::AoaExperiment aoa{};

    BeamGrid beam{};

    /// Normalized echo of the parsed configuration (all defaults filled in).
    nlohmann::json to_json() const;
};

/// Strict parse: unknown keys, wrong types and out-of-range values raise
/// ConfigError naming the offending field.
ExperimentConfig parse_config(const nlohmann::json &j);
ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path &path);

/// Bundled presets: "fig4", "fig5", "fig6", "beampattern".
std::vector<std::string> preset_names();
nlohmann::json preset_json(std::string_view name);
ExperimentConfig preset_config(std::string_view name);

} // namespace hris::sim
