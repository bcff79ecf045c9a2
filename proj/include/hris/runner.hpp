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

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "hris/aoa.hpp"
#include "hris/array.hpp"
#include "hris/chest.hpp"
#include "hris/config.hpp"
#include "hris/csv.hpp"
#include "hris/surface.hpp"

namespace hris::sim {

/// CLI exit codes.
enum ExitCode : int
{
    exit_ok = 0,
    exit_failure = 1,
    exit_config_error = 2,
    exit_infeasible = 3,
};

struct BeamRow
{
    double angle_deg;
    double gain_db;
};

/// Reflected beampattern for a broadside-incident plane wave: |array_factor|^2
/// of the reflected field over the signed angle grid, normalized to a 0 dB peak.
std::vector<BeamRow> emit_beampattern(const array::PlanarArray &array, const surface::HrisConfig &cfg,
                                      const BeamGrid &grid);

/// Same, with full reflection (rho = 1) and the given per-atom phases.
std::vector<BeamRow> emit_beampattern(const array::PlanarArray &array, const rvec &phase_profile,
                                      const BeamGrid &grid);

CsvTable aoa_table(const std::vector<aoa::AoaRow> &rows);
CsvTable tradeoff_table(const std::vector<chest::TradeoffRow> &rows);
CsvTable rfsweep_table(const std::vector<chest::RfSweepRow> &rows);
CsvTable beampattern_table(const std::vector<BeamRow> &rows);

struct RunOutputs
{
    std::vector<std::filesystem::path> files;
    nlohmann::json metadata;
};

/// Runs the configured experiment and writes `<name>.csv` plus
/// `<name>.meta.json` into config.output_dir (created if needed).
RunOutputs run_experiment(const ExperimentConfig &config);

/// Maps an exception thrown by run_experiment / config loading to an exit code.
int exit_code_for(const std::exception &e);

} // namespace hris::sim
