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

#include "hris/surface.hpp"

#include <cmath>
#include <string>

namespace hris::surface {

void HrisConfig::validate() const
{
    const Eigen::Index n = rho.size();
    if (n == 0)
        throw ParameterError("HrisConfig: at least one atom is required");
    require_size(reflect_phase.size(), n, "HrisConfig reflect_phase");
    require_size(sense_phase.size(), n, "HrisConfig sense_phase");
    require_size(combiner.cols(), n, "HrisConfig combiner columns");
    if (combiner.rows() < 1 || combiner.rows() > n)
        throw ParameterError("HrisConfig: RF chain count must be in [1, N]");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(rho(i) >= 0.0 && rho(i) <= 1.0))
            throw ParameterError("HrisConfig: rho[" + std::to_string(i) + "] = " + std::to_string(rho(i)) +
                                 " outside [0, 1]");
        if (!std::isfinite(reflect_phase(i)) || !std::isfinite(sense_phase(i)))
            throw ParameterError("HrisConfig: phases must be finite");
    }
    for (Eigen::Index c = 0; c < combiner.cols(); ++c)
        for (Eigen::Index r = 0; r < combiner.rows(); ++r)
            if (std::abs(std::abs(combiner(r, c)) - 1.0) > 1e-9)
                throw ParameterError("HrisConfig: combiner entries must have unit modulus");
}

HrisConfig HrisConfig::uniform(double rho, cmat combiner)
{
    const Eigen::Index n = combiner.cols();
    HrisConfig cfg{rvec::Constant(n, rho), rvec::Zero(n), rvec::Zero(n), std::move(combiner)};
    cfg.validate();
    return cfg;
}

HrisSignals build_signals(const HrisConfig &cfg)
{
    cfg.validate();
    const Eigen::Index n = cfg.rho.size();
    HrisSignals out;
    out.reflected_gain.resize(n);
    cvec sensed_amp(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.reflected_gain(i) = std::polar(std::sqrt(cfg.rho(i)), cfg.reflect_phase(i));
        sensed_amp(i) = std::polar(std::sqrt(1.0 - cfg.rho(i)), cfg.sense_phase(i));
    }
    out.sensed_map = cfg.combiner * sensed_amp.asDiagonal();
    return out;
}

cvec sense(const HrisSignals &signals, const cvec &incident)
{
    require_size(incident.size(), signals.sensed_map.cols(), "sense incident");
    return signals.sensed_map * incident;
}

cvec sense(const HrisSignals &signals, const cvec &incident, double noise_std, Rng &rng)
{
    if (!(noise_std >= 0.0))
        throw ParameterError("sense: noise_std must be >= 0");
    cvec y = sense(signals, incident);
    if (noise_std > 0.0) {
        const double var = noise_std * noise_std;
        for (Eigen::Index r = 0; r < y.size(); ++r)
            y(r) += rng.complex_normal(var);
    }
    return y;
}

cvec reflect(const HrisSignals &signals, const cvec &incident)
{
    require_size(incident.size(), signals.reflected_gain.size(), "reflect incident");
    return signals.reflected_gain.cwiseProduct(incident);
}

CombinerKind parse_combiner_kind(std::string_view name)
{
    if (name == "dft")
        return CombinerKind::dft;
    if (name == "random_phase")
        return CombinerKind::random_phase;
    throw ParameterError("unknown combiner kind '" + std::string(name) + "' (expected dft or random_phase)");
}

std::string_view to_string(CombinerKind kind)
{
    return kind == CombinerKind::dft ? "dft" : "random_phase";
}

cmat dft_matrix(std::size_t n)
{
    cmat f(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            // reduce r*c mod n first so the phase argument stays small and exact
            const auto idx = static_cast<double>((r * c) % n);
            f(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                std::polar(1.0, -two_pi * idx / static_cast<double>(n));
        }
    return f;
}

std::vector<cmat> combiner_schedule(std::size_t n_atoms, std::size_t n_rf, std::size_t n_slots, CombinerKind kind,
                                    std::uint64_t seed)
{
    if (n_atoms == 0 || n_rf == 0 || n_slots == 0)
        throw ParameterError("combiner_schedule: counts must be >= 1");
    if (n_rf > n_atoms)
        throw ParameterError("combiner_schedule: N_r = " + std::to_string(n_rf) + " exceeds N = " +
                             std::to_string(n_atoms));

    const auto rows = static_cast<Eigen::Index>(n_rf);
    const auto cols = static_cast<Eigen::Index>(n_atoms);
    std::vector<cmat> schedule;
    schedule.reserve(n_slots);

    if (kind == CombinerKind::dft) {
        const cmat f = dft_matrix(n_atoms);
        for (std::size_t t = 0; t < n_slots; ++t) {
            cmat block(rows, cols);
            for (std::size_t r = 0; r < n_rf; ++r)
                block.row(static_cast<Eigen::Index>(r)) = f.row(static_cast<Eigen::Index>((t * n_rf + r) % n_atoms));
            schedule.push_back(std::move(block));
        }
        return schedule;
    }

    Rng rng = Rng::derive(seed, {tag(Stream::combiner)});
    for (std::size_t t = 0; t < n_slots; ++t) {
        cmat block(rows, cols);
        for (Eigen::Index c = 0; c < cols; ++c)
            for (Eigen::Index r = 0; r < rows; ++r)
                block(r, c) = std::polar(1.0, rng.uniform(0.0, two_pi));
        schedule.push_back(std::move(block));
    }
    return schedule;
}

cmat stack(const std::vector<cmat> &blocks)
{
    if (blocks.empty())
        return {};
    Eigen::Index rows = 0;
    const Eigen::Index cols = blocks.front().cols();
    for (const auto &b : blocks) {
        require_size(b.cols(), cols, "stack block columns");
        rows += b.rows();
    }
    cmat out(rows, cols);
    Eigen::Index r = 0;
    for (const auto &b : blocks) {
        out.middleRows(r, b.rows()) = b;
        r += b.rows();
    }
    return out;
}

} // namespace hris::surface
