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

#include <Eigen/SVD>

#include "hris/surface.hpp"
#include "support.hpp"

using namespace hris;
using namespace hris::surface;

TEST_CASE("full reflection leaves nothing to sense, full sensing reflects nothing")
{
    const cmat q = dft_matrix(8).topRows(3);
    const auto refl = build_signals(HrisConfig::uniform(1.0, q));
    CHECK(refl.sensed_map.norm() == 0.0);
    CHECK((refl.reflected_gain - cvec::Ones(8)).norm() == 0.0);

    const auto sens = build_signals(HrisConfig::uniform(0.0, q));
    CHECK(sens.reflected_gain.norm() == 0.0);
    CHECK((sens.sensed_map - q).norm() < 1e-15);
}

TEST_CASE("even split gives sqrt(1/2) on both paths")
{
    const auto sig = build_signals(HrisConfig::uniform(0.5, cmat::Ones(1, 4)));
    for (Eigen::Index n = 0; n < 4; ++n) {
        CHECK(std::abs(sig.reflected_gain(n)) == doctest::Approx(std::sqrt(0.5)));
        CHECK(std::abs(sig.sensed_map(0, n)) == doctest::Approx(std::sqrt(0.5)));
        CHECK(std::norm(sig.reflected_gain(n)) + std::norm(sig.sensed_map(0, n)) == doctest::Approx(1.0));
    }
}

TEST_CASE("config validation")
{
    auto cfg = HrisConfig::uniform(0.3, cmat::Ones(2, 4));
    SUBCASE("rho outside [0, 1]")
    {
        cfg.rho(1) = 1.2;
        CHECK_THROWS_AS(cfg.validate(), ParameterError);
    }
    SUBCASE("combiner not unit modulus")
    {
        cfg.combiner(0, 0) = 0.5;
        CHECK_THROWS_AS(cfg.validate(), ParameterError);
    }
    SUBCASE("more chains than atoms")
    {
        cfg.combiner = cmat::Ones(5, 4);
        CHECK_THROWS_AS(cfg.validate(), ParameterError);
    }
    SUBCASE("length mismatch")
    {
        cfg.reflect_phase = rvec::Zero(3);
        CHECK_THROWS_AS(cfg.validate(), DimensionError);
    }
}

TEST_CASE("noise-free sensing equals the dense product")
{
    Rng rng(3);
    const HrisConfig cfg{rvec::Constant(5, 0.25), test::gen_phases(rng, 5), test::gen_phases(rng, 5),
                         cmat::Ones(1, 5)};
    const cvec x = test::gen_cvec(rng, 5);
    cdouble want = 0.0;
    for (Eigen::Index n = 0; n < 5; ++n)
        want += std::polar(std::sqrt(0.75), cfg.sense_phase(n)) * x(n);
    const auto sig = build_signals(cfg);
    const cvec y = sense(sig, x, 0.0, rng);
    REQUIRE(y.size() == 1);
    CHECK(std::abs(y(0) - want) < 1e-14);
    CHECK_THROWS_AS(sense(sig, cvec::Ones(4)), DimensionError);
    CHECK_THROWS_AS(sense(sig, x, -1.0, rng), ParameterError);
    CHECK(sense(build_signals(HrisConfig::uniform(1.0, cmat::Ones(1, 5))), x, 0.0, rng).norm() == 0.0);
}

TEST_CASE("sensing noise has the configured variance per RF chain")
{
    const auto sig = build_signals(HrisConfig::uniform(0.4, dft_matrix(4)));
    Rng rng(2024);
    const double std_dev = 0.7;
    const int draws = 25'000; // 4 chains -> 1e5 samples
    double acc = 0.0;
    cdouble mean = 0.0;
    for (int i = 0; i < draws; ++i) {
        const cvec y = sense(sig, cvec::Zero(4), std_dev, rng);
        acc += y.squaredNorm();
        mean += y.sum();
    }
    const double n = 4.0 * draws;
    CHECK(acc / n == doctest::Approx(std_dev * std_dev).epsilon(0.05));
    CHECK(std::abs(mean / n) < 0.01);
}

TEST_CASE("reflection: identity and half power")
{
    Rng rng(9);
    const cvec x = test::gen_cvec(rng, 16);
    CHECK((reflect(build_signals(HrisConfig::uniform(1.0, cmat::Ones(1, 16))), x) - x).norm() == 0.0);
    const cvec y = reflect(build_signals(HrisConfig::uniform(0.5, cmat::Ones(1, 16))), x);
    CHECK(y.squaredNorm() == doctest::Approx(0.5 * x.squaredNorm()).epsilon(1e-14));
    CHECK_THROWS_AS(reflect(build_signals(HrisConfig::uniform(0.5, cmat::Ones(1, 16))), cvec::Ones(3)),
                    DimensionError);
}

TEST_CASE("DFT combiner schedule")
{
    SUBCASE("N = 4, N_r = 2 stacks to the 4-point DFT")
    {
        const auto s = combiner_schedule(4, 2, 2, CombinerKind::dft);
        REQUIRE(s.size() == 2);
        const cmat F = stack(s);
        CHECK((F - dft_matrix(4)).norm() < 1e-14);
        CHECK(F.fullPivLu().rank() == 4);
    }
    SUBCASE("N = 64, N_r = 8 over 8 slots has condition number 1")
    {
        const cmat F = stack(combiner_schedule(64, 8, 8, CombinerKind::dft));
        const Eigen::JacobiSVD<cmat> svd(F);
        const auto &sv = svd.singularValues();
        CHECK(sv(0) / sv(sv.size() - 1) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(sv(0) == doctest::Approx(8.0));
    }
    SUBCASE("rows wrap modulo N")
    {
        const auto s = combiner_schedule(6, 4, 2, CombinerKind::dft);
        const cmat F = dft_matrix(6);
        CHECK((s[1].row(2) - F.row(0)).norm() < 1e-14);
        CHECK((s[1].row(3) - F.row(1)).norm() < 1e-14);
    }
    SUBCASE("entries are unit modulus, random schedules are reproducible")
    {
        const auto a = combiner_schedule(10, 3, 4, CombinerKind::random_phase, 77);
        const auto b = combiner_schedule(10, 3, 4, CombinerKind::random_phase, 77);
        const auto c = combiner_schedule(10, 3, 4, CombinerKind::random_phase, 78);
        for (std::size_t t = 0; t < a.size(); ++t) {
            CHECK((a[t] - b[t]).norm() == 0.0);
            CHECK((a[t].cwiseAbs() - rmat::Ones(3, 10)).norm() < 1e-12);
        }
        CHECK((a[0] - c[0]).norm() > 0.1);
    }
    SUBCASE("invalid counts")
    {
        CHECK_THROWS_AS(combiner_schedule(4, 5, 1, CombinerKind::dft), ParameterError);
        CHECK_THROWS_AS(combiner_schedule(4, 2, 0, CombinerKind::dft), ParameterError);
        CHECK_THROWS_AS(parse_combiner_kind("hadamard"), ParameterError);
    }
}
