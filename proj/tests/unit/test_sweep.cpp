// Copyright 2026 The wgqed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "wgqed/error.hpp"
#include "wgqed/sweep.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace wgqed;

TEST_CASE("axis construction") {
    const SweepAxis lin = SweepAxis::linear(SweepParameter::GQw, 0.05, 1.0, 20);
    REQUIRE(lin.values.size() == 20);
    CHECK(lin.values.front() == 0.05);
    CHECK(lin.values.back() == 1.0);
    CHECK(lin.values[1] == doctest::Approx(0.1));

    const SweepAxis log = SweepAxis::logarithmic(SweepParameter::Gamma, 1e-3, 1.0, 4);
    REQUIRE(log.values.size() == 4);
    CHECK(log.values.front() == 1e-3);
    CHECK(log.values[1] == doctest::Approx(1e-2));
    CHECK(log.values.back() == 1.0);
    CHECK(log.scale == AxisScale::Logarithmic);

    CHECK_THROWS_AS(SweepAxis::logarithmic(SweepParameter::Gamma, 0.0, 1.0, 4), ValidationError);
}

TEST_CASE("axis validation") {
    const SystemParams base;
    SweepAxis a{SweepParameter::Kappa, {}, AxisScale::Linear};
    CHECK_THROWS_AS(a.validate(base), ValidationError);
    a.values = {0.1, 0.1};
    CHECK_THROWS_AS(a.validate(base), ValidationError);
    a.values = {-0.1, 0.1};
    CHECK_THROWS_AS(a.validate(base), ValidationError);
    a.values = {0.0, 0.1};
    CHECK_NOTHROW(a.validate(base));
    SweepAxis g{SweepParameter::GQw, {0.0, 0.1}, AxisScale::Linear};
    CHECK_THROWS_AS(g.validate(base), ValidationError);
}

TEST_CASE("parameter names round trip") {
    for (auto p : {SweepParameter::OmegaW, SweepParameter::Kappa, SweepParameter::Gamma,
                   SweepParameter::GQw, SweepParameter::Loss}) {
        CHECK(parse_parameter(parameter_name(p)) == p);
    }
    CHECK_FALSE(parse_parameter("omega_x").has_value());
    SystemParams p;
    assign(p, SweepParameter::Loss, 0.01);
    CHECK(p.kappa == 0.01);
    CHECK(p.gamma == 0.01);
}

TEST_CASE("single-cell sweep") {
    const SweepResult r =
        run_sweep({SweepAxis{SweepParameter::GQw, {0.05}, AxisScale::Linear}}, SystemParams{});
    REQUIRE(r.cells.size() == 1);
    CHECK(r.cells[0].status == CellStatus::Ok);
    CHECK(r.cells[0].metrics.fidelity == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("latency scales as 1 / g") {
    const SweepResult r = run_sweep({SweepAxis::linear(SweepParameter::GQw, 0.05, 1.0, 20)}, SystemParams{});
    double worst = 0.0;
    for (const SweepCell& c : r.cells) {
        REQUIRE(c.status == CellStatus::Ok);
        const double exact = std::numbers::pi / (std::sqrt(2.0) * kTwoPi * c.point[0]);
        worst = std::max(worst, std::abs(c.metrics.latency - exact) / exact);
    }
    CHECK(worst < 1e-3);
}

TEST_CASE("qubit decay curves are monotone and ordered by coupling") {
    const SweepAxis g{SweepParameter::GQw, {0.05, 0.1}, AxisScale::Linear};
    const SweepAxis gamma = SweepAxis::logarithmic(SweepParameter::Gamma, 1e-3, 1.0, 7);
    const SweepResult r = run_sweep({g, gamma}, SystemParams{});
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < gamma.values.size(); ++j) {
            REQUIRE(r.cell(i, j).status == CellStatus::Ok);
            if (j > 0) CHECK(r.cell(i, j).metrics.fidelity <= r.cell(i, j - 1).metrics.fidelity + 1e-9);
        }
    }
    for (std::size_t j = 0; j < gamma.values.size(); ++j) {
        CHECK(r.cell(1, j).metrics.fidelity >= r.cell(0, j).metrics.fidelity - 1e-9);
    }
}

TEST_CASE("overdamped cells become markers") {
    SystemParams base;
    const SweepResult r = run_sweep({SweepAxis{SweepParameter::Kappa, {0.001, 1.0}, AxisScale::Linear}}, base);
    CHECK(r.cells[0].status == CellStatus::Ok);
    CHECK(r.cells[1].status == CellStatus::NoPeak);
    CHECK_FALSE(r.cells[1].message.empty());
}

TEST_CASE("results do not depend on the worker count") {
    const std::vector<SweepAxis> axes = {
        SweepAxis{SweepParameter::GQw, {0.1, 0.2}, AxisScale::Linear},
        SweepAxis::logarithmic(SweepParameter::Kappa, 1e-3, 1e-1, 5)};
    const SweepResult one = run_sweep(axes, SystemParams{}, {}, {}, 1);
    const SweepResult many = run_sweep(axes, SystemParams{}, {}, {}, 4);
    REQUIRE(one.cells.size() == many.cells.size());
    for (std::size_t k = 0; k < one.cells.size(); ++k) {
        CHECK(one.cells[k].point == many.cells[k].point);
        CHECK(one.cells[k].status == many.cells[k].status);
        CHECK(one.cells[k].metrics.fidelity == many.cells[k].metrics.fidelity);
        CHECK(one.cells[k].metrics.latency == many.cells[k].metrics.latency);
    }
    // Row-major: last axis fastest.
    CHECK(one.cells[1].point == std::vector<double>{0.1, axes[1].values[1]});
}

TEST_CASE("sweep shape validation") {
    const SweepAxis g{SweepParameter::GQw, {0.1}, AxisScale::Linear};
    CHECK_THROWS_AS(run_sweep({}, SystemParams{}), ValidationError);
    CHECK_THROWS_AS(run_sweep({g, g}, SystemParams{}), ValidationError);
    CHECK_THROWS_AS(run_sweep({g, g, g}, SystemParams{}), ValidationError);
    SystemParams lossless_uncoupled;
    lossless_uncoupled.g_qw = 0.0;
    CHECK_THROWS_AS(run_sweep({SweepAxis{SweepParameter::Kappa, {0.1}, AxisScale::Linear}},
                              lossless_uncoupled),
                    ValidationError);
}

TEST_CASE("presets") {
    CHECK(preset_names().size() == 12);
    const Preset a = preset("fig2a");
    CHECK(a.kind == PresetKind::Trace);
    CHECK(a.axes.empty());
    CHECK(a.base.omega_q == 6.0);

    const Preset c = preset("fig2c");
    CHECK(c.base.kappa == 0.001);
    CHECK(c.base.gamma == 0.001);
    CHECK(c.base.g_qw == 0.1);
    CHECK(c.base.omega_w == 6.0);

    const Preset f = preset("fig5c");
    CHECK(f.kind == PresetKind::Sweep);
    CHECK(f.base.omega_w == 50.0);
    REQUIRE(f.axes.size() == 2);
    CHECK(f.axes[0].parameter == SweepParameter::Loss);
    CHECK(f.axes[1].parameter == SweepParameter::GQw);

    for (const auto name : preset_names()) {
        const Preset p = preset(name);
        CHECK(p.name == name);
        for (const SweepAxis& axis : p.axes) CHECK_NOTHROW(axis.validate(p.base));
    }
    CHECK_THROWS_AS(preset("fig9"), ValidationError);
}
