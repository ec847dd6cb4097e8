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


#include "wgqed/config.hpp"
#include "wgqed/error.hpp"

#include <doctest.h>

#include <random>
#include <string>

using namespace wgqed;

namespace {

const std::string kHeader = std::string(kConfigHeader) + "\n";

int parse_error_line(const std::string& text) {
    try {
        (void)parse_config(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

std::string validation_message(const std::string& text) {
    try {
        (void)parse_config(text);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("minimal preset document") {
    const RunConfig c = parse_config(kHeader + "[run]\nmode = preset\npreset = fig2a\n");
    CHECK(c.mode == RunMode::Preset);
    CHECK(c.preset == "fig2a");
    CHECK(c.params.omega_q == 6.0);
    CHECK(c.params.n_fock == 2);
    CHECK(c.integrator == IntegratorOptions{});
    CHECK(c.is_trace());
    CHECK(c.label() == "fig2a");
}

TEST_CASE("units are normalized to GHz") {
    const RunConfig c = parse_config(kHeader +
                                     "[params]\n"
                                     "kappa = 1 MHz\n"
                                     "gamma = 0.002\n"
                                     "omega_w = 7GHz\n"
                                     "g_qw = 100 MHz   # trailing comment\n");
    CHECK(c.params.kappa == doctest::Approx(0.001).epsilon(1e-15));
    CHECK(c.params.gamma == 0.002);
    CHECK(c.params.omega_w == 7.0);
    CHECK(c.params.g_qw == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(parse_frequency("2.5 MHz") == doctest::Approx(0.0025));
    CHECK_THROWS_AS(parse_frequency("2 kHz"), ValidationError);
}

TEST_CASE("negative gamma names the key") {
    const std::string msg = validation_message(kHeader + "[params]\ngamma = -0.1\n");
    CHECK(msg.find("gamma") != std::string::npos);
}

TEST_CASE("strict schema") {
    CHECK(parse_error_line(kHeader + "[params]\nkapa = 1 MHz\n") == 3);
    CHECK(parse_error_line(kHeader + "[param]\nkappa = 1\n") == 2);
    CHECK(parse_error_line(kHeader + "[params]\nkappa = 1\nkappa = 2\n") == 4);
    CHECK(parse_error_line(kHeader + "[params]\nkappa 1\n") == 3);
    CHECK(parse_error_line(kHeader + "[params\n") == 2);
    CHECK(parse_error_line(kHeader + "[params]\nkappa = one\n") == 3);
    CHECK(parse_error_line("[params]\nkappa = 1\n") == 1);
    CHECK(parse_error_line("wgqed-config 2\n") == 1);
}

TEST_CASE("parse errors carry a column") {
    try {
        (void)parse_config(kHeader + "[params]\n  kappa = 1 parsec\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() > 1);
    }
}

TEST_CASE("sweep axes") {
    const RunConfig c = parse_config(kHeader +
                                     "[run]\nmode = sweep\n"
                                     "[axis]\nparameter = gamma\nscale = log\nfrom = 1 MHz\nto = 1 GHz\ncount = 4\n"
                                     "[axis]\nparameter = g_qw\nvalues = 0.05, 0.1\n");
    REQUIRE(c.axes.size() == 2);
    CHECK(c.axes[0].parameter == SweepParameter::Gamma);
    CHECK(c.axes[0].values.size() == 4);
    CHECK(c.axes[0].values.front() == doctest::Approx(0.001));
    CHECK(c.axes[1].values == std::vector<double>{0.05, 0.1});
    CHECK(c.is_sweep());

    CHECK_THROWS_AS(parse_config(kHeader + "[run]\nmode = sweep\n"), ValidationError);
    CHECK_THROWS_AS(parse_config(kHeader + "[run]\nmode = sweep\n[axis]\nparameter = kappa\nvalues =\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config(kHeader + "[run]\nmode = sweep\n[axis]\nparameter = kappa\nvalues = 0.2, 0.1\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config(kHeader + "[run]\nmode = trace\n[axis]\nparameter = kappa\nvalues = 0.1\n"),
                    ValidationError);
}

TEST_CASE("preset sections can be overridden") {
    const RunConfig c = parse_config(kHeader + "[run]\nmode = preset\npreset = fig2c\n[params]\ng_qw = 0.2\n");
    CHECK(c.params.g_qw == 0.2);
    CHECK(c.params.kappa == 0.001);
    CHECK_THROWS_AS(parse_config(kHeader + "[run]\nmode = preset\npreset = nope\n"), ValidationError);
    CHECK_THROWS_AS(parse_config(kHeader + "[run]\nmode = metrics\npreset = fig2a\n"), ValidationError);
}

TEST_CASE("metrics mode needs a coupling") {
    CHECK_THROWS_AS(parse_config(kHeader + "[params]\ng_qw = 0\n"), ValidationError);
    CHECK_NOTHROW(parse_config(kHeader + "[run]\nmode = trace\n[params]\ng_qw = 0\n[window]\nt_end = 5 ns\n"));
}

TEST_CASE("set_config_value") {
    RunConfig c;
    set_config_value(c, "params.kappa", "1 MHz");
    CHECK(c.params.kappa == doctest::Approx(0.001));
    set_config_value(c, "run.formats", "svg");
    CHECK_FALSE(c.formats.csv);
    CHECK(c.formats.svg);
    CHECK_THROWS_AS(set_config_value(c, "kappa", "1"), ValidationError);
    CHECK_THROWS_AS(set_config_value(c, "params.kapa", "1"), ValidationError);
    CHECK_THROWS_AS(set_config_value(c, "run.formats", "png"), ValidationError);
}

TEST_CASE("render and parse round trip") {
    for (const auto name : preset_names()) {
        RunConfig c;
        apply_preset(c, name);
        CHECK(parse_config(render_config(c)) == c);
    }

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, 2);
    for (int draw = 0; draw < 200; ++draw) {
        RunConfig c;
        c.mode = std::array{RunMode::Trace, RunMode::Metrics, RunMode::Sweep}[pick(rng)];
        c.params.omega_q = 4.0 + 10.0 * u(rng);
        c.params.omega_w = 4.0 + 50.0 * u(rng);
        c.params.g_qw = 0.01 + u(rng);
        c.params.gamma = u(rng) * u(rng);
        c.params.kappa = u(rng) < 0.3 ? 0.0 : u(rng);
        c.params.n_fock = 2 + draw % 4;
        c.integrator.rel_tol = std::pow(10.0, -12.0 + 6.0 * u(rng));
        c.integrator.max_step = u(rng) < 0.5 ? std::numeric_limits<double>::infinity() : 0.1 + u(rng);
        c.window.points = 3 + static_cast<std::size_t>(5000 * u(rng));
        c.window.max_horizon = u(rng) < 0.5 ? std::numeric_limits<double>::infinity() : 1e3 * u(rng) + 1.0;
        c.t_end = c.mode == RunMode::Trace ? 100.0 * u(rng) : 0.0;
        c.output = "out/run_" + std::to_string(draw);
        c.formats.csv = draw % 3 != 0;
        c.metric = draw % 2 ? PlotMetric::Latency : PlotMetric::Fidelity;
        if (c.mode == RunMode::Sweep) {
            c.axes.push_back(SweepAxis::logarithmic(SweepParameter::Kappa, 1e-3 * (1.0 + u(rng)), 1.0, 7));
            if (draw % 2) c.axes.push_back(SweepAxis::linear(SweepParameter::GQw, 0.05, 0.05 + u(rng), 5));
        }
        REQUIRE_NOTHROW(c.validate());
        const RunConfig back = parse_config(render_config(c));
        CHECK(back == c);
        CHECK(render_config(back) == render_config(c));
    }
}
