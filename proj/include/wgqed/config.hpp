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

#pragma once

// Plain-text run configuration.
//
//   wgqed-config 1
//   # comments start with '#'
//   [run]
//   mode = sweep            # trace | metrics | sweep | preset
//   preset = fig3a          # mode = preset only
//   output = out
//   formats = csv,svg
//   metric = fidelity       # fidelity | latency, plotted quantity of sweeps
//   [params]
//   omega_q = 6 GHz         # frequencies and rates: GHz, or with a GHz/MHz suffix
//   g_qw = 50 MHz
//   n_fock = 2
//   [integrator]
//   rel_tol = 1e-9
//   [window]
//   points = 2001
//   t_end = 50 ns           # trace length; 0 picks the transfer horizon
//   [axis]                  # repeatable, one section per axis
//   parameter = gamma
//   scale = log
//   from = 1 MHz
//   to = 1 GHz
//   count = 25              # or: values = 0.001, 0.01, 0.1
//
// Unknown sections and keys are rejected. In preset mode the named preset is
// expanded first and every other section overrides it.

#include "wgqed/sweep.hpp"

#include <string>
#include <string_view>

namespace wgqed {

enum class RunMode { Trace, Metrics, Sweep, Preset };

const char* mode_name(RunMode m) noexcept;

struct OutputFormats {
    bool csv = true;
    bool svg = true;

    friend bool operator==(const OutputFormats&, const OutputFormats&) = default;
};

struct RunConfig {
    RunMode mode = RunMode::Metrics;
    std::string preset;
    SystemParams params;
    IntegratorOptions integrator;
    TransferWindow window;
    double t_end = 0.0;  // ns; 0 = automatic
    std::vector<SweepAxis> axes;
    PlotMetric metric = PlotMetric::Fidelity;
    std::string output = ".";
    OutputFormats formats;

    // Throws ValidationError naming the offending key.
    void validate() const;

    // Trace or sweep, after preset resolution.
    bool is_trace() const;
    bool is_sweep() const;
    // Output file stem: the preset name, or the mode name.
    std::string label() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline constexpr std::string_view kConfigHeader = "wgqed-config 1";

// Throws ParseError (with line and column) or ValidationError.
RunConfig parse_config(std::string_view text);

// Inverse of parse_config: parse_config(render_config(c)) == c.
std::string render_config(const RunConfig& config);

// Copies the preset's parameters, axes, window and options into `config`.
void apply_preset(RunConfig& config, std::string_view name);

// Sets one "section.key" entry with the same value syntax as the file format,
// e.g. set_config_value(c, "params.kappa", "1 MHz"). Does not re-validate.
void set_config_value(RunConfig& config, std::string_view qualified_key, std::string_view value);

// "1 MHz" -> 0.001, "0.05" -> 0.05, "2GHz" -> 2.
double parse_frequency(std::string_view text);

}  // namespace wgqed
