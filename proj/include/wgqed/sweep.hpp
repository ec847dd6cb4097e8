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

// Rectangular parameter sweeps over transfer metrics, and the named figure
// configurations (time traces and sweeps) shipped with the tool.

#include "wgqed/metrics.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wgqed {

// `Loss` drives kappa and gamma together.
enum class SweepParameter { OmegaW, Kappa, Gamma, GQw, Loss };
enum class AxisScale { Linear, Logarithmic };

const char* parameter_name(SweepParameter p) noexcept;
std::optional<SweepParameter> parse_parameter(std::string_view name) noexcept;
const char* scale_name(AxisScale s) noexcept;
std::optional<AxisScale> parse_scale(std::string_view name) noexcept;

void assign(SystemParams& params, SweepParameter which, double value);

struct SweepAxis {
    SweepParameter parameter = SweepParameter::GQw;
    std::vector<double> values;  // GHz, strictly increasing
    AxisScale scale = AxisScale::Linear;

    static SweepAxis linear(SweepParameter p, double first, double last, std::size_t count);
    static SweepAxis logarithmic(SweepParameter p, double first, double last, std::size_t count);

    // Non-empty, strictly increasing, and every value valid on `base`.
    void validate(const SystemParams& base) const;

    friend bool operator==(const SweepAxis&, const SweepAxis&) = default;
};

enum class CellStatus { Ok, NoPeak, IntegrationFailure };

const char* status_name(CellStatus s) noexcept;

struct SweepCell {
    std::vector<double> point;  // one value per axis
    CellStatus status = CellStatus::Ok;
    TransferMetrics metrics;    // meaningful only when status == Ok
    std::string message;
};

struct SweepResult {
    std::vector<SweepAxis> axes;
    SystemParams base;
    IntegratorOptions integrator;
    TransferWindow window;
    std::string version;
    std::vector<SweepCell> cells;  // row-major over axes (last axis fastest)

    const SweepCell& cell(std::size_t i, std::size_t j = 0) const;
};

inline constexpr std::size_t kMaxSweepCells = 1'000'000;

// Evaluates simulate_transfer at every grid point. Per-cell NoPeak and
// integration failures become markers. `jobs` = 0 uses every hardware thread;
// the result does not depend on `jobs`.
SweepResult run_sweep(const std::vector<SweepAxis>& axes, const SystemParams& base,
                      const IntegratorOptions& opts = {}, const TransferWindow& window = {},
                      unsigned jobs = 1);

enum class PresetKind { Trace, Sweep };
enum class PlotMetric { Fidelity, Latency };

const char* metric_name(PlotMetric m) noexcept;
std::optional<PlotMetric> parse_metric(std::string_view name) noexcept;

struct Preset {
    std::string name;
    std::string caption;
    PresetKind kind = PresetKind::Trace;
    SystemParams base;
    IntegratorOptions integrator;
    TransferWindow window;
    std::vector<SweepAxis> axes;  // empty for traces
    double t_end = 0.0;           // ns, traces only; samples come from window.points
    PlotMetric metric = PlotMetric::Fidelity;
};

std::span<const std::string_view> preset_names() noexcept;

// Throws ValidationError for an unknown name.
Preset preset(std::string_view name);

}  // namespace wgqed
