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

// CSV tables and standalone SVG 1.1 figures. Everything here is a pure
// function of its input, so identical runs produce byte-identical files.

#include "wgqed/sweep.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace wgqed {

struct TraceSeries {
    std::vector<double> times;  // ns
    std::vector<double> p_qubit_a;
    std::vector<double> p_qubit_b;
    std::vector<double> p_mode;
};

TraceSeries trace_series(const Trajectory& traj);

// Header "time_ns,p_qubit_a,p_qubit_b,p_mode"; time in fixed notation with 12
// decimals, populations with 12 significant digits.
std::string trace_csv(const TraceSeries& trace);

// One column per axis, then fidelity, latency_ns, status. Failed cells leave
// fidelity and latency empty.
std::string sweep_csv(const SweepResult& result);

struct LineSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;  // NaN breaks the polyline
};

struct LinePlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    std::vector<LineSeries> series;  // at most kMaxSeries
    std::string description;         // emitted as <desc>
};

inline constexpr std::size_t kMaxSeries = 3;

struct Heatmap {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::string value_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> values;  // values[i * y.size() + j] at (x[i], y[j]); NaN = no data
    std::string description;
};

// Throws ValidationError when there are more than kMaxSeries series.
std::string render_line_plot(const LinePlot& plot);
std::string render_heatmap(const Heatmap& map);

std::string trace_svg(const TraceSeries& trace, std::string_view title,
                      std::string_view description = {});

// One axis: a line. Two axes with at most kMaxSeries values on the first: one
// line per first-axis value. Otherwise a heatmap over (axis 0, axis 1).
std::string sweep_svg(const SweepResult& result, PlotMetric metric, std::string_view title,
                      std::string_view description = {});

// Throws IoError naming the path.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace wgqed
