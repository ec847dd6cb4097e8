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

#include "wgqed/sweep.hpp"

#include "wgqed/error.hpp"
#include "wgqed/version.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace wgqed {

const char* parameter_name(SweepParameter p) noexcept {
    switch (p) {
        case SweepParameter::OmegaW: return "omega_w";
        case SweepParameter::Kappa: return "kappa";
        case SweepParameter::Gamma: return "gamma";
        case SweepParameter::GQw: return "g_qw";
        case SweepParameter::Loss: return "loss";
    }
    return "?";
}

std::optional<SweepParameter> parse_parameter(std::string_view name) noexcept {
    for (auto p : {SweepParameter::OmegaW, SweepParameter::Kappa, SweepParameter::Gamma,
                   SweepParameter::GQw, SweepParameter::Loss}) {
        if (name == parameter_name(p)) return p;
    }
    return std::nullopt;
}

const char* scale_name(AxisScale s) noexcept {
    return s == AxisScale::Linear ? "linear" : "log";
}

std::optional<AxisScale> parse_scale(std::string_view name) noexcept {
    if (name == "linear") return AxisScale::Linear;
    if (name == "log") return AxisScale::Logarithmic;
    return std::nullopt;
}

void assign(SystemParams& params, SweepParameter which, double value) {
    switch (which) {
        case SweepParameter::OmegaW: params.omega_w = value; break;
        case SweepParameter::Kappa: params.kappa = value; break;
        case SweepParameter::Gamma: params.gamma = value; break;
        case SweepParameter::GQw: params.g_qw = value; break;
        case SweepParameter::Loss:
            params.kappa = value;
            params.gamma = value;
            break;
    }
}

SweepAxis SweepAxis::linear(SweepParameter p, double first, double last, std::size_t count) {
    SweepAxis axis{p, {}, AxisScale::Linear};
    if (count == 0) return axis;
    axis.values.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double frac = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        axis.values[i] = first + (last - first) * frac;
    }
    if (count > 1) axis.values.back() = last;
    return axis;
}

SweepAxis SweepAxis::logarithmic(SweepParameter p, double first, double last, std::size_t count) {
    if (!(first > 0.0) || !(last > 0.0)) {
        throw ValidationError(std::string("logarithmic axis over ") + parameter_name(p) +
                              " needs positive end points");
    }
    SweepAxis axis{p, {}, AxisScale::Logarithmic};
    if (count == 0) return axis;
    axis.values.resize(count);
    const double lo = std::log(first), hi = std::log(last);
    for (std::size_t i = 0; i < count; ++i) {
        const double frac = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        axis.values[i] = std::exp(lo + (hi - lo) * frac);
    }
    axis.values.front() = first;
    if (count > 1) axis.values.back() = last;
    return axis;
}

void SweepAxis::validate(const SystemParams& base) const {
    const std::string name = parameter_name(parameter);
    if (values.empty()) {
        throw ValidationError("sweep axis " + name + " is empty");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0 && !(values[i] > values[i - 1])) {
            throw ValidationError("sweep axis " + name + " must be strictly increasing");
        }
        SystemParams p = base;
        assign(p, parameter, values[i]);
        p.validate();
        if (parameter == SweepParameter::GQw && !(values[i] > 0.0)) {
            throw ValidationError("sweep axis g_qw must be > 0");
        }
    }
}

const char* status_name(CellStatus s) noexcept {
    switch (s) {
        case CellStatus::Ok: return "ok";
        case CellStatus::NoPeak: return "no_peak";
        case CellStatus::IntegrationFailure: return "integration_failure";
    }
    return "?";
}

const SweepCell& SweepResult::cell(std::size_t i, std::size_t j) const {
    const std::size_t inner = axes.size() > 1 ? axes[1].values.size() : 1;
    return cells.at(i * inner + j);
}

SweepResult run_sweep(const std::vector<SweepAxis>& axes, const SystemParams& base,
                      const IntegratorOptions& opts, const TransferWindow& window,
                      unsigned jobs) {
    if (axes.empty() || axes.size() > 2) {
        throw ValidationError("a sweep needs one or two axes");
    }
    base.validate();
    opts.validate();
    window.validate();
    std::size_t total = 1;
    for (const SweepAxis& axis : axes) {
        axis.validate(base);
        if (axis.values.size() > kMaxSweepCells / total) {
            throw ValidationError("sweep grid exceeds " + std::to_string(kMaxSweepCells) + " cells");
        }
        total *= axis.values.size();
    }
    if (axes.size() == 2 && axes[0].parameter == axes[1].parameter) {
        throw ValidationError("sweep axes must drive different parameters");
    }

    SweepResult result;
    result.axes = axes;
    result.base = base;
    result.integrator = opts;
    result.window = window;
    result.version = std::string("wgqed ") + kVersion;
    result.cells.resize(total);

    const std::size_t inner = axes.size() > 1 ? axes[1].values.size() : 1;
    auto evaluate = [&](std::size_t index) {
        SweepCell& cell = result.cells[index];
        SystemParams p = base;
        cell.point.push_back(axes[0].values[index / inner]);
        if (axes.size() > 1) cell.point.push_back(axes[1].values[index % inner]);
        for (std::size_t a = 0; a < axes.size(); ++a) {
            assign(p, axes[a].parameter, cell.point[a]);
        }
        try {
            cell.metrics = simulate_transfer(p, opts, window);
            cell.status = CellStatus::Ok;
        } catch (const NoPeakError& e) {
            cell.status = CellStatus::NoPeak;
            cell.message = e.what();
        } catch (const IntegrationError& e) {
            cell.status = CellStatus::IntegrationFailure;
            cell.message = e.what();
        }
    };

    unsigned workers = jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : jobs;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
    if (workers <= 1) {
        for (std::size_t i = 0; i < total; ++i) evaluate(i);
        return result;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < total; i = next++) {
                try {
                    evaluate(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = total;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return result;
}

const char* metric_name(PlotMetric m) noexcept {
    return m == PlotMetric::Fidelity ? "fidelity" : "latency";
}

std::optional<PlotMetric> parse_metric(std::string_view name) noexcept {
    if (name == "fidelity") return PlotMetric::Fidelity;
    if (name == "latency") return PlotMetric::Latency;
    return std::nullopt;
}

namespace {

constexpr std::array<std::string_view, 12> kPresetNames = {
    "fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c",
    "fig4a", "fig4b", "fig4c", "fig5a", "fig5b", "fig5c"};

constexpr double kMHz = 1e-3;
constexpr std::size_t kLossPoints = 25;
constexpr std::size_t kCouplingPoints = 20;
constexpr double kDetunedHorizonCap = 1e4;  // ns

SystemParams resonant(double g, double gamma, double kappa) {
    SystemParams p;
    p.omega_q = 6.0;
    p.omega_w = 6.0;
    p.g_qw = g;
    p.gamma = gamma;
    p.kappa = kappa;
    return p;
}

Preset trace(std::string_view name, std::string caption, SystemParams base, double t_end) {
    Preset p;
    p.name = name;
    p.caption = std::move(caption);
    p.kind = PresetKind::Trace;
    p.base = base;
    p.t_end = t_end;
    return p;
}

Preset sweep(std::string_view name, std::string caption, SystemParams base,
             std::vector<SweepAxis> axes, PlotMetric metric) {
    Preset p;
    p.name = name;
    p.caption = std::move(caption);
    p.kind = PresetKind::Sweep;
    p.base = base;
    p.axes = std::move(axes);
    p.metric = metric;
    return p;
}

// Weak coupling at large detuning has dispersive exchange times of several
// microseconds; bound the window so such cells end as no-peak markers.
void detuned_sweep_settings(Preset& p) {
    p.window.max_horizon = kDetunedHorizonCap;
}

SweepAxis coupling_series() {
    return SweepAxis{SweepParameter::GQw, {0.05, 0.1, 0.2}, AxisScale::Linear};
}

}  // namespace

std::span<const std::string_view> preset_names() noexcept { return kPresetNames; }

Preset preset(std::string_view name) {
    const double mhz = kMHz;
    if (name == "fig2a") {
        return trace(name, "Resonant, lossless, g_qw = 0.05 GHz", resonant(0.05, 0, 0), 50.0);
    }
    if (name == "fig2b") {
        return trace(name, "Resonant, lossless, g_qw = 0.1 GHz", resonant(0.1, 0, 0), 50.0);
    }
    if (name == "fig2c") {
        return trace(name, "Resonant, kappa = gamma = 1 MHz, g_qw = 0.1 GHz",
                     resonant(0.1, mhz, mhz), 100.0);
    }
    if (name == "fig3a") {
        return sweep(name, "Fidelity vs waveguide decay rate (gamma = 0)", resonant(0.05, 0, 0),
                     {coupling_series(),
                      SweepAxis::logarithmic(SweepParameter::Kappa, mhz, 1.0, kLossPoints)},
                     PlotMetric::Fidelity);
    }
    if (name == "fig3b") {
        return sweep(name, "Fidelity vs qubit decay rate (kappa = 0)", resonant(0.05, 0, 0),
                     {coupling_series(),
                      SweepAxis::logarithmic(SweepParameter::Gamma, mhz, 1.0, kLossPoints)},
                     PlotMetric::Fidelity);
    }
    if (name == "fig3c") {
        return sweep(name, "Latency vs coupling strength (kappa = gamma = 0)",
                     resonant(0.05, 0, 0),
                     {SweepAxis::linear(SweepParameter::GQw, 0.05, 1.0, kCouplingPoints)},
                     PlotMetric::Latency);
    }
    if (name == "fig4a" || name == "fig4b") {
        const double omega_w = name == "fig4a" ? 7.0 : 8.0;
        SystemParams base = resonant(0.1, mhz, mhz);
        base.omega_w = omega_w;
        return trace(name,
                     "Detuned, kappa = gamma = 1 MHz, g_qw = 0.1 GHz, omega_w = " +
                         std::string(name == "fig4a" ? "7" : "8") + " GHz",
                     base, name == "fig4a" ? 100.0 : 200.0);
    }
    if (name == "fig4c") {
        Preset p = sweep(
            name, "Latency vs coupling strength for three detunings (kappa = gamma = 1 MHz)",
            resonant(0.1, mhz, mhz),
            {SweepAxis{SweepParameter::OmegaW, {7.0, 8.0, 10.0}, AxisScale::Linear},
             SweepAxis::linear(SweepParameter::GQw, 0.05, 1.0, kCouplingPoints)},
            PlotMetric::Latency);
        detuned_sweep_settings(p);
        return p;
    }
    if (name == "fig5a" || name == "fig5b" || name == "fig5c") {
        const double omega_w = name == "fig5a" ? 10.0 : name == "fig5b" ? 20.0 : 50.0;
        SystemParams base = resonant(0.1, 0, 0);
        base.omega_w = omega_w;
        Preset p = sweep(name,
                         "Fidelity over losses (kappa = gamma) and coupling, omega_w = " +
                             std::to_string(static_cast<int>(omega_w)) + " GHz",
                         base,
                         {SweepAxis::logarithmic(SweepParameter::Loss, mhz, 1.0, kLossPoints),
                          SweepAxis::logarithmic(SweepParameter::GQw, 0.05, 1.0, kCouplingPoints)},
                         PlotMetric::Fidelity);
        detuned_sweep_settings(p);
        return p;
    }
    throw ValidationError("unknown preset '" + std::string(name) + "'");
}

}  // namespace wgqed
