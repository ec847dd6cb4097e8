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


// Boundary between the C++ core and C callers: every exception is caught here
// and turned into a status code plus a thread-local message.

#include "wgqed/wgqed.h"

#include "wgqed/config.hpp"
#include "wgqed/error.hpp"
#include "wgqed/metrics.hpp"
#include "wgqed/output.hpp"
#include "wgqed/version.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <string>
#include <utility>
#include <vector>

struct wgqed_config {
    wgqed::RunConfig config;
};

struct wgqed_result {
    wgqed_result_kind kind = WGQED_RESULT_METRICS;
    wgqed::RunConfig config;
    std::string title;
    wgqed::TraceSeries trace;
    wgqed::SweepResult sweep;
    wgqed::TransferMetrics metrics;
};

namespace {

thread_local std::string last_error;

wgqed_status fail(wgqed_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

// Runs `body`, mapping the library's exception hierarchy onto status codes.
template <typename F>
wgqed_status guarded(F&& body) noexcept {
    try {
        last_error.clear();
        body();
        return WGQED_OK;
    } catch (const wgqed::ParseError& e) {
        return fail(WGQED_ERR_PARSE, e.what());
    } catch (const wgqed::NoPeakError& e) {
        return fail(WGQED_ERR_NO_PEAK, e.what());
    } catch (const wgqed::IntegrationError& e) {
        return fail(WGQED_ERR_INTEGRATION, e.what());
    } catch (const wgqed::ZeroDenominatorError& e) {
        return fail(WGQED_ERR_ZERO_DENOMINATOR, e.what());
    } catch (const wgqed::IoError& e) {
        return fail(WGQED_ERR_IO, e.what());
    } catch (const wgqed::ValidationError& e) {
        return fail(WGQED_ERR_VALIDATION, e.what());
    } catch (const std::bad_alloc&) {
        return fail(WGQED_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(WGQED_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(WGQED_ERR_INTERNAL, "unknown error");
    }
}

wgqed_status null_argument(const char* name) {
    return fail(WGQED_ERR_INVALID_ARGUMENT, std::string(name) + " must not be null");
}

wgqed::SystemParams to_params(const wgqed_params& p) {
    wgqed::SystemParams out;
    out.omega_q = p.omega_q;
    out.omega_w = p.omega_w;
    out.g_qw = p.g_qw;
    out.gamma = p.gamma;
    out.kappa = p.kappa;
    out.n_fock = p.n_fock;
    return out;
}

wgqed::IntegratorOptions to_options(const wgqed_integrator_options* o) {
    wgqed::IntegratorOptions out;
    if (o != nullptr) {
        out.rel_tol = o->rel_tol;
        out.abs_tol = o->abs_tol;
        out.max_step = o->max_step;
        out.initial_step = o->initial_step;
    }
    return out;
}

wgqed_transfer_metrics to_c(const wgqed::TransferMetrics& m) {
    return {m.fidelity, m.latency, m.peak_index, m.window_end};
}

std::string format_ghz(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g GHz", v);
    return buf;
}

std::string run_title(const wgqed::RunConfig& cfg) {
    if (cfg.mode == wgqed::RunMode::Preset) return wgqed::preset(cfg.preset).caption;
    if (cfg.is_sweep()) {
        return std::string("Transfer ") + wgqed::metric_name(cfg.metric) + " sweep";
    }
    return "Excitation transfer, omega_w = " + format_ghz(cfg.params.omega_w) +
           ", g_qw = " + format_ghz(cfg.params.g_qw);
}

std::string csv_text(const wgqed_result& r) {
    if (r.kind == WGQED_RESULT_TRACE) return wgqed::trace_csv(r.trace);
    if (r.kind == WGQED_RESULT_SWEEP) return wgqed::sweep_csv(r.sweep);
    return "fidelity,latency_ns,window_end_ns\r\n" + [&] {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\r\n", r.metrics.fidelity,
                      r.metrics.latency, r.metrics.window_end);
        return std::string(buf);
    }();
}

std::string svg_text(const wgqed_result& r) {
    const std::string desc = wgqed::render_config(r.config);
    if (r.kind == WGQED_RESULT_TRACE) return wgqed::trace_svg(r.trace, r.title, desc);
    if (r.kind == WGQED_RESULT_SWEEP) {
        return wgqed::sweep_svg(r.sweep, r.config.metric, r.title, desc);
    }
    throw wgqed::ValidationError("a metrics result has no figure");
}

}  // namespace

extern "C" {

const char* wgqed_version(void) { return wgqed::kVersion; }

const char* wgqed_status_string(wgqed_status status) {
    switch (status) {
        case WGQED_OK: return "ok";
        case WGQED_ERR_INVALID_ARGUMENT: return "invalid argument";
        case WGQED_ERR_PARSE: return "parse error";
        case WGQED_ERR_VALIDATION: return "validation error";
        case WGQED_ERR_NO_PEAK: return "no transfer peak";
        case WGQED_ERR_INTEGRATION: return "integration failure";
        case WGQED_ERR_ZERO_DENOMINATOR: return "zero denominator";
        case WGQED_ERR_IO: return "i/o error";
        case WGQED_ERR_BUFFER_TOO_SMALL: return "buffer too small";
        case WGQED_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* wgqed_last_error(void) { return last_error.c_str(); }

void wgqed_params_default(wgqed_params* params) {
    if (params == nullptr) return;
    const wgqed::SystemParams d;
    *params = {d.omega_q, d.omega_w, d.g_qw, d.gamma, d.kappa, d.n_fock};
}

void wgqed_integrator_default(wgqed_integrator_options* options) {
    if (options == nullptr) return;
    const wgqed::IntegratorOptions d;
    *options = {d.rel_tol, d.abs_tol, d.max_step, d.initial_step};
}

wgqed_status wgqed_simulate_transfer(const wgqed_params* params,
                                     const wgqed_integrator_options* options,
                                     wgqed_transfer_metrics* out) {
    if (params == nullptr) return null_argument("params");
    if (out == nullptr) return null_argument("out");
    return guarded([&] {
        *out = to_c(wgqed::simulate_transfer(to_params(*params), to_options(options)));
    });
}

wgqed_status wgqed_quality_factor(const wgqed_params* params, double* out) {
    if (params == nullptr) return null_argument("params");
    if (out == nullptr) return null_argument("out");
    return guarded([&] {
        const wgqed::SystemParams p = to_params(*params);
        p.validate();
        *out = wgqed::quality_factor(p);
    });
}

wgqed_status wgqed_effective_coupling(double g_qw, double delta, double gamma, double* out) {
    if (out == nullptr) return null_argument("out");
    return guarded([&] { *out = wgqed::effective_coupling(g_qw, delta, gamma); });
}

size_t wgqed_preset_count(void) { return wgqed::preset_names().size(); }

const char* wgqed_preset_name(size_t index) {
    const auto names = wgqed::preset_names();
    return index < names.size() ? names[index].data() : nullptr;
}

const char* wgqed_preset_caption(size_t index) {
    // Captions are built on demand; keep one copy per preset for the caller.
    static const std::vector<std::string> captions = [] {
        std::vector<std::string> out;
        for (const auto name : wgqed::preset_names()) out.push_back(wgqed::preset(name).caption);
        return out;
    }();
    return index < captions.size() ? captions[index].c_str() : nullptr;
}

wgqed_status wgqed_config_new(wgqed_mode mode, wgqed_config** out) {
    if (out == nullptr) return null_argument("out");
    *out = nullptr;
    if (mode == WGQED_MODE_PRESET) {
        return fail(WGQED_ERR_INVALID_ARGUMENT, "use wgqed_config_from_preset for presets");
    }
    if (mode != WGQED_MODE_TRACE && mode != WGQED_MODE_METRICS && mode != WGQED_MODE_SWEEP) {
        return fail(WGQED_ERR_INVALID_ARGUMENT, "unknown mode");
    }
    return guarded([&] {
        auto cfg = std::make_unique<wgqed_config>();
        cfg->config.mode = mode == WGQED_MODE_TRACE   ? wgqed::RunMode::Trace
                           : mode == WGQED_MODE_SWEEP ? wgqed::RunMode::Sweep
                                                      : wgqed::RunMode::Metrics;
        *out = cfg.release();
    });
}

wgqed_status wgqed_config_from_preset(const char* name, wgqed_config** out) {
    if (name == nullptr) return null_argument("name");
    if (out == nullptr) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        auto cfg = std::make_unique<wgqed_config>();
        wgqed::apply_preset(cfg->config, name);
        *out = cfg.release();
    });
}

wgqed_status wgqed_config_parse(const char* text, wgqed_config** out) {
    if (text == nullptr) return null_argument("text");
    if (out == nullptr) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        auto cfg = std::make_unique<wgqed_config>();
        cfg->config = wgqed::parse_config(text);
        *out = cfg.release();
    });
}

wgqed_status wgqed_config_set(wgqed_config* config, const char* key, const char* value) {
    if (config == nullptr) return null_argument("config");
    if (key == nullptr) return null_argument("key");
    if (value == nullptr) return null_argument("value");
    return guarded([&] { wgqed::set_config_value(config->config, key, value); });
}

wgqed_status wgqed_config_validate(const wgqed_config* config) {
    if (config == nullptr) return null_argument("config");
    return guarded([&] { config->config.validate(); });
}

wgqed_mode wgqed_config_mode(const wgqed_config* config) {
    if (config == nullptr) return WGQED_MODE_METRICS;
    switch (config->config.mode) {
        case wgqed::RunMode::Trace: return WGQED_MODE_TRACE;
        case wgqed::RunMode::Sweep: return WGQED_MODE_SWEEP;
        case wgqed::RunMode::Preset: return WGQED_MODE_PRESET;
        case wgqed::RunMode::Metrics: break;
    }
    return WGQED_MODE_METRICS;
}

wgqed_status wgqed_config_render(const wgqed_config* config, char* buffer, size_t capacity,
                                 size_t* required) {
    if (config == nullptr) return null_argument("config");
    if (buffer == nullptr && capacity > 0) return null_argument("buffer");
    std::string text;
    const wgqed_status st = guarded([&] { text = wgqed::render_config(config->config); });
    if (st != WGQED_OK) return st;
    if (required != nullptr) *required = text.size() + 1;
    if (capacity < text.size() + 1) {
        return fail(WGQED_ERR_BUFFER_TOO_SMALL,
                    "configuration needs " + std::to_string(text.size() + 1) + " bytes");
    }
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    return WGQED_OK;
}

void wgqed_config_free(wgqed_config* config) { delete config; }

wgqed_status wgqed_run(const wgqed_config* config, unsigned jobs, wgqed_result** out) {
    if (config == nullptr) return null_argument("config");
    if (out == nullptr) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        const wgqed::RunConfig& cfg = config->config;
        cfg.validate();
        auto r = std::make_unique<wgqed_result>();
        r->config = cfg;
        r->title = run_title(cfg);
        if (cfg.is_sweep()) {
            r->kind = WGQED_RESULT_SWEEP;
            r->sweep = wgqed::run_sweep(cfg.axes, cfg.params, cfg.integrator, cfg.window, jobs);
        } else if (cfg.is_trace()) {
            r->kind = WGQED_RESULT_TRACE;
            double t_end = cfg.t_end;
            if (t_end == 0.0) {
                if (!(cfg.params.g_qw > 0.0)) {
                    throw wgqed::ValidationError("window.t_end: required when g_qw = 0");
                }
                t_end = wgqed::initial_horizon(cfg.params);
            }
            const wgqed::SystemParams& p = cfg.params;
            const auto grid = wgqed::uniform_grid(t_end, cfg.window.points);
            r->trace = wgqed::trace_series(
                wgqed::evolve(wgqed::initial_state(p.space()), p, grid, cfg.integrator));
        } else {
            r->kind = WGQED_RESULT_METRICS;
            r->metrics = wgqed::simulate_transfer(cfg.params, cfg.integrator, cfg.window);
        }
        *out = r.release();
    });
}

wgqed_result_kind wgqed_result_get_kind(const wgqed_result* result) {
    return result == nullptr ? WGQED_RESULT_METRICS : result->kind;
}

size_t wgqed_result_rows(const wgqed_result* result) {
    if (result == nullptr) return 0;
    switch (result->kind) {
        case WGQED_RESULT_TRACE: return result->trace.times.size();
        case WGQED_RESULT_SWEEP: return result->sweep.cells.size();
        case WGQED_RESULT_METRICS: break;
    }
    return 1;
}

wgqed_status wgqed_result_metrics(const wgqed_result* result, wgqed_transfer_metrics* out) {
    if (result == nullptr) return null_argument("result");
    if (out == nullptr) return null_argument("out");
    if (result->kind != WGQED_RESULT_METRICS) {
        return fail(WGQED_ERR_INVALID_ARGUMENT, "result does not hold transfer metrics");
    }
    *out = to_c(result->metrics);
    return WGQED_OK;
}

wgqed_status wgqed_result_write_csv(const wgqed_result* result, const char* path) {
    if (result == nullptr) return null_argument("result");
    if (path == nullptr) return null_argument("path");
    return guarded([&] { wgqed::write_file(path, csv_text(*result)); });
}

wgqed_status wgqed_result_write_svg(const wgqed_result* result, const char* path) {
    if (result == nullptr) return null_argument("result");
    if (path == nullptr) return null_argument("path");
    if (result->kind == WGQED_RESULT_METRICS) {
        return fail(WGQED_ERR_INVALID_ARGUMENT, "a metrics result has no figure");
    }
    return guarded([&] { wgqed::write_file(path, svg_text(*result)); });
}

wgqed_status wgqed_result_write_outputs(const wgqed_result* result, const char* directory) {
    if (result == nullptr) return null_argument("result");
    return guarded([&] {
        const std::filesystem::path dir = directory ? directory : result->config.output.c_str();
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) {
            throw wgqed::IoError("cannot create directory '" + dir.string() + "': " +
                                 ec.message());
        }
        const std::string stem = result->config.label();
        if (result->config.formats.csv) wgqed::write_file(dir / (stem + ".csv"), csv_text(*result));
        if (result->config.formats.svg && result->kind != WGQED_RESULT_METRICS) {
            wgqed::write_file(dir / (stem + ".svg"), svg_text(*result));
        }
        wgqed::write_file(dir / (stem + ".cfg"), wgqed::render_config(result->config));
    });
}

void wgqed_result_free(wgqed_result* result) { delete result; }

}  // extern "C"
