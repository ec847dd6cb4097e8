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


// wgqed command-line front end. Talks to the library only through the C
// interface in wgqed/wgqed.h.
//
// Exit codes: 0 success, 1 usage / configuration / I/O error, 2 numerical
// failure (no transfer peak, integration breakdown).

#include "wgqed/wgqed.h"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUser = 1;
constexpr int kExitNumerical = 2;

bool use_color() {
    const char* no_color = std::getenv("NO_COLOR");
    if (no_color != nullptr && *no_color != '\0') return false;
    return isatty(STDERR_FILENO) != 0;
}

void diagnose(const std::string& message) {
    if (use_color()) {
        std::cerr << "\033[1;31merror:\033[0m " << message << '\n';
    } else {
        std::cerr << "error: " << message << '\n';
    }
}

int exit_code(wgqed_status st) {
    switch (st) {
        case WGQED_OK: return kExitOk;
        case WGQED_ERR_NO_PEAK:
        case WGQED_ERR_INTEGRATION:
        case WGQED_ERR_ZERO_DENOMINATOR: return kExitNumerical;
        default: return kExitUser;
    }
}

// Reports a failed call and returns the matching exit code.
int report(wgqed_status st) {
    std::string msg = wgqed_last_error();
    if (msg.empty()) msg = wgqed_status_string(st);
    diagnose(msg);
    return exit_code(st);
}

struct ConfigDeleter {
    void operator()(wgqed_config* c) const { wgqed_config_free(c); }
};
struct ResultDeleter {
    void operator()(wgqed_result* r) const { wgqed_result_free(r); }
};
using ConfigPtr = std::unique_ptr<wgqed_config, ConfigDeleter>;
using ResultPtr = std::unique_ptr<wgqed_result, ResultDeleter>;

struct Options {
    std::string config_path;
    std::string preset;
    std::optional<std::string> out;
    unsigned jobs = 0;
    std::optional<std::string> formats;
    // config key -> command-line value
    std::vector<std::pair<const char*, std::optional<std::string>>> overrides = {
        {"params.omega_w", {}}, {"params.omega_q", {}}, {"params.g_qw", {}},
        {"params.gamma", {}},   {"params.kappa", {}},   {"params.n_fock", {}},
        {"window.t_end", {}},   {"window.points", {}},
    };
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.config_path, "Run configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--jobs", o.jobs, "Worker threads for sweeps (0 = all cores)");
    cmd->add_option("--formats", o.formats, "Output formats, e.g. csv,svg");
    const char* flags[] = {"--omega-w", "--omega-q", "--g-qw",  "--gamma",
                           "--kappa",   "--n-fock",  "--t-end", "--points"};
    const char* help[] = {"Waveguide mode frequency (GHz, or with MHz/GHz suffix)",
                          "Qubit frequency",
                          "Qubit-waveguide coupling",
                          "Qubit decay rate",
                          "Waveguide decay rate",
                          "Photon-number cutoff of the mode (2-5)",
                          "Trace length in ns (0 = transfer horizon)",
                          "Samples per trajectory"};
    for (std::size_t i = 0; i < o.overrides.size(); ++i) {
        cmd->add_option(flags[i], o.overrides[i].second, help[i]);
    }
}

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Builds the configuration for `mode` from the file (if any), the preset name
// and the command-line overrides.
wgqed_status build_config(wgqed_mode mode, const Options& o, ConfigPtr& out) {
    wgqed_config* raw = nullptr;
    wgqed_status st = WGQED_OK;
    if (!o.config_path.empty()) {
        const auto text = read_file(o.config_path);
        if (!text) {
            diagnose("cannot read '" + o.config_path + "'");
            return WGQED_ERR_IO;
        }
        st = wgqed_config_parse(text->c_str(), &raw);
        if (st != WGQED_OK) return st;
        out.reset(raw);
        if (wgqed_config_mode(raw) != mode) {
            diagnose("'" + o.config_path + "' does not describe a run of this subcommand");
            return WGQED_ERR_VALIDATION;
        }
        if (mode == WGQED_MODE_PRESET && !o.preset.empty()) {
            st = wgqed_config_set(raw, "run.preset", o.preset.c_str());
            if (st != WGQED_OK) return st;
        }
    } else if (mode == WGQED_MODE_PRESET) {
        if (o.preset.empty()) {
            diagnose("preset: a preset name or --config is required");
            return WGQED_ERR_VALIDATION;
        }
        st = wgqed_config_from_preset(o.preset.c_str(), &raw);
        if (st != WGQED_OK) return st;
        out.reset(raw);
    } else {
        st = wgqed_config_new(mode, &raw);
        if (st != WGQED_OK) return st;
        out.reset(raw);
    }

    if (o.out) st = wgqed_config_set(raw, "run.output", o.out->c_str());
    if (st == WGQED_OK && o.formats) st = wgqed_config_set(raw, "run.formats", o.formats->c_str());
    for (const auto& [key, value] : o.overrides) {
        if (st != WGQED_OK) break;
        if (value) st = wgqed_config_set(raw, key, value->c_str());
    }
    if (st == WGQED_OK) st = wgqed_config_validate(raw);
    return st;
}

int run_metrics(const Options& o) {
    ConfigPtr cfg;
    wgqed_status st = build_config(WGQED_MODE_METRICS, o, cfg);
    if (st != WGQED_OK) return st == WGQED_ERR_IO ? kExitUser : report(st);
    wgqed_result* raw = nullptr;
    st = wgqed_run(cfg.get(), o.jobs, &raw);
    if (st != WGQED_OK) return report(st);
    ResultPtr result(raw);
    wgqed_transfer_metrics m{};
    st = wgqed_result_metrics(result.get(), &m);
    if (st != WGQED_OK) return report(st);
    std::printf("fidelity=%.6f\nlatency_ns=%.6f\n", m.fidelity, m.latency_ns);
    if (o.out) {
        st = wgqed_result_write_outputs(result.get(), nullptr);
        if (st != WGQED_OK) return report(st);
    }
    return kExitOk;
}

int run_files(wgqed_mode mode, const Options& o) {
    ConfigPtr cfg;
    wgqed_status st = build_config(mode, o, cfg);
    if (st != WGQED_OK) return st == WGQED_ERR_IO ? kExitUser : report(st);
    wgqed_result* raw = nullptr;
    st = wgqed_run(cfg.get(), o.jobs, &raw);
    if (st != WGQED_OK) return report(st);
    ResultPtr result(raw);
    st = wgqed_result_write_outputs(result.get(), nullptr);
    if (st != WGQED_OK) return report(st);
    return kExitOk;
}

int list_presets() {
    for (std::size_t i = 0; i < wgqed_preset_count(); ++i) {
        std::printf("%-6s  %s\n", wgqed_preset_name(i), wgqed_preset_caption(i));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Excitation transfer between two qubits through a waveguide mode", "wgqed"};
    app.set_version_flag("--version", wgqed_version());
    app.require_subcommand(1);

    Options opts;
    auto* trace = app.add_subcommand("trace", "Integrate one trajectory and write populations");
    auto* metrics = app.add_subcommand("metrics", "Print transfer fidelity and latency");
    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep described by --config");
    auto* preset = app.add_subcommand("preset", "Reproduce a named figure preset");
    auto* list = app.add_subcommand("list-presets", "List the figure presets");
    for (auto* cmd : {trace, metrics, sweep, preset}) add_common(cmd, opts);
    preset->add_option("name", opts.preset, "Preset name (see list-presets)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        const bool unknown = argc > 1 && argv[1][0] != '-' && app.get_subcommand_no_throw(argv[1]) == nullptr;
        diagnose(unknown ? "unknown subcommand '" + std::string(argv[1]) + "'" : std::string(e.what()));
        std::cerr << app.help();
        return kExitUser;
    }

    if (*list) return list_presets();
    if (*metrics) return run_metrics(opts);
    if (*trace) return run_files(WGQED_MODE_TRACE, opts);
    if (*sweep) return run_files(WGQED_MODE_SWEEP, opts);
    return run_files(WGQED_MODE_PRESET, opts);
}
