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

#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

namespace wgqed {

namespace {

// Raised by the entry handlers; parse_config adds line/column, set_config_value
// turns it into a ValidationError.
struct BadEntry {
    std::string message;
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Leading number; `rest` receives the trimmed remainder.
std::optional<double> leading_number(std::string_view text, std::string_view& rest) {
    text = trim(text);
    double value = 0.0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    if (begin != end && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) return std::nullopt;
    rest = trim(std::string_view(ptr, static_cast<std::size_t>(end - ptr)));
    return value;
}

double number_with_unit(std::string_view key, std::string_view text,
                        std::initializer_list<std::pair<std::string_view, double>> units) {
    std::string_view rest;
    const auto value = leading_number(text, rest);
    if (!value) {
        throw BadEntry{"invalid number '" + std::string(text) + "' for " + std::string(key)};
    }
    if (rest.empty()) return *value;
    for (const auto& [unit, factor] : units) {
        if (rest == unit) return *value * factor;
    }
    throw BadEntry{"unknown unit '" + std::string(rest) + "' for " + std::string(key)};
}

double frequency_value(std::string_view key, std::string_view text) {
    return number_with_unit(key, text, {{"GHz", 1.0}, {"MHz", 1e-3}});
}

double time_value(std::string_view key, std::string_view text) {
    return number_with_unit(key, text, {{"ns", 1.0}});
}

double plain_value(std::string_view key, std::string_view text) {
    return number_with_unit(key, text, {});
}

long long integer_value(std::string_view key, std::string_view text) {
    text = trim(text);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw BadEntry{"invalid integer '" + std::string(text) + "' for " + std::string(key)};
    }
    return value;
}

std::vector<std::string_view> split_list(std::string_view text) {
    std::vector<std::string_view> items;
    while (true) {
        const auto comma = text.find(',');
        items.push_back(trim(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return items;
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

RunMode parse_mode(std::string_view text) {
    for (auto m : {RunMode::Trace, RunMode::Metrics, RunMode::Sweep, RunMode::Preset}) {
        if (text == mode_name(m)) return m;
    }
    throw BadEntry{"unknown mode '" + std::string(text) +
                   "' (expected trace, metrics, sweep or preset)"};
}

OutputFormats parse_formats(std::string_view text) {
    OutputFormats f{false, false};
    for (std::string_view item : split_list(text)) {
        if (item == "csv") {
            f.csv = true;
        } else if (item == "svg") {
            f.svg = true;
        } else {
            throw BadEntry{"unknown output format '" + std::string(item) + "'"};
        }
    }
    return f;
}

void apply_run(RunConfig& c, std::string_view key, std::string_view value) {
    if (key == "mode") {
        c.mode = parse_mode(value);
    } else if (key == "preset") {
        c.preset = std::string(value);
    } else if (key == "output") {
        c.output = std::string(value);
    } else if (key == "formats") {
        c.formats = parse_formats(value);
    } else if (key == "metric") {
        const auto m = parse_metric(value);
        if (!m) throw BadEntry{"unknown metric '" + std::string(value) + "'"};
        c.metric = *m;
    } else {
        throw BadEntry{"unknown key 'run." + std::string(key) + "'"};
    }
}

void apply_params(RunConfig& c, std::string_view key, std::string_view value) {
    if (key == "omega_q") {
        c.params.omega_q = frequency_value(key, value);
    } else if (key == "omega_w") {
        c.params.omega_w = frequency_value(key, value);
    } else if (key == "g_qw") {
        c.params.g_qw = frequency_value(key, value);
    } else if (key == "gamma") {
        c.params.gamma = frequency_value(key, value);
    } else if (key == "kappa") {
        c.params.kappa = frequency_value(key, value);
    } else if (key == "n_fock") {
        c.params.n_fock = static_cast<int>(integer_value(key, value));
    } else {
        throw BadEntry{"unknown key 'params." + std::string(key) + "'"};
    }
}

void apply_integrator(RunConfig& c, std::string_view key, std::string_view value) {
    if (key == "rel_tol") {
        c.integrator.rel_tol = plain_value(key, value);
    } else if (key == "abs_tol") {
        c.integrator.abs_tol = plain_value(key, value);
    } else if (key == "max_step") {
        c.integrator.max_step = time_value(key, value);
    } else if (key == "initial_step") {
        c.integrator.initial_step = time_value(key, value);
    } else {
        throw BadEntry{"unknown key 'integrator." + std::string(key) + "'"};
    }
}

void apply_window(RunConfig& c, std::string_view key, std::string_view value) {
    if (key == "points") {
        const long long n = integer_value(key, value);
        if (n < 0) throw BadEntry{"points must be non-negative"};
        c.window.points = static_cast<std::size_t>(n);
    } else if (key == "max_doublings") {
        c.window.max_doublings = static_cast<int>(integer_value(key, value));
    } else if (key == "max_horizon") {
        c.window.max_horizon = time_value(key, value);
    } else if (key == "t_end") {
        c.t_end = time_value(key, value);
    } else {
        throw BadEntry{"unknown key 'window." + std::string(key) + "'"};
    }
}

void apply_entry(RunConfig& c, std::string_view section, std::string_view key,
                 std::string_view value) {
    if (section == "run") {
        apply_run(c, key, value);
    } else if (section == "params") {
        apply_params(c, key, value);
    } else if (section == "integrator") {
        apply_integrator(c, key, value);
    } else if (section == "window") {
        apply_window(c, key, value);
    } else {
        throw BadEntry{"unknown section '" + std::string(section) + "'"};
    }
}

struct Entry {
    std::string section;
    int section_index;  // distinguishes repeated [axis] sections
    std::string key;
    std::string value;
    int line;
    int column;
};

// Accumulates one [axis] section.
struct AxisDraft {
    std::optional<SweepParameter> parameter;
    AxisScale scale = AxisScale::Linear;
    std::optional<std::vector<double>> values;
    std::optional<double> from, to;
    std::optional<long long> count;
    int line = 0;
};

void apply_axis_entry(AxisDraft& d, const Entry& e) {
    const std::string_view key = e.key, value = e.value;
    if (key == "parameter") {
        d.parameter = parse_parameter(value);
        if (!d.parameter) {
            throw BadEntry{"unknown sweep parameter '" + e.value +
                           "' (expected omega_w, kappa, gamma, g_qw or loss)"};
        }
    } else if (key == "scale") {
        const auto s = parse_scale(value);
        if (!s) throw BadEntry{"unknown axis scale '" + e.value + "' (expected linear or log)"};
        d.scale = *s;
    } else if (key == "values") {
        std::vector<double> v;
        for (std::string_view item : split_list(value)) {
            v.push_back(frequency_value(key, item));
        }
        d.values = std::move(v);
    } else if (key == "from") {
        d.from = frequency_value(key, value);
    } else if (key == "to") {
        d.to = frequency_value(key, value);
    } else if (key == "count") {
        d.count = integer_value(key, value);
    } else {
        throw BadEntry{"unknown key 'axis." + e.key + "'"};
    }
}

SweepAxis finish_axis(const AxisDraft& d) {
    if (!d.parameter) {
        throw ParseError(d.line, 1, "[axis] section needs 'parameter'");
    }
    const bool range = d.from || d.to || d.count;
    if (d.values && range) {
        throw ParseError(d.line, 1, "[axis] section takes either 'values' or 'from/to/count'");
    }
    if (d.values) {
        return SweepAxis{*d.parameter, *d.values, d.scale};
    }
    if (!(d.from && d.to && d.count)) {
        throw ParseError(d.line, 1, "[axis] section needs 'values' or all of 'from', 'to', 'count'");
    }
    if (*d.count < 0) {
        throw ValidationError("axis count must be non-negative");
    }
    const auto n = static_cast<std::size_t>(*d.count);
    try {
        return d.scale == AxisScale::Logarithmic
                   ? SweepAxis::logarithmic(*d.parameter, *d.from, *d.to, n)
                   : SweepAxis::linear(*d.parameter, *d.from, *d.to, n);
    } catch (const ValidationError& err) {
        throw ValidationError(std::string("axis: ") + err.what());
    }
}

}  // namespace

const char* mode_name(RunMode m) noexcept {
    switch (m) {
        case RunMode::Trace: return "trace";
        case RunMode::Metrics: return "metrics";
        case RunMode::Sweep: return "sweep";
        case RunMode::Preset: return "preset";
    }
    return "?";
}

double parse_frequency(std::string_view text) {
    try {
        return frequency_value("frequency", text);
    } catch (const BadEntry& e) {
        throw ValidationError(e.message);
    }
}

bool RunConfig::is_trace() const {
    return mode == RunMode::Trace ||
           (mode == RunMode::Preset && wgqed::preset(preset).kind == PresetKind::Trace);
}

bool RunConfig::is_sweep() const {
    return mode == RunMode::Sweep ||
           (mode == RunMode::Preset && wgqed::preset(preset).kind == PresetKind::Sweep);
}

std::string RunConfig::label() const {
    return mode == RunMode::Preset ? preset : std::string(mode_name(mode));
}

void RunConfig::validate() const {
    if (mode == RunMode::Preset) {
        (void)wgqed::preset(preset);
    } else if (!preset.empty()) {
        throw ValidationError("preset: only valid with mode = preset");
    }
    params.validate();
    integrator.validate();
    window.validate();
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
        throw ValidationError("t_end must be finite and >= 0");
    }
    if (!formats.csv && !formats.svg) {
        throw ValidationError("formats must name at least one of csv, svg");
    }
    if (output.empty()) {
        throw ValidationError("output must not be empty");
    }
    if (is_sweep()) {
        if (axes.empty() || axes.size() > 2) {
            throw ValidationError("axis: a sweep needs one or two [axis] sections");
        }
        for (const SweepAxis& axis : axes) {
            axis.validate(params);
        }
        if (axes.size() == 2 && axes[0].parameter == axes[1].parameter) {
            throw ValidationError("axis: both axes drive the same parameter");
        }
    } else if (!axes.empty()) {
        throw ValidationError("axis: sweep axes are only valid for sweeps");
    }
    if (mode == RunMode::Metrics && !(params.g_qw > 0.0)) {
        throw ValidationError("g_qw must be > 0 for a transfer simulation");
    }
}

void apply_preset(RunConfig& config, std::string_view name) {
    const Preset p = preset(name);
    config.mode = RunMode::Preset;
    config.preset = p.name;
    config.params = p.base;
    config.integrator = p.integrator;
    config.window = p.window;
    config.t_end = p.t_end;
    config.axes = p.axes;
    config.metric = p.metric;
}

void set_config_value(RunConfig& config, std::string_view qualified_key, std::string_view value) {
    const auto dot = qualified_key.find('.');
    if (dot == std::string_view::npos) {
        throw ValidationError("configuration key '" + std::string(qualified_key) +
                              "' must have the form section.key");
    }
    try {
        apply_entry(config, qualified_key.substr(0, dot), qualified_key.substr(dot + 1),
                    trim(value));
    } catch (const BadEntry& e) {
        throw ValidationError(e.message);
    }
}

RunConfig parse_config(std::string_view text) {
    std::vector<Entry> entries;
    std::string section;
    int section_index = -1;
    int axis_sections = 0;
    bool header_seen = false;
    int line_no = 0;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view raw =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const auto hash = raw.find('#');
        std::string_view line = raw.substr(0, hash);
        const std::string_view content = trim(line);
        if (content.empty()) continue;
        const int indent = static_cast<int>(line.find_first_not_of(" \t")) + 1;

        if (!header_seen) {
            if (content != kConfigHeader) {
                throw ParseError(line_no, indent,
                                 "expected schema header '" + std::string(kConfigHeader) + "'");
            }
            header_seen = true;
            continue;
        }
        if (content.front() == '[') {
            if (content.back() != ']') {
                throw ParseError(line_no, indent, "unterminated section header");
            }
            section = std::string(trim(content.substr(1, content.size() - 2)));
            if (section != "run" && section != "params" && section != "integrator" &&
                section != "window" && section != "axis") {
                throw ParseError(line_no, indent + 1, "unknown section '" + section + "'");
            }
            section_index = section == "axis" ? axis_sections++ : -1;
            if (section == "axis") {
                entries.push_back({section, section_index, "", "", line_no, indent});
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(line_no, indent, "expected 'key = value'");
        }
        if (section.empty()) {
            throw ParseError(line_no, indent, "entry outside of any section");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        const int value_col = static_cast<int>(eq + 1 + line.substr(eq + 1).find_first_not_of(" \t")) + 1;
        if (key.empty()) throw ParseError(line_no, indent, "missing key");
        if (value.empty()) throw ParseError(line_no, static_cast<int>(eq) + 2, "missing value");
        for (const Entry& e : entries) {
            if (e.section == section && e.section_index == section_index && e.key == key) {
                throw ParseError(line_no, indent, "duplicate key '" + std::string(key) + "'");
            }
        }
        entries.push_back({section, section_index, std::string(key), std::string(value), line_no,
                           value_col});
    }
    if (!header_seen) {
        throw ParseError(1, 1, "expected schema header '" + std::string(kConfigHeader) + "'");
    }

    auto fail = [](const Entry& e, const BadEntry& bad) -> ParseError {
        return ParseError(e.line, e.column, bad.message);
    };

    RunConfig config;
    // mode and preset first: a preset provides the baseline for the rest.
    for (const Entry& e : entries) {
        if (e.section == "run" && (e.key == "mode" || e.key == "preset")) {
            try {
                apply_run(config, e.key, e.value);
            } catch (const BadEntry& bad) {
                throw fail(e, bad);
            }
        }
    }
    if (config.mode == RunMode::Preset) {
        if (config.preset.empty()) {
            throw ValidationError("preset: mode = preset requires a preset name");
        }
        apply_preset(config, config.preset);
    }

    std::vector<AxisDraft> drafts(static_cast<std::size_t>(axis_sections));
    for (const Entry& e : entries) {
        try {
            if (e.section == "axis") {
                AxisDraft& d = drafts[static_cast<std::size_t>(e.section_index)];
                if (e.key.empty()) {
                    d.line = e.line;
                } else {
                    apply_axis_entry(d, e);
                }
            } else if (!(e.section == "run" && (e.key == "mode" || e.key == "preset"))) {
                apply_entry(config, e.section, e.key, e.value);
            }
        } catch (const BadEntry& bad) {
            throw fail(e, bad);
        }
    }
    if (!drafts.empty()) {
        config.axes.clear();
        for (const AxisDraft& d : drafts) config.axes.push_back(finish_axis(d));
    }
    config.validate();
    return config;
}

std::string render_config(const RunConfig& c) {
    std::ostringstream out;
    auto ghz = [](double v) { return format_double(v) + " GHz"; };
    auto ns = [](double v) { return format_double(v) + " ns"; };

    out << kConfigHeader << "\n\n[run]\n";
    out << "mode = " << mode_name(c.mode) << "\n";
    if (c.mode == RunMode::Preset) out << "preset = " << c.preset << "\n";
    out << "output = " << c.output << "\n";
    std::string formats;
    if (c.formats.csv) formats = "csv";
    if (c.formats.svg) formats += formats.empty() ? "svg" : ",svg";
    out << "formats = " << formats << "\n";
    out << "metric = " << metric_name(c.metric) << "\n";

    out << "\n[params]\n";
    out << "omega_q = " << ghz(c.params.omega_q) << "\n";
    out << "omega_w = " << ghz(c.params.omega_w) << "\n";
    out << "g_qw = " << ghz(c.params.g_qw) << "\n";
    out << "gamma = " << ghz(c.params.gamma) << "\n";
    out << "kappa = " << ghz(c.params.kappa) << "\n";
    out << "n_fock = " << c.params.n_fock << "\n";

    out << "\n[integrator]\n";
    out << "rel_tol = " << format_double(c.integrator.rel_tol) << "\n";
    out << "abs_tol = " << format_double(c.integrator.abs_tol) << "\n";
    out << "max_step = " << ns(c.integrator.max_step) << "\n";
    out << "initial_step = " << ns(c.integrator.initial_step) << "\n";

    out << "\n[window]\n";
    out << "points = " << c.window.points << "\n";
    out << "max_doublings = " << c.window.max_doublings << "\n";
    out << "max_horizon = " << ns(c.window.max_horizon) << "\n";
    out << "t_end = " << ns(c.t_end) << "\n";

    for (const SweepAxis& axis : c.axes) {
        out << "\n[axis]\n";
        out << "parameter = " << parameter_name(axis.parameter) << "\n";
        out << "scale = " << scale_name(axis.scale) << "\n";
        out << "values = ";
        for (std::size_t i = 0; i < axis.values.size(); ++i) {
            out << (i ? ", " : "") << format_double(axis.values[i]);
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace wgqed
