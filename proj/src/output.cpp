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

#include "wgqed/output.hpp"

#include "wgqed/error.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>

namespace wgqed {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string g12(double v) { return fmt("%.12g", v); }

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string px(double v) { return fmt("%.2f", v); }

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, kMaxSeries> kColors = {"#1f77b4", "#d62728", "#2ca02c"};

struct Range {
    double lo;
    double hi;
};

Range finite_range(const std::vector<double>& v, bool log_scale) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double x : v) {
        if (!std::isfinite(x) || (log_scale && x <= 0.0)) continue;
        const double t = log_scale ? std::log10(x) : x;
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    if (!(lo <= hi)) return {0.0, 1.0};
    if (lo == hi) {
        const double pad = lo == 0.0 ? 0.5 : std::abs(lo) * 0.05;
        return {lo - pad, hi + pad};
    }
    return {lo, hi};
}

double nice_step(double span) {
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double step = norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0;
    return step * mag;
}

// Tick positions in axis coordinates (log10 for log axes) with labels.
std::vector<std::pair<double, std::string>> ticks(Range r, bool log_scale) {
    std::vector<std::pair<double, std::string>> out;
    if (log_scale) {
        const int first = static_cast<int>(std::ceil(r.lo - 1e-9));
        const int last = static_cast<int>(std::floor(r.hi + 1e-9));
        const bool sparse = last - first < 2;
        for (int e = first - 1; e <= last; ++e) {
            for (double m : {1.0, 2.0, 5.0}) {
                if (m != 1.0 && !sparse) continue;
                const double t = e + std::log10(m);
                if (t >= r.lo - 1e-9 && t <= r.hi + 1e-9) {
                    out.emplace_back(t, fmt("%g", m * std::pow(10.0, e)));
                }
            }
        }
        return out;
    }
    const double step = nice_step(r.hi - r.lo);
    for (double t = std::ceil(r.lo / step - 1e-9) * step; t <= r.hi + step * 1e-9; t += step) {
        out.emplace_back(t, fmt("%g", std::abs(t) < step * 1e-9 ? 0.0 : t));
    }
    return out;
}

class Canvas {
public:
    Canvas(std::string_view title, std::string_view description) {
        out_ += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
        out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
                px(kWidth) + "\" height=\"" + px(kHeight) + "\" viewBox=\"0 0 " + px(kWidth) +
                " " + px(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
        out_ += "<title>" + xml_escape(title) + "</title>\n";
        if (!description.empty()) {
            out_ += "<desc>" + xml_escape(description) + "</desc>\n";
        }
        out_ += "<rect x=\"0\" y=\"0\" width=\"" + px(kWidth) + "\" height=\"" + px(kHeight) +
                "\" fill=\"#ffffff\"/>\n";
        text(kWidth / 2.0, 28.0, title, "middle", 15);
    }

    void text(double x, double y, std::string_view s, const char* anchor = "start",
              int size = 12, const char* extra = "") {
        out_ += "<text x=\"" + px(x) + "\" y=\"" + px(y) + "\" text-anchor=\"" + anchor +
                "\" font-size=\"" + std::to_string(size) + "\"" + extra + ">" + xml_escape(s) +
                "</text>\n";
    }

    void line(double x1, double y1, double x2, double y2, const char* stroke,
              double width = 1.0) {
        out_ += "<line x1=\"" + px(x1) + "\" y1=\"" + px(y1) + "\" x2=\"" + px(x2) + "\" y2=\"" +
                px(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + px(width) + "\"/>\n";
    }

    void rect(double x, double y, double w, double h, const std::string& fill,
              const char* stroke = "none") {
        out_ += "<rect x=\"" + px(x) + "\" y=\"" + px(y) + "\" width=\"" + px(w) +
                "\" height=\"" + px(h) + "\" fill=\"" + fill + "\" stroke=\"" + stroke + "\"/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const char* stroke) {
        if (pts.empty()) return;
        out_ += "<polyline fill=\"none\" stroke=\"";
        out_ += stroke;
        out_ += "\" stroke-width=\"1.50\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            out_ += (i ? " " : "") + px(pts[i].first) + "," + px(pts[i].second);
        }
        out_ += "\"/>\n";
    }

    std::string finish() {
        out_ += "</svg>\n";
        return std::move(out_);
    }

private:
    std::string out_;
};

// Axes frame, ticks and labels for a plot area.
struct Frame {
    double x0, y0, w, h;  // plot area in pixels
    Range xr, yr;
    bool log_x, log_y;

    double map_x(double v) const {
        const double t = log_x ? std::log10(v) : v;
        return x0 + (t - xr.lo) / (xr.hi - xr.lo) * w;
    }
    double map_y(double v) const {
        const double t = log_y ? std::log10(v) : v;
        return y0 + h - (t - yr.lo) / (yr.hi - yr.lo) * h;
    }
};

void draw_axes(Canvas& c, const Frame& f, std::string_view x_label, std::string_view y_label,
               bool x_ticks = true, bool y_ticks = true) {
    c.rect(f.x0, f.y0, f.w, f.h, "none", "#000000");
    if (x_ticks) {
        for (const auto& [t, label] : ticks(f.xr, f.log_x)) {
            const double x = f.x0 + (t - f.xr.lo) / (f.xr.hi - f.xr.lo) * f.w;
            c.line(x, f.y0 + f.h, x, f.y0 + f.h + 5.0, "#000000");
            c.text(x, f.y0 + f.h + 18.0, label, "middle");
        }
    }
    if (y_ticks) {
        for (const auto& [t, label] : ticks(f.yr, f.log_y)) {
            const double y = f.y0 + f.h - (t - f.yr.lo) / (f.yr.hi - f.yr.lo) * f.h;
            c.line(f.x0 - 5.0, y, f.x0, y, "#000000");
            c.text(f.x0 - 8.0, y + 4.0, label, "end");
        }
    }
    c.text(f.x0 + f.w / 2.0, f.y0 + f.h + 40.0, x_label, "middle", 13);
    const double yc = f.y0 + f.h / 2.0;
    c.text(22.0, yc, y_label, "middle", 13,
           (" transform=\"rotate(-90 22.00 " + px(yc) + ")\"").c_str());
}

std::string ramp_color(double t) {
    static constexpr std::array<std::array<double, 3>, 5> stops = {{
        {0x44, 0x01, 0x54}, {0x3b, 0x52, 0x8b}, {0x21, 0x91, 0x8c}, {0x5e, 0xc9, 0x62},
        {0xfd, 0xe7, 0x25}}};
    t = std::clamp(t, 0.0, 1.0) * (stops.size() - 1);
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(t), stops.size() - 2);
    const double u = t - static_cast<double>(k);
    char buf[8];
    std::array<int, 3> rgb{};
    for (int ch = 0; ch < 3; ++ch) {
        rgb[ch] = static_cast<int>(std::lround(stops[k][ch] + (stops[k + 1][ch] - stops[k][ch]) * u));
    }
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
    return buf;
}

const char* axis_label(SweepParameter p) {
    switch (p) {
        case SweepParameter::OmegaW: return "omega_w (GHz)";
        case SweepParameter::Kappa: return "kappa (GHz)";
        case SweepParameter::Gamma: return "gamma (GHz)";
        case SweepParameter::GQw: return "g_qw (GHz)";
        case SweepParameter::Loss: return "kappa = gamma (GHz)";
    }
    return "";
}

const char* metric_label(PlotMetric m) {
    return m == PlotMetric::Fidelity ? "fidelity" : "latency (ns)";
}

double metric_value(const SweepCell& cell, PlotMetric m) {
    if (cell.status != CellStatus::Ok) return kNaN;
    return m == PlotMetric::Fidelity ? cell.metrics.fidelity : cell.metrics.latency;
}

}  // namespace

TraceSeries trace_series(const Trajectory& traj) {
    return TraceSeries{traj.times, excited_population(traj, Slot::QubitA),
                       excited_population(traj, Slot::QubitB),
                       excited_population(traj, Slot::Mode)};
}

std::string trace_csv(const TraceSeries& trace) {
    std::string out = "time_ns,p_qubit_a,p_qubit_b,p_mode\r\n";
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        out += fmt("%.12f", trace.times[i]) + "," + g12(trace.p_qubit_a[i]) + "," +
               g12(trace.p_qubit_b[i]) + "," + g12(trace.p_mode[i]) + "\r\n";
    }
    return out;
}

std::string sweep_csv(const SweepResult& result) {
    std::string out;
    for (const SweepAxis& axis : result.axes) {
        out += parameter_name(axis.parameter);
        out += ",";
    }
    out += "fidelity,latency_ns,status\r\n";
    for (const SweepCell& cell : result.cells) {
        for (double v : cell.point) out += g12(v) + ",";
        if (cell.status == CellStatus::Ok) {
            out += g12(cell.metrics.fidelity) + "," + g12(cell.metrics.latency) + ",";
        } else {
            out += ",,";
        }
        out += status_name(cell.status);
        out += "\r\n";
    }
    return out;
}

std::string render_line_plot(const LinePlot& plot) {
    if (plot.series.size() > kMaxSeries) {
        throw ValidationError("line plot supports at most " + std::to_string(kMaxSeries) +
                              " series, got " + std::to_string(plot.series.size()));
    }
    std::vector<double> xs, ys;
    for (const LineSeries& s : plot.series) {
        if (s.x.size() != s.y.size()) {
            throw ValidationError("line series '" + s.label + "' has mismatched x/y lengths");
        }
        xs.insert(xs.end(), s.x.begin(), s.x.end());
        ys.insert(ys.end(), s.y.begin(), s.y.end());
    }
    Canvas c(plot.title, plot.description);
    const Frame f{kLeft, kTop, kWidth - kLeft - 30.0, kHeight - kTop - kBottom,
                  finite_range(xs, plot.log_x), finite_range(ys, false), plot.log_x, false};
    draw_axes(c, f, plot.x_label, plot.y_label);

    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const LineSeries& s = plot.series[k];
        std::vector<std::pair<double, double>> run;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i]) || !std::isfinite(s.x[i]) || (plot.log_x && s.x[i] <= 0)) {
                c.polyline(run, kColors[k]);
                run.clear();
                continue;
            }
            run.emplace_back(f.map_x(s.x[i]), f.map_y(s.y[i]));
        }
        c.polyline(run, kColors[k]);
    }

    // Legend, top right inside the frame.
    const double lx = f.x0 + f.w - 170.0;
    double ly = f.y0 + 12.0;
    if (!plot.series.empty()) {
        c.rect(lx - 8.0, f.y0 + 2.0, 174.0, 8.0 + 18.0 * static_cast<double>(plot.series.size()),
               "#ffffff", "#999999");
    }
    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        c.line(lx, ly, lx + 24.0, ly, kColors[k], 2.0);
        c.text(lx + 30.0, ly + 4.0, plot.series[k].label);
        ly += 18.0;
    }
    return c.finish();
}

std::string render_heatmap(const Heatmap& map) {
    const std::size_t nx = map.x.size(), ny = map.y.size();
    if (nx == 0 || ny == 0 || map.values.size() != nx * ny) {
        throw ValidationError("heatmap needs a non-empty grid with one value per cell");
    }
    Canvas c(map.title, map.description);
    const Frame f{kLeft, kTop, kWidth - kLeft - 130.0, kHeight - kTop - kBottom,
                  Range{0.0, 1.0}, Range{0.0, 1.0}, false, false};
    const Range vr = finite_range(map.values, false);
    const double cw = f.w / static_cast<double>(nx), ch = f.h / static_cast<double>(ny);

    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            const double v = map.values[i * ny + j];
            const std::string fill =
                std::isfinite(v) ? ramp_color((v - vr.lo) / (vr.hi - vr.lo)) : "#cccccc";
            c.rect(f.x0 + cw * static_cast<double>(i),
                   f.y0 + f.h - ch * static_cast<double>(j + 1), cw, ch, fill);
        }
    }
    draw_axes(c, f, map.x_label, map.y_label, false, false);

    // Cell-centred tick labels, at most six per axis.
    const std::size_t sx = std::max<std::size_t>(1, (nx + 5) / 6);
    for (std::size_t i = 0; i < nx; i += sx) {
        const double x = f.x0 + cw * (static_cast<double>(i) + 0.5);
        c.line(x, f.y0 + f.h, x, f.y0 + f.h + 5.0, "#000000");
        c.text(x, f.y0 + f.h + 18.0, fmt("%.3g", map.x[i]), "middle");
    }
    const std::size_t sy = std::max<std::size_t>(1, (ny + 5) / 6);
    for (std::size_t j = 0; j < ny; j += sy) {
        const double y = f.y0 + f.h - ch * (static_cast<double>(j) + 0.5);
        c.line(f.x0 - 5.0, y, f.x0, y, "#000000");
        c.text(f.x0 - 8.0, y + 4.0, fmt("%.3g", map.y[j]), "end");
    }

    // Colour bar.
    const double bx = f.x0 + f.w + 30.0, bw = 20.0;
    constexpr int kBands = 32;
    for (int b = 0; b < kBands; ++b) {
        const double t = (b + 0.5) / kBands;
        c.rect(bx, f.y0 + f.h * (1.0 - static_cast<double>(b + 1) / kBands), bw,
               f.h / kBands + 0.5, ramp_color(t));
    }
    c.rect(bx, f.y0, bw, f.h, "none", "#000000");
    for (int k = 0; k <= 4; ++k) {
        const double t = k / 4.0;
        const double y = f.y0 + f.h * (1.0 - t);
        c.line(bx + bw, y, bx + bw + 4.0, y, "#000000");
        c.text(bx + bw + 7.0, y + 4.0, fmt("%.4g", vr.lo + (vr.hi - vr.lo) * t));
    }
    c.text(bx + bw / 2.0, f.y0 - 10.0, map.value_label, "middle");
    c.rect(bx, f.y0 + f.h + 22.0, bw, 12.0, "#cccccc", "#000000");
    c.text(bx + bw + 7.0, f.y0 + f.h + 32.0, "no peak");
    return c.finish();
}

std::string trace_svg(const TraceSeries& trace, std::string_view title,
                      std::string_view description) {
    LinePlot plot;
    plot.title = std::string(title);
    plot.x_label = "time (ns)";
    plot.y_label = "excitation probability";
    plot.description = std::string(description);
    plot.series = {{"P_A (qubit A)", trace.times, trace.p_qubit_a},
                   {"P_B (qubit B)", trace.times, trace.p_qubit_b},
                   {"P_mode (waveguide)", trace.times, trace.p_mode}};
    return render_line_plot(plot);
}

std::string sweep_svg(const SweepResult& result, PlotMetric metric, std::string_view title,
                      std::string_view description) {
    const auto& axes = result.axes;
    if (axes.empty()) throw ValidationError("sweep has no axes to plot");
    if (axes.size() == 1 || axes[0].values.size() <= kMaxSeries) {
        const SweepAxis& xa = axes.back();
        LinePlot plot;
        plot.title = std::string(title);
        plot.x_label = axis_label(xa.parameter);
        plot.y_label = metric_label(metric);
        plot.log_x = xa.scale == AxisScale::Logarithmic;
        plot.description = std::string(description);
        const std::size_t groups = axes.size() == 1 ? 1 : axes[0].values.size();
        for (std::size_t gi = 0; gi < groups; ++gi) {
            LineSeries s;
            s.label = axes.size() == 1 ? metric_name(metric)
                                       : std::string(parameter_name(axes[0].parameter)) + " = " +
                                             fmt("%g", axes[0].values[gi]) + " GHz";
            for (std::size_t j = 0; j < xa.values.size(); ++j) {
                const SweepCell& cell = axes.size() == 1 ? result.cell(j) : result.cell(gi, j);
                s.x.push_back(xa.values[j]);
                s.y.push_back(metric_value(cell, metric));
            }
            plot.series.push_back(std::move(s));
        }
        return render_line_plot(plot);
    }
    Heatmap map;
    map.title = std::string(title);
    map.x_label = axis_label(axes[0].parameter);
    map.y_label = axis_label(axes[1].parameter);
    map.value_label = metric_label(metric);
    map.log_x = axes[0].scale == AxisScale::Logarithmic;
    map.log_y = axes[1].scale == AxisScale::Logarithmic;
    map.x = axes[0].values;
    map.y = axes[1].values;
    map.description = std::string(description);
    for (const SweepCell& cell : result.cells) map.values.push_back(metric_value(cell, metric));
    return render_heatmap(map);
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing: " + std::strerror(errno));
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

}  // namespace wgqed
