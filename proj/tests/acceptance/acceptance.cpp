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


// Acceptance gate: one PASS/FAIL line per criterion, each evaluated at its
// stated tolerance and runtime bound. Exit status is nonzero if any fails.
//
//   wgqed_acceptance [--cli PATH]   (criterion 11 needs the command-line tool)

#include "wgqed/error.hpp"
#include "wgqed/metrics.hpp"
#include "wgqed/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace wgqed;

namespace {

constexpr double kMHz = 1e-3;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// Physicality figures gathered from every integration the other criteria run.
struct PhysicalityLedger {
    std::size_t runs = 0;
    double trace_drift = 0.0;
    double hermiticity = 0.0;
    double min_eigenvalue = 0.0;
    double excitation_increase = 0.0;

    void add(const IntegrationStats& s) {
        ++runs;
        trace_drift = std::max(trace_drift, s.max_trace_drift);
        hermiticity = std::max(hermiticity, s.max_hermiticity_defect);
        min_eigenvalue = std::min(min_eigenvalue, s.min_eigenvalue);
        excitation_increase = std::max(excitation_increase, s.max_excitation_increase);
    }
    void add(const SweepResult& r) {
        for (const SweepCell& c : r.cells) {
            if (c.status == CellStatus::Ok) add(c.metrics.stats);
        }
    }
};

PhysicalityLedger ledger;

TransferMetrics transfer(const SystemParams& p, const IntegratorOptions& o = {},
                         const TransferWindow& w = {}) {
    TransferMetrics m = simulate_transfer(p, o, w);
    ledger.add(m.stats);
    return m;
}

SystemParams resonant(double g, double gamma = 0.0, double kappa = 0.0) {
    SystemParams p;
    p.g_qw = g;
    p.gamma = gamma;
    p.kappa = kappa;
    return p;
}

double analytic_latency(double g) { return std::numbers::pi / (std::sqrt(2.0) * kTwoPi * g); }

std::vector<double> interior_maxima(const std::vector<double>& y) {
    std::vector<double> out;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        if (y[i] > y[i - 1] && y[i] >= y[i + 1]) out.push_back(y[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------

Outcome resonant_fidelity() {
    const TransferMetrics m = transfer(resonant(0.05));
    const double err = std::abs(m.fidelity - 1.0);
    return {err <= 1e-6, fmt("fidelity %.12f, |F - 1| = %.2e (tol 1e-6)", m.fidelity, err)};
}

Outcome latency_halving() {
    const double l05 = transfer(resonant(0.05)).latency;
    const double l10 = transfer(resonant(0.1)).latency;
    const double ratio = l10 / l05;
    const double ratio_err = std::abs(ratio - 0.5) / 0.5;
    double worst = 0.0;
    for (double g : {0.05, 0.1, 0.2, 0.5, 1.0}) {
        const double l = transfer(resonant(g)).latency;
        worst = std::max(worst, std::abs(l - analytic_latency(g)) / analytic_latency(g));
    }
    return {ratio_err <= 1e-3 && worst <= 1e-3,
            fmt("ratio %.9f (rel err %.2e, tol 1e-3); worst latency vs closed form %.2e (tol 1e-3)",
                ratio, ratio_err, worst)};
}

Outcome damped_exchange() {
    const SystemParams p = resonant(0.1, kMHz, kMHz);
    // One exchange cycle A -> B -> A takes 2 pi / (sqrt 2 g~) = 7.07 ns.
    const double cycle = 2.0 * std::numbers::pi / (std::sqrt(2.0) * kTwoPi * p.g_qw);
    const Trajectory tr = evolve(initial_state(p.space()), p, uniform_grid(8.0 * cycle, 8001));
    ledger.add(tr.stats);
    bool ok = true;
    std::string detail;
    for (Slot s : {Slot::QubitA, Slot::QubitB}) {
        const auto maxima = interior_maxima(excited_population(tr, s));
        bool decreasing = maxima.size() >= 5;
        for (std::size_t i = 1; i < maxima.size(); ++i) decreasing &= maxima[i] < maxima[i - 1];
        ok &= decreasing;
        detail += fmt("%s: %zu maxima %s (%.6f -> %.6f); ", slot_name(s), maxima.size(),
                      decreasing ? "strictly decreasing" : "NOT strictly decreasing",
                      maxima.empty() ? 0.0 : maxima.front(), maxima.empty() ? 0.0 : maxima.back());
    }
    detail += "need >= 5 cycles";
    return {ok, detail};
}

Outcome qubit_decay_dominance() {
    bool ok = true;
    double worst_margin = 1.0;
    for (double g : {0.05, 0.1}) {
        for (double x : {1 * kMHz, 10 * kMHz, 100 * kMHz}) {
            const double f_gamma = transfer(resonant(g, x, 0.0)).fidelity;
            const double f_kappa = transfer(resonant(g, 0.0, x)).fidelity;
            ok &= f_gamma <= f_kappa;
            worst_margin = std::min(worst_margin, f_kappa - f_gamma);
        }
    }
    return {ok, fmt("min over 6 cases of F(kappa=x) - F(gamma=x) = %.6f (must be >= 0)", worst_margin)};
}

Outcome detuned_slowdown() {
    SystemParams p = resonant(0.1, kMHz, kMHz);
    const double resonant_latency = transfer(p).latency;
    p.omega_w = 7.0;
    const double detuned_latency = transfer(p).latency;
    const double ratio = detuned_latency / resonant_latency;
    const bool slow_ok = ratio >= 10.0;

    double worst = 0.0;
    for (double ratio_dg : {10.0, 20.0, 40.0}) {
        SystemParams d = resonant(0.1);
        d.omega_w = d.omega_q + ratio_dg * d.g_qw;
        const double dt = angular(d.detuning()), gt = angular(d.g_qw);
        const double oracle = std::numbers::pi * dt / (2.0 * gt * gt);
        worst = std::max(worst, std::abs(transfer(d).latency - oracle) / oracle);
    }
    const bool oracle_ok = worst <= 0.10;
    return {slow_ok && oracle_ok,
            fmt("latency(7 GHz)/latency(6 GHz) = %.3f (%.3f / %.3f ns, need >= 10) %s; "
                "dispersive oracle worst rel err %.3f for Delta/g in {10,20,40} (tol 0.10) %s",
                ratio, detuned_latency, resonant_latency, slow_ok ? "ok" : "FAILS", worst,
                oracle_ok ? "ok" : "FAILS")};
}

// Ok cells of each curve must be non-increasing along the loss axis, cells
// without a transfer peak (overdamped) may only form a tail at high loss, and a
// stronger coupling must not do worse wherever the weaker one has a peak.
Outcome monotone_loss_curves() {
    std::string detail;
    bool ok = true;
    for (const char* name : {"fig3a", "fig3b"}) {
        const Preset pr = preset(name);
        const SweepResult r = run_sweep(pr.axes, pr.base, pr.integrator, pr.window, 0);
        ledger.add(r);
        const std::size_t ng = pr.axes[0].values.size(), nl = pr.axes[1].values.size();
        std::size_t violations = 0, no_peak = 0;
        for (std::size_t i = 0; i < ng; ++i) {
            bool tail = false;
            for (std::size_t j = 0; j < nl; ++j) {
                const SweepCell& c = r.cell(i, j);
                if (c.status != CellStatus::Ok) {
                    ++no_peak;
                    tail = true;
                    continue;
                }
                if (tail) ++violations;  // a peak reappears after a no-peak cell
                if (j > 0 && r.cell(i, j - 1).status == CellStatus::Ok &&
                    c.metrics.fidelity > r.cell(i, j - 1).metrics.fidelity + 1e-9) {
                    ++violations;
                }
                if (i > 0 && r.cell(i - 1, j).status == CellStatus::Ok &&
                    c.metrics.fidelity < r.cell(i - 1, j).metrics.fidelity - 1e-9) {
                    ++violations;
                }
            }
            for (std::size_t j = 0; i > 0 && j < nl; ++j) {
                if (r.cell(i, j).status != CellStatus::Ok && r.cell(i - 1, j).status == CellStatus::Ok) {
                    ++violations;  // the stronger coupling lost its peak first
                }
            }
        }
        ok &= violations == 0;
        detail += fmt("%s%s: %zu cells, %zu overdamped (no peak), %zu violations",
                      detail.empty() ? "" : "; ", name, r.cells.size(), no_peak, violations);
    }
    return {ok, detail};
}

Outcome oracle_equivalence() {
    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto log_uniform = [&](double lo, double hi) { return lo * std::pow(hi / lo, u(rng)); };
    double worst = 0.0;
    for (int draw = 0; draw < 20; ++draw) {
        SystemParams p;
        p.omega_w = draw % 4 == 0 ? 6.0 : 7.0 + 43.0 * u(rng);
        p.gamma = log_uniform(1e-3, 1.0);
        p.kappa = log_uniform(1e-3, 1.0);
        p.g_qw = log_uniform(0.05, 1.0);
        std::vector<double> times(10);
        for (double& t : times) t = 50.0 * u(rng);
        std::sort(times.begin(), times.end());
        times.insert(times.begin(), 0.0);
        const DensityMatrix rho0 = initial_state(p.space());
        const Trajectory tr = evolve(rho0, p, times);
        ledger.add(tr.stats);
        for (std::size_t i = 1; i < times.size(); ++i) {
            const ComplexMatrix diff = tr.states[i].matrix() - evolve_expm(rho0, p, times[i]).matrix();
            worst = std::max(worst, diff.cwiseAbs().maxCoeff());
        }
    }
    return {worst < 1e-8, fmt("worst elementwise |rho_rk - rho_expm| = %.2e over 20 draws x 10 times (tol 1e-8)", worst)};
}

Outcome truncation_agreement() {
    double worst = 0.0;
    const SystemParams cases[] = {resonant(0.05), resonant(0.1, kMHz, kMHz), resonant(0.3, 0.01, 0.05),
                                  [] { SystemParams p = resonant(0.1, kMHz, kMHz); p.omega_w = 7.0; return p; }()};
    for (SystemParams p : cases) {
        const TransferMetrics a = transfer(p);
        p.n_fock = 3;
        const TransferMetrics b = transfer(p);
        worst = std::max({worst, std::abs(a.fidelity - b.fidelity), std::abs(a.latency - b.latency)});
    }
    const bool ok = worst < 1e-10 && ledger.trace_drift < 1e-8 && ledger.hermiticity < 1e-10 &&
                    ledger.min_eigenvalue >= -1e-8 && ledger.excitation_increase <= 1e-9;
    return {ok, fmt("%zu runs: trace drift %.1e (<1e-8), hermiticity %.1e (<1e-10), min eig %.1e "
                    "(>=-1e-8), excitation growth/step %.1e (<=1e-9), n_fock 2 vs 3 %.1e (<1e-10)",
                    ledger.runs, ledger.trace_drift, ledger.hermiticity, ledger.min_eigenvalue,
                    ledger.excitation_increase, worst)};
}

Outcome quality_factor_limits() {
    bool ok = true;
    double worst = 0.0;
    for (double omega_w : {6.0, 7.0, 20.0, 50.0}) {
        for (double kappa : {1e-3, 0.1, 1.0}) {
            SystemParams p = resonant(0.0, 0.3, kappa);
            p.omega_w = omega_w;
            worst = std::max(worst, std::abs(quality_factor(p) - omega_w / kappa) / (omega_w / kappa));
            if (omega_w != 6.0) {
                SystemParams q = resonant(0.4, 0.0, kappa);
                q.omega_w = omega_w;
                worst = std::max(worst, std::abs(quality_factor(q) - omega_w / kappa) / (omega_w / kappa));
            }
        }
    }
    ok &= worst <= 1e-12;
    bool raised = false;
    try {
        (void)quality_factor(resonant(0.1));
    } catch (const ZeroDenominatorError&) {
        raised = true;
    }
    ok &= raised;
    return {ok, fmt("worst rel err vs omega_w/kappa %.1e (tol 1e-12); lossless %s", worst,
                    raised ? "raises ZeroDenominator" : "did NOT raise")};
}

// Fidelity of the fig5 presets at shared (loss, g) grid points must not rise
// as omega_w goes 10 -> 20 -> 50 GHz. The points are a subset of the preset
// grids chosen away from the overdamped corner.
Outcome detuning_ordering() {
    const Preset base = preset("fig5a");
    const auto& loss = base.axes[0].values;
    const auto& g = base.axes[1].values;
    const std::vector<SweepAxis> axes = {
        SweepAxis{SweepParameter::Loss, {loss[0], loss[6], loss[12], loss[18]}, AxisScale::Logarithmic},
        SweepAxis{SweepParameter::GQw, {g[9], g[14], g[19]}, AxisScale::Logarithmic}};
    std::vector<SweepResult> results;
    for (const char* name : {"fig5a", "fig5b", "fig5c"}) {
        const Preset pr = preset(name);
        results.push_back(run_sweep(axes, pr.base, pr.integrator, pr.window, 0));
        ledger.add(results.back());
    }
    const double omega_w[] = {10.0, 20.0, 50.0};
    std::size_t compared = 0, violations = 0, missing = 0;
    std::string worst;
    double worst_rise = 0.0;
    for (std::size_t k = 0; k < results[0].cells.size(); ++k) {
        for (std::size_t w = 1; w < results.size(); ++w) {
            const SweepCell& lo = results[w - 1].cells[k];
            const SweepCell& hi = results[w].cells[k];
            if (lo.status != CellStatus::Ok || hi.status != CellStatus::Ok) {
                ++missing;
                continue;
            }
            ++compared;
            const double rise = hi.metrics.fidelity - lo.metrics.fidelity;
            if (rise > 1e-9) ++violations;
            if (rise > worst_rise) {
                worst_rise = rise;
                worst = fmt("; largest rise at loss %.3g GHz, g %.3g GHz: F(%g GHz) = %.6f -> F(%g GHz) = %.6f",
                            lo.point[0], lo.point[1], omega_w[w - 1], lo.metrics.fidelity, omega_w[w],
                            hi.metrics.fidelity);
            }
        }
    }
    return {violations == 0 && missing == 0,
            fmt("%zu (loss, g) points x 3 detunings: %zu comparisons, %zu increases, %zu without a peak",
                results[0].cells.size(), compared, violations, missing) + worst};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome cli_determinism(const std::string& cli) {
    if (cli.empty()) return {false, "no --cli path given"};
    const auto dir = std::filesystem::temp_directory_path() / "wgqed-acceptance-cli";
    std::filesystem::remove_all(dir);
    auto run = [&](const std::string& sub, const char* jobs) {
        const std::string cmd = "\"" + cli + "\" preset fig3c --formats csv --jobs " + jobs +
                                " --out \"" + (dir / sub).string() + "\"";
        return std::system(cmd.c_str()) == 0;
    };
    const bool ran = run("first", "1") && run("second", "1") && run("eight", "8");
    if (!ran) return {false, "CLI invocation failed"};
    const std::string a = slurp(dir / "first" / "fig3c.csv");
    const std::string b = slurp(dir / "second" / "fig3c.csv");
    const std::string c = slurp(dir / "eight" / "fig3c.csv");
    std::filesystem::remove_all(dir);
    const bool ok = !a.empty() && a == b && a == c;
    return {ok, fmt("repeat run %s, --jobs 1 vs 8 %s (%zu bytes)", a == b ? "identical" : "DIFFERS",
                    a == c ? "identical" : "DIFFERS", a.size())};
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
    }

    struct Criterion {
        int id;
        const char* title;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "resonant lossless fidelity", 1.0, resonant_fidelity},
        {2, "latency halving and closed form", 2.0, latency_halving},
        {3, "damped exchange", 2.0, damped_exchange},
        {4, "qubit-decay dominance", 5.0, qubit_decay_dominance},
        {5, "detuned slowdown", 30.0, detuned_slowdown},
        {6, "monotone loss curves", 60.0, monotone_loss_curves},
        {7, "oracle equivalence", 30.0, oracle_equivalence},
        {9, "quality-factor limits", 1.0, quality_factor_limits},
        {10, "fidelity vs detuning", 90.0, detuning_ordering},
        {11, "CLI determinism", 60.0, [&] { return cli_determinism(cli); }},
        // Last: it audits every integration the criteria above performed.
        {8, "physicality suite", 30.0, truncation_agreement},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.budget_s;
        const bool pass = o.pass && in_time;
        failures += pass ? 0 : 1;
        std::printf("%s  %2d  %-32s %s; %.2f s (budget %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id,
                    c.title, o.detail.c_str(), secs, c.budget_s, in_time ? "" : ", EXCEEDED");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
