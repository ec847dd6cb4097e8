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

#include "wgqed/metrics.hpp"

#include "wgqed/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace wgqed {

namespace {

constexpr double kPopulationCeiling = 1.0 + 1e-9;

struct Refined {
    double time;
    double value;
};

// Vertex of the parabola through three samples around a discrete maximum.
Refined refine_peak(double t0, double y0, double t1, double y1, double t2, double y2) {
    const double num = (t1 - t0) * (t1 - t0) * (y1 - y2) - (t1 - t2) * (t1 - t2) * (y1 - y0);
    const double den = (t1 - t0) * (y1 - y2) - (t1 - t2) * (y1 - y0);
    if (den == 0.0 || !std::isfinite(num / den)) return {t1, y1};
    const double tv = std::clamp(t1 - 0.5 * num / den, t0, t2);
    // Lagrange form of the same parabola.
    const double l0 = (tv - t1) * (tv - t2) / ((t0 - t1) * (t0 - t2));
    const double l1 = (tv - t0) * (tv - t2) / ((t1 - t0) * (t1 - t2));
    const double l2 = (tv - t0) * (tv - t1) / ((t2 - t0) * (t2 - t1));
    const double value = l0 * y0 + l1 * y1 + l2 * y2;
    return {tv, std::max(value, y1)};
}

}  // namespace

std::vector<double> expectation_series(const Trajectory& traj, const ComplexMatrix& op) {
    std::vector<double> out;
    out.reserve(traj.states.size());
    for (const DensityMatrix& rho : traj.states) {
        out.push_back(rho.expectation(op));
    }
    return out;
}

std::vector<double> excited_population(const Trajectory& traj, Slot site) {
    if (traj.states.empty()) return {};
    const HilbertSpace space(traj.params.n_fock);
    if (traj.states.front().dim() != space.total_dim()) {
        throw ValidationError("excited_population: trajectory does not match its parameters");
    }
    std::vector<double> p = expectation_series(traj, population_operator(site, space));
    for (double& v : p) v = std::clamp(v, 0.0, kPopulationCeiling);
    return p;
}

TransferMetrics transfer_metrics(const Trajectory& traj) {
    const std::vector<double> pb = excited_population(traj, Slot::QubitB);
    const std::size_t n = pb.size();
    if (n < 3) {
        throw NoPeakError("trajectory too short to locate a transfer peak");
    }

    // suffix_min[i] = min(pb[i..n-1])
    std::vector<double> suffix_min(pb);
    for (std::size_t i = n - 1; i-- > 0;) {
        suffix_min[i] = std::min(suffix_min[i], suffix_min[i + 1]);
    }

    std::vector<std::size_t> peaks;
    double best = -1.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (pb[i] > pb[i - 1] && pb[i] >= pb[i + 1] && pb[i] - suffix_min[i] > kPeakProminence) {
            peaks.push_back(i);
            best = std::max(best, pb[i]);
        }
    }
    if (peaks.empty()) {
        throw NoPeakError("qubit B population does not turn over within " +
                          std::to_string(traj.times.back()) + " ns");
    }
    // Still rising at the end of the window beyond every interior peak: the
    // global maximum lies outside it.
    if (pb.back() > best * (1.0 + kPeakTieTolerance)) {
        throw NoPeakError("qubit B population still rising at the end of the window (" +
                          std::to_string(traj.times.back()) + " ns)");
    }

    // First major peak: the earliest candidate within the tie tolerance of the
    // best one, then the highest sample of the lobe (P_B >= best / 2) around it.
    std::size_t first = 0;
    while (pb[peaks[first]] < best * (1.0 - kPeakTieTolerance)) ++first;
    std::size_t lobe_end = peaks[first];
    while (lobe_end + 1 < n && pb[lobe_end + 1] >= 0.5 * best) ++lobe_end;
    std::size_t chosen = peaks[first];
    for (std::size_t k = first + 1; k < peaks.size() && peaks[k] <= lobe_end; ++k) {
        if (pb[peaks[k]] > pb[chosen]) chosen = peaks[k];
    }

    const auto& t = traj.times;
    const Refined r =
        refine_peak(t[chosen - 1], pb[chosen - 1], t[chosen], pb[chosen], t[chosen + 1], pb[chosen + 1]);

    TransferMetrics m;
    m.fidelity = std::clamp(r.value, 0.0, 1.0);
    m.latency = r.time;
    m.peak_index = chosen;
    m.window_end = t.back();
    m.stats = traj.stats;
    return m;
}

void TransferWindow::validate() const {
    if (points < 3) throw ValidationError("points must be >= 3");
    if (max_doublings < 0) throw ValidationError("max_doublings must be >= 0");
    if (!(max_horizon > 0.0)) throw ValidationError("max_horizon must be > 0");
}

double initial_horizon(const SystemParams& params) {
    const double g = angular(params.g_qw);
    const double delta = angular(params.detuning());
    if (params.detuning() < params.g_qw) {
        return 4.0 * std::numbers::pi / (std::numbers::sqrt2 * g);
    }
    return 4.0 * std::numbers::pi * delta / (2.0 * g * g);
}

namespace {

// Early exit needs a peak well above rounding and a bound clear of it.
constexpr double kEarlyExitFloor = 1e-6;
constexpr double kEarlyExitMargin = 1e-9;

}  // namespace

TransferMetrics simulate_transfer(const SystemParams& params, const IntegratorOptions& opts,
                                  const TransferWindow& window) {
    params.validate();
    opts.validate();
    window.validate();
    if (!(params.g_qw > 0.0)) {
        throw ValidationError("g_qw must be > 0 for a transfer simulation");
    }
    const HilbertSpace space = params.space();
    const DensityMatrix rho0 = initial_state(space);
    const ComplexVector pb_diag = population_operator(Slot::QubitB, space).diagonal();
    const ComplexVector n_diag = excitation_number(space).diagonal();
    double horizon = std::min(initial_horizon(params), window.max_horizon);
    for (int attempt = 0;; ++attempt) {
        const std::vector<double> grid = uniform_grid(horizon, window.points);

        // Early exit. The dynamics never create excitations, so P_B at any later
        // time is bounded by <N_exc> now. Once that bound is below the best peak
        // seen so far and P_B has fallen below half of it, the rest of the window
        // cannot change the metrics and integration stops.
        std::vector<double> pb;
        pb.reserve(grid.size());
        double best = 0.0;
        auto observer = [&](std::size_t, const DensityMatrix& rho) {
            const ComplexVector diag = rho.matrix().diagonal();
            pb.push_back(diag.cwiseProduct(pb_diag).sum().real());
            const std::size_t k = pb.size() - 1;
            if (k >= 2 && pb[k - 1] > pb[k - 2] && pb[k - 1] >= pb[k]) best = std::max(best, pb[k - 1]);
            if (best < kEarlyExitFloor || pb[k] >= 0.5 * best) return true;
            const double bound = diag.cwiseProduct(n_diag).sum().real();
            return bound + kEarlyExitMargin >= best;
        };
        const Trajectory traj = evolve(rho0, params, grid, opts, observer);
        try {
            TransferMetrics m = transfer_metrics(traj);
            m.window_end = grid.back();
            return m;
        } catch (const NoPeakError&) {
            if (attempt >= window.max_doublings || horizon >= window.max_horizon) throw;
        }
        horizon = std::min(2.0 * horizon, window.max_horizon);
    }
}

double effective_coupling(double g_qw, double delta, double gamma) {
    if (!(g_qw >= 0.0) || !(delta >= 0.0) || !(gamma >= 0.0)) {
        throw ValidationError("effective_coupling: arguments must be >= 0");
    }
    if (delta == 0.0 && gamma == 0.0) {
        throw ValidationError(
            "effective_coupling: undefined for zero detuning and zero qubit decay");
    }
    return g_qw / std::sqrt(delta * delta + gamma * gamma);
}

double quality_factor(const SystemParams& params) {
    params.validate();
    const double delta = params.detuning();
    const double spread = delta * delta + params.gamma * params.gamma;
    const double den = 2.0 * params.g_qw * params.g_qw * params.gamma + params.kappa * spread;
    if (!(den > 0.0)) {
        throw ZeroDenominatorError("quality factor is unbounded for a lossless system");
    }
    return spread / den * params.omega_w;
}

}  // namespace wgqed
