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

// Transfer fidelity and latency of a simulated excitation hand-off from qubit A
// to qubit B, plus the closed-form figures of merit g_eff and Q.
//
// "Fidelity" here is the peak probability that qubit B is excited, and
// "latency" is the time at which that peak occurs, measured from t = 0 when
// qubit A starts in |e>. It is not the overlap fidelity of two density
// matrices.

#include "wgqed/dynamics.hpp"

#include <cstddef>
#include <limits>
#include <vector>

namespace wgqed {

struct TransferMetrics {
    double fidelity = 0.0;   // in [0, 1]
    double latency = 0.0;    // ns
    std::size_t peak_index = 0;
    double window_end = 0.0;  // ns
    IntegrationStats stats;   // of the trajectory the metrics came from
};

// Peaks within this fraction of the best one count as tied; the earliest tied
// lobe wins and its highest sample is reported.
inline constexpr double kPeakTieTolerance = 1e-2;
// A maximum must be followed by a drop of at least this much to count as a
// transfer peak rather than a monotone approach to a plateau.
inline constexpr double kPeakProminence = 1e-9;

// Re Tr(rho(t) op) at every sample.
std::vector<double> expectation_series(const Trajectory& traj, const ComplexMatrix& op);

// <sigma+ sigma-> of a qubit or <a^dag a> of the mode, clipped to [0, 1 + 1e-9].
std::vector<double> excited_population(const Trajectory& traj, Slot site);

// Throws NoPeakError if P_B never turns over inside the trajectory.
TransferMetrics transfer_metrics(const Trajectory& traj);

struct TransferWindow {
    std::size_t points = 2001;
    int max_doublings = 6;
    double max_horizon = std::numeric_limits<double>::infinity();  // ns

    void validate() const;

    friend bool operator==(const TransferWindow&, const TransferWindow&) = default;
};

// First simulation horizon: two full resonant exchange periods, 4 pi / (sqrt 2 g),
// when the detuning is below g; otherwise four times the dispersive exchange
// time, 4 pi Delta / (2 g^2). Angular units; result in ns.
double initial_horizon(const SystemParams& params);

// Simulate from |e, g, 0> and extract the transfer metrics. The window starts at
// `initial_horizon` (capped by `window.max_horizon`) and doubles up to
// `window.max_doublings` times while no peak is found.
TransferMetrics simulate_transfer(const SystemParams& params, const IntegratorOptions& opts = {},
                                  const TransferWindow& window = {});

// g / sqrt(Delta^2 + gamma^2), a dimensionless scaling indicator (not a rate).
double effective_coupling(double g_qw, double delta, double gamma);

// Q = (Delta^2 + gamma^2) / (2 g^2 gamma + kappa (Delta^2 + gamma^2)) * omega_w,
// all in GHz. Throws ZeroDenominatorError for a lossless system.
double quality_factor(const SystemParams& params);

}  // namespace wgqed
