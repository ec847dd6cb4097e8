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

#include "wgqed/dynamics.hpp"

#include "wgqed/error.hpp"
#include "wgqed/expm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wgqed {

namespace {

constexpr Complex kI{0.0, 1.0};

// Trace drift tolerated per step before the state is renormalized, and the
// drift at which integration is declared broken.
constexpr double kRenormalizeDrift = 1e-12;
constexpr double kMaxTraceDrift = 1e-8;
constexpr double kNegativityAbort = -1e-6;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Continuous extension (Hairer, Norsett & Wanner, DOPRI5 dense output).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

// Step-size controller with PI stabilization.
constexpr double kSafety = 0.9;
constexpr double kMinShrink = 0.2;
constexpr double kMaxGrowth = 10.0;
constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - kBeta * 0.75;

double min_eigenvalue(const ComplexMatrix& m) {
    const ComplexMatrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double scaled_max(const ComplexMatrix& v, const ComplexMatrix& y, const IntegratorOptions& opts) {
    double worst = 0.0;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        const double sc = opts.abs_tol + opts.rel_tol * std::sqrt(std::norm(y(k)));
        worst = std::max(worst, std::sqrt(std::norm(v(k))) / sc);
    }
    return worst;
}

// Re-Hermitize in place; renormalize when the trace has moved. Returns the
// drift measured before any renormalization.
double hermiticity_defect(const ComplexMatrix& m) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i <= j; ++i) {
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return worst;
}

// Re-Hermitizes `m` and renormalizes its trace if it drifted. Returns the drift.
double stabilize(ComplexMatrix& m, double reference_trace, bool& renormalized) {
    m = (0.5 * (m + m.adjoint())).eval();
    const double trace = m.trace().real();
    const double drift = std::abs(trace - reference_trace);
    renormalized = drift > kRenormalizeDrift && trace != 0.0;
    if (renormalized) {
        m *= reference_trace / trace;
    }
    return drift;
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    require_square_finite(m_, "DensityMatrix");
}

double DensityMatrix::expectation(const ComplexMatrix& op) const {
    if (op.rows() != m_.rows() || op.cols() != m_.cols()) {
        throw ValidationError("expectation: operator dimension does not match state");
    }
    // Tr(op rho) = sum_ij op_ij rho_ji
    return (op.transpose().cwiseProduct(m_)).sum().real();
}

Physicality check_physicality(const ComplexMatrix& rho) {
    Physicality p;
    p.hermiticity_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    p.trace_drift = std::abs(rho.trace() - Complex(1.0, 0.0));
    p.min_eigenvalue = min_eigenvalue(rho);
    return p;
}

void IntegratorOptions::validate() const {
    if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) {
        throw ValidationError("rel_tol must be finite and > 0");
    }
    if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) {
        throw ValidationError("abs_tol must be finite and > 0");
    }
    if (!(max_step > 0.0)) {
        throw ValidationError("max_step must be > 0");
    }
    if (!(initial_step >= 0.0) || !std::isfinite(initial_step)) {
        throw ValidationError("initial_step must be finite and >= 0");
    }
}

DensityMatrix initial_state(const HilbertSpace& space) {
    const int d = space.total_dim();
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    const int k = space.index(1, 0, 0);
    rho(k, k) = 1.0;
    return DensityMatrix(std::move(rho));
}

LindbladGenerator::LindbladGenerator(const SystemParams& params) {
    const ComplexMatrix h = hamiltonian(params);
    const std::vector<ComplexMatrix> jumps = collapse_operators(params);
    dim_ = static_cast<int>(h.rows());

    ComplexMatrix h_eff = h;
    for (const auto& l : jumps) {
        h_eff -= 0.5 * kI * (l.adjoint() * l);
    }

    auto sparsify = [](const ComplexMatrix& m) {
        SparseOp op;
        for (int r = 0; r < m.rows(); ++r) {
            for (int c = 0; c < m.cols(); ++c) {
                if (m(r, c) != Complex(0.0, 0.0)) op.push_back({r, c, m(r, c)});
            }
        }
        return op;
    };
    h_eff_ = sparsify(h_eff);
    for (const auto& l : jumps) {
        jumps_.push_back(sparsify(l));
    }
}

namespace {

// acc += c * x, written out in real arithmetic so the hot loop avoids the
// library's NaN-recovery path for complex products.
inline void fused_add(Complex& acc, Complex c, Complex x) {
    const double cr = c.real(), ci = c.imag(), xr = x.real(), xi = x.imag();
    acc = Complex(acc.real() + (cr * xr - ci * xi), acc.imag() + (cr * xi + ci * xr));
}

}  // namespace

void LindbladGenerator::apply(const ComplexMatrix& rho, ComplexMatrix& out) const {
    const int d = dim_;
    out.setZero(d, d);
    const Complex* in = rho.data();
    Complex* o = out.data();
    // -i H_eff rho + i rho H_eff^dag (column-major storage: (r, c) at r + c * d)
    for (const Entry& e : h_eff_) {
        const Complex left = Complex(e.value.imag(), -e.value.real());    // -i v
        const Complex right = Complex(e.value.imag(), e.value.real());    // i conj(v)
        for (int j = 0; j < d; ++j) {
            fused_add(o[e.row + j * d], left, in[e.col + j * d]);
        }
        Complex* ocol = o + e.row * d;
        const Complex* icol = in + e.col * d;
        for (int j = 0; j < d; ++j) {
            fused_add(ocol[j], right, icol[j]);
        }
    }
    // L rho L^dag
    for (const SparseOp& jump : jumps_) {
        for (const Entry& a : jump) {
            for (const Entry& b : jump) {
                Complex w = in[a.col + b.col * d];
                const Complex bc = std::conj(b.value);
                w = Complex(w.real() * bc.real() - w.imag() * bc.imag(),
                            w.real() * bc.imag() + w.imag() * bc.real());
                fused_add(o[a.row + b.row * d], a.value, w);
            }
        }
    }
}

ComplexMatrix lindblad_rhs(const DensityMatrix& rho, const SystemParams& params) {
    const LindbladGenerator gen(params);
    if (rho.dim() != gen.dim()) {
        throw ValidationError("lindblad_rhs: state dimension " + std::to_string(rho.dim()) +
                              " does not match Hilbert space dimension " +
                              std::to_string(gen.dim()));
    }
    ComplexMatrix out;
    gen.apply(rho.matrix(), out);
    return out;
}

std::vector<double> uniform_grid(double t_end, std::size_t points) {
    if (points < 2 || !(t_end > 0.0) || !std::isfinite(t_end)) {
        throw ValidationError("uniform_grid: need points >= 2 and finite t_end > 0");
    }
    std::vector<double> grid(points);
    const double n = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = t_end * (static_cast<double>(i) / n);
    }
    return grid;
}

Trajectory evolve(const DensityMatrix& rho0, const SystemParams& params,
                  std::span<const double> t_grid, const IntegratorOptions& opts) {
    return evolve(rho0, params, t_grid, opts, SampleObserver{});
}

Trajectory evolve(const DensityMatrix& rho0, const SystemParams& params,
                  std::span<const double> t_grid, const IntegratorOptions& opts,
                  const SampleObserver& observer) {
    opts.validate();
    if (t_grid.empty() || t_grid.front() != 0.0) {
        throw ValidationError("evolve: time grid must start at 0");
    }
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1]) || !std::isfinite(t_grid[i])) {
            throw ValidationError("evolve: time grid must be finite and strictly increasing");
        }
    }
    const LindbladGenerator gen(params);
    if (rho0.dim() != gen.dim()) {
        throw ValidationError("evolve: initial state dimension does not match parameters");
    }

    Trajectory traj;
    traj.params = params;
    traj.times.assign(t_grid.begin(), t_grid.end());
    traj.states.reserve(t_grid.size());
    traj.states.push_back(rho0);
    IntegrationStats& stats = traj.stats;
    stats.min_eigenvalue = min_eigenvalue(rho0.matrix());
    stats.max_hermiticity_defect = hermiticity_defect(rho0.matrix());

    const double reference_trace = rho0.trace().real();
    const HilbertSpace space = params.space();
    std::vector<double> quanta(static_cast<std::size_t>(space.total_dim()));
    for (std::size_t i = 0; i < quanta.size(); ++i) {
        const int n = space.n_fock();
        const int k = static_cast<int>(i);
        quanta[i] = k / (2 * n) + (k / n) % 2 + k % n;
    }
    auto excitations = [&](const ComplexMatrix& m) {
        double sum = 0.0;
        for (std::size_t i = 0; i < quanta.size(); ++i) {
            sum += quanta[i] * m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
        }
        return sum;
    };
    const double t_end = t_grid.back();
    const int d = gen.dim();

    ComplexMatrix y = rho0.matrix();
    ComplexMatrix y1(d, d), stage(d, d), err(d, d);
    ComplexMatrix rc2(d, d), rc3(d, d), rc4(d, d), rc5(d, d);
    ComplexMatrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), k5(d, d), k6(d, d), k7(d, d);
    auto f = [&](const ComplexMatrix& in, ComplexMatrix& out) {
        gen.apply(in, out);
        ++stats.rhs_evaluations;
    };

    bool stopped = observer && !observer(0, traj.states.front());
    auto record_sample = [&](ComplexMatrix sample, double t_sample) {
        stats.max_hermiticity_defect = std::max(stats.max_hermiticity_defect, hermiticity_defect(sample));
        bool renorm = false;
        stabilize(sample, reference_trace, renorm);
        const double lambda = min_eigenvalue(sample);
        if (lambda < kNegativityAbort) {
            throw IntegrationError(t_sample, "density matrix lost positivity (eigenvalue " +
                                                 std::to_string(lambda) + ")");
        }
        stats.min_eigenvalue = std::min(stats.min_eigenvalue, lambda);
        traj.states.emplace_back(std::move(sample));
        if (observer && !observer(traj.states.size() - 1, traj.states.back())) stopped = true;
    };

    auto finish = [&]() -> Trajectory {
        traj.times.resize(traj.states.size());
        return std::move(traj);
    };
    if (t_grid.size() == 1 || stopped) return finish();

    f(y, k1);

    // Starting step (Hairer's estimate with a max norm).
    double h = opts.initial_step;
    if (h == 0.0) {
        const double d0 = scaled_max(y, y, opts);
        const double d1n = scaled_max(k1, y, opts);
        double h0 = (d0 < 1e-10 || d1n < 1e-10) ? 1e-6 : 0.01 * d0 / d1n;
        h0 = std::min({h0, opts.max_step, t_end});
        stage.noalias() = y + h0 * k1;
        f(stage, k2);
        const double d2 = scaled_max(k2 - k1, y, opts) / h0;
        const double der = std::max(d1n, d2);
        const double h1 =
            der <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / der, 1.0 / 5.0);
        h = std::min({100.0 * h0, h1, opts.max_step});
    }
    h = std::min(h, opts.max_step);

    double t = 0.0;
    double fac_old = 1e-4;
    bool last_rejected = false;
    std::size_t next = 1;

    while (next < t_grid.size()) {
        const double remaining = t_end - t;
        bool last = false;
        if (h >= remaining) {
            h = remaining;
            last = true;
        }
        if (h <= 1e-14 * std::max(1.0, std::abs(t))) {
            throw IntegrationError(t, "step size underflow");
        }

        stage.noalias() = y + h * (a21 * k1);
        f(stage, k2);
        stage.noalias() = y + h * (a31 * k1 + a32 * k2);
        f(stage, k3);
        stage.noalias() = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        f(stage, k4);
        stage.noalias() = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        f(stage, k5);
        stage.noalias() = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        f(stage, k6);
        y1.noalias() = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        f(y1, k7);
        err.noalias() = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double err_norm = 0.0;
        for (Eigen::Index k = 0; k < err.size(); ++k) {
            const double sc = opts.abs_tol + opts.rel_tol * std::sqrt(std::max(std::norm(y(k)),
                                                                               std::norm(y1(k))));
            err_norm = std::max(err_norm, std::sqrt(std::norm(err(k))) / sc);
        }

        const double fac11 = std::pow(err_norm, kExpo);
        if (err_norm > 1.0) {
            ++stats.rejected_steps;
            h /= std::min(1.0 / kMinShrink, fac11 / kSafety);
            last_rejected = true;
            continue;
        }

        ++stats.accepted_steps;
        const double t_new = last ? t_end : t + h;

        // Dense output on (t, t_new].
        bool have_dense = false;
        while (!stopped && next < t_grid.size() && t_grid[next] <= t_new) {
            if (t_grid[next] == t_new) {
                record_sample(y1, t_grid[next]);
            } else {
                if (!have_dense) {
                    rc2.noalias() = y1 - y;
                    rc3.noalias() = h * k1 - rc2;
                    rc4.noalias() = rc2 - h * k7 - rc3;
                    rc5.noalias() = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
                    have_dense = true;
                }
                const double theta = (t_grid[next] - t) / h;
                const double theta1 = 1.0 - theta;
                record_sample(y + theta * (rc2 + theta1 * (rc3 + theta * (rc4 + theta1 * rc5))),
                              t_grid[next]);
            }
            ++next;
        }

        stats.max_hermiticity_defect = std::max(stats.max_hermiticity_defect, hermiticity_defect(y1));
        bool renormalized = false;
        const double drift = stabilize(y1, reference_trace, renormalized);
        stats.max_trace_drift = std::max(stats.max_trace_drift, drift);
        stats.max_excitation_increase =
            std::max(stats.max_excitation_increase, excitations(y1) - excitations(y));
        if (drift > kMaxTraceDrift) {
            throw IntegrationError(t_new, "trace drift " + std::to_string(drift) +
                                              " exceeds tolerance");
        }
        y.swap(y1);
        t = t_new;
        if (renormalized) {
            ++stats.renormalizations;
            f(y, k1);
        } else {
            k1.swap(k7);
        }

        double fac = fac11 / std::pow(std::max(fac_old, 1e-4), kBeta);
        fac = std::clamp(fac / kSafety, 1.0 / kMaxGrowth, 1.0 / kMinShrink);
        double h_new = h / fac;
        if (last_rejected) h_new = std::min(h_new, h);
        fac_old = std::max(err_norm, 1e-4);
        last_rejected = false;
        h = std::min(h_new, opts.max_step);
        if (stopped) break;
    }
    return finish();
}

ComplexVector vectorize(const ComplexMatrix& m) {
    return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvectorize(const ComplexVector& v) {
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    if (d * d != v.size()) {
        throw ValidationError("unvectorize: length is not a perfect square");
    }
    return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

ComplexMatrix liouvillian(const SystemParams& params) {
    const ComplexMatrix h = hamiltonian(params);
    const Eigen::Index d = h.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    ComplexMatrix l = -kI * (kron(id, h) - kron(h.transpose(), id));
    for (const ComplexMatrix& jump : collapse_operators(params)) {
        const ComplexMatrix n = jump.adjoint() * jump;
        l += kron(jump.conjugate(), jump) - 0.5 * (kron(id, n) + kron(n.transpose(), id));
    }
    return l;
}

DensityMatrix evolve_expm(const DensityMatrix& rho0, const SystemParams& params, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw ValidationError("evolve_expm: t must be finite and >= 0");
    }
    if (t == 0.0) return rho0;
    const ComplexMatrix l = liouvillian(params);
    if (l.rows() != static_cast<Eigen::Index>(rho0.dim()) * rho0.dim()) {
        throw ValidationError("evolve_expm: initial state dimension does not match parameters");
    }
    const ComplexMatrix propagator = expm(l * t);
    return DensityMatrix(unvectorize(propagator * vectorize(rho0.matrix())));
}

}  // namespace wgqed
