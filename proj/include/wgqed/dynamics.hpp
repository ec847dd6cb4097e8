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

// Lindblad evolution of the two-qubit / waveguide-mode density matrix.
//
//   d rho / dt = -i [H, rho] + sum_k ( L_k rho L_k^dag - 1/2 {L_k^dag L_k, rho} )
//
// with amplitude-damping collapse operators on both qubits (rate gamma) and
// photon loss on the mode (rate kappa). Two independent routes are provided:
// `evolve` (adaptive Dormand-Prince 5(4) with dense output) and `evolve_expm`
// (exponential of the column-stacked Liouvillian), the latter for checking the
// former.

#include "wgqed/operators.hpp"

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace wgqed {

class DensityMatrix {
public:
    // Checks shape and finiteness only; physicality is reported separately by
    // `check_physicality` so that intermediate states can be inspected.
    explicit DensityMatrix(ComplexMatrix m);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    int dim() const noexcept { return static_cast<int>(m_.rows()); }
    Complex trace() const { return m_.trace(); }

    // Re Tr(op * rho).
    double expectation(const ComplexMatrix& op) const;

private:
    ComplexMatrix m_;
};

struct Physicality {
    double hermiticity_defect = 0.0;  // max |rho - rho^dag|
    double trace_drift = 0.0;         // |Tr rho - 1|
    double min_eigenvalue = 0.0;
};

Physicality check_physicality(const ComplexMatrix& rho);

struct IntegratorOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-11;
    double max_step = std::numeric_limits<double>::infinity();  // ns
    double initial_step = 0.0;  // ns; 0 selects a starting step automatically

    void validate() const;

    friend bool operator==(const IntegratorOptions&, const IntegratorOptions&) = default;
};

struct IntegrationStats {
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
    std::size_t rhs_evaluations = 0;
    std::size_t renormalizations = 0;
    double max_trace_drift = 0.0;  // per accepted step, before renormalization
    double min_eigenvalue = 0.0;   // smallest eigenvalue seen at any sample
    double max_hermiticity_defect = 0.0;  // of raw step results, before re-Hermitization
    // Largest growth of <N_exc> over one accepted step; the dynamics never
    // create excitations, so this stays at rounding level.
    double max_excitation_increase = 0.0;
};

struct Trajectory {
    std::vector<double> times;  // ns
    std::vector<DensityMatrix> states;
    SystemParams params;
    IntegrationStats stats;
};

// |e>_A (x) |g>_B (x) |0><...|.
DensityMatrix initial_state(const HilbertSpace& space);

// Right-hand side of the master equation, precomputed for one parameter set.
// Internally H_eff = H - i/2 sum_k L_k^dag L_k and every L_k are stored as
// sparse triplet lists; the hot loop of `evolve` runs through `apply`.
class LindbladGenerator {
public:
    explicit LindbladGenerator(const SystemParams& params);

    int dim() const noexcept { return dim_; }

    // out = d rho / dt. `out` must not alias `rho`.
    void apply(const ComplexMatrix& rho, ComplexMatrix& out) const;

private:
    struct Entry {
        int row;
        int col;
        Complex value;
    };
    using SparseOp = std::vector<Entry>;

    int dim_;
    SparseOp h_eff_;
    std::vector<SparseOp> jumps_;
};

ComplexMatrix lindblad_rhs(const DensityMatrix& rho, const SystemParams& params);

// Samples the solution exactly at `t_grid` (strictly increasing, starting at 0).
// After each accepted step the state is re-Hermitized and, if its trace moved by
// more than 1e-12, renormalized.
//
// Throws IntegrationError on step-size underflow, on trace drift above 1e-8
// within a single step, or on a sample with an eigenvalue below -1e-6.
Trajectory evolve(const DensityMatrix& rho0, const SystemParams& params,
                  std::span<const double> t_grid, const IntegratorOptions& opts = {});

// Called with each recorded sample (index into t_grid, state). Returning false
// ends the integration; the trajectory then holds the samples up to and
// including that one.
using SampleObserver = std::function<bool(std::size_t, const DensityMatrix&)>;

Trajectory evolve(const DensityMatrix& rho0, const SystemParams& params,
                  std::span<const double> t_grid, const IntegratorOptions& opts,
                  const SampleObserver& observer);

// Uniform grid of `points` samples on [0, t_end].
std::vector<double> uniform_grid(double t_end, std::size_t points);

// Column-stacking vectorization, vec(A X B) = (B^T (x) A) vec(X).
ComplexVector vectorize(const ComplexMatrix& m);
ComplexMatrix unvectorize(const ComplexVector& v);

// d^2 x d^2 generator with vec(d rho / dt) = L vec(rho).
ComplexMatrix liouvillian(const SystemParams& params);

// unvec(exp(L t) vec(rho0)).
DensityMatrix evolve_expm(const DensityMatrix& rho0, const SystemParams& params, double t);

}  // namespace wgqed
