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

// Dense operators on the composite space qubit A (x) qubit B (x) waveguide mode,
// and the Hamiltonian of the two-qubit / single-mode exchange model.
//
// Units: configuration values are ordinary frequencies in GHz. Every rate that
// enters an equation of motion is converted to angular units (rad/ns) by a
// factor 2*pi; time is in ns and hbar = 1.

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <vector>

namespace wgqed {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// GHz (ordinary) -> rad/ns.
constexpr double angular(double ghz) noexcept { return kTwoPi * ghz; }

enum class Slot { QubitA, QubitB, Mode };

const char* slot_name(Slot slot) noexcept;

// Factor order (A, B, mode); qubit index 0 = |g>, 1 = |e>; Fock index = photon
// number.
class HilbertSpace {
public:
    static constexpr int kMaxFock = 5;

    explicit HilbertSpace(int n_fock);

    int n_fock() const noexcept { return n_fock_; }
    int total_dim() const noexcept { return 4 * n_fock_; }
    int local_dim(Slot slot) const noexcept { return slot == Slot::Mode ? n_fock_ : 2; }

    // Basis index of |i_a, i_b, n>.
    int index(int qubit_a, int qubit_b, int photons) const;

    friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

private:
    int n_fock_;
};

struct SystemParams {
    double omega_q = 6.0;  // GHz
    double omega_w = 6.0;  // GHz
    double g_qw = 0.05;    // GHz
    double gamma = 0.0;    // GHz
    double kappa = 0.0;    // GHz
    int n_fock = 2;

    // Throws ValidationError naming the offending field.
    void validate() const;

    double detuning() const noexcept;
    HilbertSpace space() const { return HilbertSpace(n_fock); }

    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

// Throws ValidationError if the matrix is not square or has non-finite entries.
void require_square_finite(const ComplexMatrix& m, const char* what);

// Kronecker product; entry (i*db + k, j*db + l) = a(i,j) * b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Truncated bosonic annihilation operator, a|n> = sqrt(n)|n-1>.
ComplexMatrix annihilation(int n_fock);

// sigma^- = |g><e|.
ComplexMatrix qubit_lowering();

// I (x) ... (x) op (x) ... (x) I with op placed at `slot`.
ComplexMatrix embed(const ComplexMatrix& op, Slot slot, const HilbertSpace& space);

// Projector onto the excited state for qubits, photon-number operator for the
// mode.
ComplexMatrix population_operator(Slot slot, const HilbertSpace& space);

// sigma+_A sigma-_A + sigma+_B sigma-_B + a^dag a.
ComplexMatrix excitation_number(const HilbertSpace& space);

// H / hbar in rad/ns.
ComplexMatrix hamiltonian(const SystemParams& params);

// Collapse operators with the rates folded in:
// sqrt(2 pi gamma) sigma-_A, sqrt(2 pi gamma) sigma-_B, sqrt(2 pi kappa) a.
// Channels with zero rate are omitted.
std::vector<ComplexMatrix> collapse_operators(const SystemParams& params);

}  // namespace wgqed
