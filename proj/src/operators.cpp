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

#include "wgqed/operators.hpp"

#include "wgqed/error.hpp"

#include <cmath>
#include <string>

namespace wgqed {

const char* slot_name(Slot slot) noexcept {
    switch (slot) {
        case Slot::QubitA: return "qubit_a";
        case Slot::QubitB: return "qubit_b";
        case Slot::Mode: return "mode";
    }
    return "?";
}

HilbertSpace::HilbertSpace(int n_fock) : n_fock_(n_fock) {
    if (n_fock < 2 || n_fock > kMaxFock) {
        throw ValidationError("n_fock must lie in [2, " + std::to_string(kMaxFock) +
                              "], got " + std::to_string(n_fock));
    }
}

int HilbertSpace::index(int qubit_a, int qubit_b, int photons) const {
    if (qubit_a < 0 || qubit_a > 1 || qubit_b < 0 || qubit_b > 1 || photons < 0 ||
        photons >= n_fock_) {
        throw ValidationError("basis label out of range");
    }
    return qubit_a * (2 * n_fock_) + qubit_b * n_fock_ + photons;
}

namespace {

void require_field(bool ok, const char* name, const char* constraint, double value) {
    if (!ok) {
        throw ValidationError(std::string(name) + " must be " + constraint + ", got " +
                              std::to_string(value));
    }
}

}  // namespace

void SystemParams::validate() const {
    require_field(std::isfinite(omega_q) && omega_q > 0.0, "omega_q", "finite and > 0", omega_q);
    require_field(std::isfinite(omega_w) && omega_w > 0.0, "omega_w", "finite and > 0", omega_w);
    require_field(std::isfinite(g_qw) && g_qw >= 0.0, "g_qw", "finite and >= 0", g_qw);
    require_field(std::isfinite(gamma) && gamma >= 0.0, "gamma", "finite and >= 0", gamma);
    require_field(std::isfinite(kappa) && kappa >= 0.0, "kappa", "finite and >= 0", kappa);
    if (n_fock < 2 || n_fock > HilbertSpace::kMaxFock) {
        throw ValidationError("n_fock must lie in [2, " + std::to_string(HilbertSpace::kMaxFock) +
                              "], got " + std::to_string(n_fock));
    }
}

double SystemParams::detuning() const noexcept { return std::abs(omega_q - omega_w); }

void require_square_finite(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw ValidationError(std::string(what) + ": matrix must be square and non-empty");
    }
    if (!m.allFinite()) {
        throw ValidationError(std::string(what) + ": matrix has non-finite entries");
    }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    ComplexMatrix out(ra * rb, ca * cb);
    for (Eigen::Index i = 0; i < ra; ++i) {
        for (Eigen::Index j = 0; j < ca; ++j) {
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix annihilation(int n_fock) {
    if (n_fock < 2) {
        throw ValidationError("annihilation: n_fock must be >= 2 to hold one photon");
    }
    ComplexMatrix a = ComplexMatrix::Zero(n_fock, n_fock);
    for (int n = 1; n < n_fock; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

ComplexMatrix qubit_lowering() {
    ComplexMatrix s = ComplexMatrix::Zero(2, 2);
    s(0, 1) = 1.0;
    return s;
}

ComplexMatrix embed(const ComplexMatrix& op, Slot slot, const HilbertSpace& space) {
    const int local = space.local_dim(slot);
    if (op.rows() != local || op.cols() != local) {
        throw ValidationError(std::string("embed: operator of dimension ") +
                              std::to_string(op.rows()) + " does not fit slot " +
                              slot_name(slot) + " of dimension " + std::to_string(local));
    }
    const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
    const ComplexMatrix idm = ComplexMatrix::Identity(space.n_fock(), space.n_fock());
    switch (slot) {
        case Slot::QubitA: return kron(kron(op, id2), idm);
        case Slot::QubitB: return kron(kron(id2, op), idm);
        case Slot::Mode: return kron(kron(id2, id2), op);
    }
    return {};
}

ComplexMatrix population_operator(Slot slot, const HilbertSpace& space) {
    const ComplexMatrix lower =
        slot == Slot::Mode ? annihilation(space.n_fock()) : qubit_lowering();
    return embed(lower.adjoint() * lower, slot, space);
}

ComplexMatrix excitation_number(const HilbertSpace& space) {
    return population_operator(Slot::QubitA, space) + population_operator(Slot::QubitB, space) +
           population_operator(Slot::Mode, space);
}

ComplexMatrix hamiltonian(const SystemParams& params) {
    params.validate();
    const HilbertSpace space = params.space();
    const ComplexMatrix sa = embed(qubit_lowering(), Slot::QubitA, space);
    const ComplexMatrix sb = embed(qubit_lowering(), Slot::QubitB, space);
    const ComplexMatrix a = embed(annihilation(space.n_fock()), Slot::Mode, space);

    const double wq = angular(params.omega_q);
    const double ww = angular(params.omega_w);
    const double g = angular(params.g_qw);

    ComplexMatrix h = wq * (sa.adjoint() * sa + sb.adjoint() * sb) + ww * (a.adjoint() * a);
    h += g * (sa.adjoint() * a + sa * a.adjoint() + sb.adjoint() * a + sb * a.adjoint());
    return h;
}

std::vector<ComplexMatrix> collapse_operators(const SystemParams& params) {
    params.validate();
    const HilbertSpace space = params.space();
    std::vector<ComplexMatrix> ops;
    if (params.gamma > 0.0) {
        const double s = std::sqrt(angular(params.gamma));
        ops.push_back(s * embed(qubit_lowering(), Slot::QubitA, space));
        ops.push_back(s * embed(qubit_lowering(), Slot::QubitB, space));
    }
    if (params.kappa > 0.0) {
        ops.push_back(std::sqrt(angular(params.kappa)) *
                      embed(annihilation(space.n_fock()), Slot::Mode, space));
    }
    return ops;
}

}  // namespace wgqed
