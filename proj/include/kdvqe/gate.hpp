// Copyright 2026 The kdvqe Authors
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

#include <array>
#include <cmath>
#include <stdexcept>

#include "kdvqe/statevector.hpp"

namespace kdvqe {

/// Supported gate set: fixed single-qubit gates {I, X, H, phase}, CNOT, and
/// single-angle rotations {ry, rz}. Rotations are the only gates that may
/// carry a free parameter.
enum class GateKind {
    identity,
    pauli_x,
    hadamard,
    phase,
    cnot,
    ry,
    rz,
};

inline const char* to_string(GateKind kind) {
    switch (kind) {
        case GateKind::identity: return "I";
        case GateKind::pauli_x: return "X";
        case GateKind::hadamard: return "H";
        case GateKind::phase: return "phase";
        case GateKind::cnot: return "CNOT";
        case GateKind::ry: return "ry";
        case GateKind::rz: return "rz";
    }
    return "?";
}

inline bool is_rotation(GateKind kind) { return kind == GateKind::ry || kind == GateKind::rz; }

struct Gate {
    GateKind kind = GateKind::identity;
    int target = 0;
    int control = -1;   // CNOT only
    double angle = 0.0; // phase angle or fixed rotation angle
    int param = -1;     // >= 0: free-parameter slot feeding the angle
};

/// Row-major 2x2 complex matrix.
using Mat2 = std::array<cplx, 4>;

/// Matrix of a single-qubit gate kind at the given angle. The rotations are
/// exp(-i*angle*Y/2) and exp(-i*angle*Z/2); phase(a) = diag(1, e^{ia}).
inline Mat2 gate_matrix(GateKind kind, double angle = 0.0) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case GateKind::identity:
            return {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0}};
        case GateKind::pauli_x:
            return {cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}};
        case GateKind::hadamard:
            return {cplx{inv_sqrt2, 0}, cplx{inv_sqrt2, 0}, cplx{inv_sqrt2, 0},
                    cplx{-inv_sqrt2, 0}};
        case GateKind::phase:
            return {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, std::polar(1.0, angle)};
        case GateKind::ry: {
            const double c = std::cos(angle / 2.0);
            const double s = std::sin(angle / 2.0);
            return {cplx{c, 0}, cplx{-s, 0}, cplx{s, 0}, cplx{c, 0}};
        }
        case GateKind::rz:
            return {std::polar(1.0, -angle / 2.0), cplx{0, 0}, cplx{0, 0},
                    std::polar(1.0, angle / 2.0)};
        case GateKind::cnot:
            break;
    }
    throw std::invalid_argument("gate_matrix: not a single-qubit gate kind");
}

inline void apply_single_qubit(Statevector& psi, int qubit, const Mat2& m) {
    const std::size_t stride = std::size_t{1} << qubit_bit(psi.n_qubits, qubit);
    const std::size_t dim = psi.dim();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const cplx a0 = psi.amps[i];
            const cplx a1 = psi.amps[i + stride];
            psi.amps[i] = m[0] * a0 + m[1] * a1;
            psi.amps[i + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

inline void apply_cnot(Statevector& psi, int control, int target) {
    const std::size_t cbit = std::size_t{1} << qubit_bit(psi.n_qubits, control);
    const std::size_t tbit = std::size_t{1} << qubit_bit(psi.n_qubits, target);
    const std::size_t dim = psi.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cbit) != 0 && (i & tbit) == 0) {
            std::swap(psi.amps[i], psi.amps[i | tbit]);
        }
    }
}

} // namespace kdvqe
