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
#include <string>

#include "kdvqe/dense.hpp"
#include "kdvqe/pauli.hpp"
#include "kdvqe/statevector.hpp"

namespace kdvqe {

/// Two-site Hubbard chain on four qubits. Mode/qubit layout:
///   qubit 0 = site 1 spin-up,  qubit 1 = site 2 spin-up,
///   qubit 2 = site 1 spin-down, qubit 3 = site 2 spin-down.
/// Within each spin sector the two modes are adjacent in the Jordan-Wigner
/// ordering, so the hopping terms come out two-local with no Z strings.
inline constexpr int hubbard_n_qubits = 4;

struct HubbardParams {
    double t = 1.0; // hopping amplitude
    double u = 1.0; // on-site interaction
};

/// Jordan-Wigner image of the two-site Hubbard Hamiltonian:
///   hopping     -> -(t/2) (XXII + YYII + IIXX + IIYY)
///   interaction -> (u/2) IIII - (u/4)(ZIII + IZII + IIZI + IIIZ)
///                  + (u/4)(ZIZI + IZIZ)
/// Eleven distinct terms for generic t, u; near-zero coefficients are dropped.
inline PauliSum build_hubbard_hamiltonian(const HubbardParams& p = {}) {
    if (!std::isfinite(p.t) || !std::isfinite(p.u)) {
        throw std::invalid_argument("build_hubbard_hamiltonian: t and u must be finite");
    }
    PauliSum h(hubbard_n_qubits);
    const double hop = -0.5 * p.t;
    h.add_term(hop, "XXII");
    h.add_term(hop, "YYII");
    h.add_term(hop, "IIXX");
    h.add_term(hop, "IIYY");
    h.add_term(0.5 * p.u, "IIII");
    h.add_term(-0.25 * p.u, "ZIII");
    h.add_term(-0.25 * p.u, "IZII");
    h.add_term(-0.25 * p.u, "IIZI");
    h.add_term(-0.25 * p.u, "IIIZ");
    h.add_term(0.25 * p.u, "ZIZI");
    h.add_term(0.25 * p.u, "IZIZ");
    h.compress();
    return h;
}

/// Total particle number, sum_j (I - Z_j)/2. Eigenvalues 0..4.
inline PauliSum particle_number_operator() {
    PauliSum n(hubbard_n_qubits);
    n.add_term(2.0, "IIII");
    n.add_term(-0.5, "ZIII");
    n.add_term(-0.5, "IZII");
    n.add_term(-0.5, "IIZI");
    n.add_term(-0.5, "IIIZ");
    return n;
}

struct GroundState {
    double energy = 0.0;
    Statevector state;
};

/// Dense-diagonalization oracle: lowest eigenvalue and a unit eigenvector.
/// Capped at dense_qubit_cap qubits.
inline GroundState exact_ground(const PauliSum& observable) {
    const Eigen::MatrixXcd m = to_dense(observable);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("exact_ground: eigensolver failed");
    }
    GroundState gs;
    gs.energy = solver.eigenvalues()(0);
    gs.state.n_qubits = observable.n_qubits();
    const auto vec = solver.eigenvectors().col(0);
    gs.state.amps.assign(vec.data(), vec.data() + vec.size());
    return gs;
}

inline constexpr std::array<const char*, 6> trial_labels = {
    "psi_I", "psi_II", "psi_III", "psi_IV", "psi_V", "psi_VI",
};

/// The six half-filling product states in label order psi_I..psi_VI.
/// psi_I puts both fermions on site 1. psi_II/psi_III are the opposite-spin,
/// opposite-site pairs, psi_IV/psi_V the spin-polarized pairs, and psi_VI
/// (both fermions on site 2) is the configuration the Fourier block maps to
/// the doubly-bonding momentum state, the lowest-energy start of the six.
inline std::array<std::string, 6> half_filling_basis_states() {
    return {"1010", "1001", "0110", "1100", "0011", "0101"};
}

} // namespace kdvqe
