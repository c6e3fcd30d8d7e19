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

#include <bit>
#include <span>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "kdvqe/circuit.hpp"
#include "kdvqe/errors.hpp"
#include "kdvqe/pauli.hpp"

namespace kdvqe {

/// Dense conversions are for desk-scale oracles and tests only.
inline constexpr int dense_qubit_cap = 8;

inline void check_dense_cap(int n_qubits) {
    if (n_qubits > dense_qubit_cap) {
        throw unsupported_size_error("dense conversion limited to " +
                                     std::to_string(dense_qubit_cap) + " qubits");
    }
}

inline Eigen::MatrixXcd to_dense(const PauliSum& sum) {
    check_dense_cap(sum.n_qubits());
    const std::size_t dim = state_dim(sum.n_qubits());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    for (const PauliTerm& term : sum.terms()) {
        const PauliMasks masks = pauli_masks(term.string);
        const cplx yphase = i_power(masks.y_count);
        for (std::size_t x = 0; x < dim; ++x) {
            const int parity = std::popcount(x & masks.phase_mask) & 1;
            const cplx phase = parity ? -yphase : yphase;
            m(static_cast<Eigen::Index>(x ^ masks.x_mask), static_cast<Eigen::Index>(x)) +=
                term.coeff * phase;
        }
    }
    return m;
}

/// Unitary of a bound circuit, built column by column.
inline Eigen::MatrixXcd to_dense(const Circuit& circuit, std::span<const double> params = {}) {
    check_dense_cap(circuit.n_qubits());
    const std::size_t dim = state_dim(circuit.n_qubits());
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        Statevector basis;
        basis.n_qubits = circuit.n_qubits();
        basis.amps.assign(dim, cplx{0, 0});
        basis.amps[col] = cplx{1, 0};
        const Statevector out = apply_circuit(basis, circuit, params);
        for (std::size_t row = 0; row < dim; ++row) {
            m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = out.amps[row];
        }
    }
    return m;
}

/// Eigenvalues of a Hermitian matrix, ascending.
inline Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

} // namespace kdvqe
