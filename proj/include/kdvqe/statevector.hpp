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

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kdvqe {

using cplx = std::complex<double>;

/// Dense amplitude vector over the 2^n computational basis states.
///
/// Index convention: character i of a bitstring belongs to qubit i, and
/// qubit 0 occupies the highest-order bit of the amplitude index, so "10"
/// on two qubits is basis index 2. This convention is fixed across the
/// whole library.
struct Statevector {
    int n_qubits = 0;
    std::vector<cplx> amps;

    std::size_t dim() const { return amps.size(); }
};

inline std::size_t state_dim(int n_qubits) { return std::size_t{1} << n_qubits; }

/// Bit position of qubit q inside an amplitude index.
inline int qubit_bit(int n_qubits, int q) { return n_qubits - 1 - q; }

inline std::size_t bits_to_index(std::string_view bits) {
    std::size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bits_to_index: bitstring must contain only 0/1");
        }
        index = (index << 1) | static_cast<std::size_t>(c == '1');
    }
    return index;
}

inline std::string index_to_bits(std::size_t index, int n_qubits) {
    std::string bits(static_cast<std::size_t>(n_qubits), '0');
    for (int q = 0; q < n_qubits; ++q) {
        if ((index >> qubit_bit(n_qubits, q)) & 1U) {
            bits[static_cast<std::size_t>(q)] = '1';
        }
    }
    return bits;
}

/// Computational basis state |bits>.
inline Statevector new_basis_state(int n_qubits, std::string_view bits) {
    if (n_qubits <= 0) {
        throw std::invalid_argument("new_basis_state: n_qubits must be positive");
    }
    if (bits.size() != static_cast<std::size_t>(n_qubits)) {
        throw std::invalid_argument("new_basis_state: bitstring length does not match n_qubits");
    }
    Statevector psi;
    psi.n_qubits = n_qubits;
    psi.amps.assign(state_dim(n_qubits), cplx{0.0, 0.0});
    psi.amps[bits_to_index(bits)] = cplx{1.0, 0.0};
    return psi;
}

/// All-zeros basis state |0...0>.
inline Statevector zero_state(int n_qubits) {
    return new_basis_state(n_qubits, std::string(static_cast<std::size_t>(n_qubits), '0'));
}

inline double norm(const Statevector& psi) {
    double s = 0.0;
    for (const cplx& a : psi.amps) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

/// |<a|b>|^2.
inline double fidelity(const Statevector& a, const Statevector& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    cplx overlap{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        overlap += std::conj(a.amps[i]) * b.amps[i];
    }
    return std::norm(overlap);
}

} // namespace kdvqe
