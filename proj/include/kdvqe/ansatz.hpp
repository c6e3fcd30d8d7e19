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

#include <numbers>
#include <string>
#include <vector>

#include "kdvqe/circuit.hpp"
#include "kdvqe/hubbard.hpp"
#include "kdvqe/statevector.hpp"

namespace kdvqe {

/// Per-slot rotation family of the hardware-efficient ansatz. A single Y
/// rotation per slot is enough to prepare every half-filling product state
/// and to reach the Hubbard ground state; zyz swaps in a three-angle Euler
/// rotation per slot instead.
enum class RotationKind { ry, zyz };

struct CnotPair {
    int control = 0;
    int target = 1;
};

struct AnsatzSpec {
    int n_qubits = hubbard_n_qubits;
    int n_layers = 2;
    std::vector<CnotPair> entangler; // per-layer pattern; empty = linear chain
    bool include_fourier_tail = true;
    RotationKind rotation = RotationKind::ry;
};

inline std::vector<CnotPair> default_entangler(int n_qubits) {
    std::vector<CnotPair> chain;
    for (int q = 0; q + 1 < n_qubits; ++q) {
        chain.push_back({q, q + 1});
    }
    return chain;
}

namespace detail {

/// Number-conserving Givens rotation of angle pi/4 between the pair's two
/// modes, built from CNOTs and fixed Y rotations. On span{|01>,|10>} it acts
/// as [[c,-s],[s,c]] with c = s = 1/sqrt(2); |00> and |11> are fixed.
inline void append_givens_quarter(Circuit& c, int a, int b) {
    constexpr double quarter = std::numbers::pi / 4.0;
    c.add_cnot(a, b);
    c.add_cnot(b, a);
    c.add_ry_fixed(a, -quarter);
    c.add_cnot(b, a);
    c.add_ry_fixed(a, quarter);
    c.add_cnot(a, b);
}

inline void validate_spec(const AnsatzSpec& spec, const std::vector<CnotPair>& entangler) {
    if (spec.n_qubits <= 0) {
        throw std::invalid_argument("AnsatzSpec: n_qubits must be positive");
    }
    if (spec.n_layers < 1) {
        throw std::invalid_argument("AnsatzSpec: n_layers must be at least 1");
    }
    for (const CnotPair& pair : entangler) {
        if (pair.control < 0 || pair.control >= spec.n_qubits || pair.target < 0 ||
            pair.target >= spec.n_qubits || pair.control == pair.target) {
            throw std::invalid_argument("AnsatzSpec: entangler pair references invalid qubits");
        }
    }
    if (spec.include_fourier_tail && spec.n_qubits != hubbard_n_qubits) {
        throw std::invalid_argument("AnsatzSpec: the Fourier tail is a 4-qubit block");
    }
}

} // namespace detail

/// Fixed 4-qubit block rotating each spin sector's site modes to momentum
/// modes: one Givens(pi/4) on qubits (0,1) and one on (2,3). Conjugating the
/// hopping-only Hamiltonian by this circuit gives a diagonal matrix, and the
/// block commutes with the total particle number.
inline Circuit fourier_transform_circuit() {
    Circuit c(hubbard_n_qubits);
    detail::append_givens_quarter(c, 0, 1);
    detail::append_givens_quarter(c, 2, 3);
    return c;
}

/// Layered hardware-efficient circuit: per layer, one parameterized rotation
/// on every qubit followed by the entangler CNOTs; optionally the fixed
/// Fourier block at the end. Free-parameter count is 4*n_layers for the
/// default ry rotations (12*n_layers for zyz); the tail adds none.
inline Circuit build_ansatz(const AnsatzSpec& spec) {
    const std::vector<CnotPair> entangler =
        spec.entangler.empty() ? default_entangler(spec.n_qubits) : spec.entangler;
    detail::validate_spec(spec, entangler);

    Circuit c(spec.n_qubits);
    for (int layer = 0; layer < spec.n_layers; ++layer) {
        for (int q = 0; q < spec.n_qubits; ++q) {
            if (spec.rotation == RotationKind::ry) {
                c.add_ry(q);
            } else {
                c.add_rz(q);
                c.add_ry(q);
                c.add_rz(q);
            }
        }
        for (const CnotPair& pair : entangler) {
            c.add_cnot(pair.control, pair.target);
        }
    }
    if (spec.include_fourier_tail) {
        c.append(fourier_transform_circuit());
    }
    return c;
}

/// One ensemble member's starting point: the label, the product state it
/// prepares before the Fourier tail, and the parameter vector realizing it.
struct TrialInit {
    std::string label;
    std::string bits;
    std::vector<double> params0;
};

/// Starting parameters for the six half-filling trial states.
///
/// The angles live in the first rotation layer: a slot is set to pi (a Y
/// rotation by pi acts as Pauli-X up to an unobservable global phase) on a
/// mask of qubits chosen so that pushing |mask> through every entangler
/// layer lands on the labeled bitstring. The mask is found by running the
/// CNOT list backwards over the target bits; later layers start at zero
/// angles and act trivially on the propagating basis state.
inline std::vector<TrialInit> initial_trials(const AnsatzSpec& spec) {
    const std::vector<CnotPair> entangler =
        spec.entangler.empty() ? default_entangler(spec.n_qubits) : spec.entangler;
    detail::validate_spec(spec, entangler);
    if (spec.n_qubits != hubbard_n_qubits) {
        throw std::invalid_argument("initial_trials: trial states are 4-qubit configurations");
    }

    const Circuit circuit = build_ansatz(spec);
    const int params_per_qubit = spec.rotation == RotationKind::ry ? 1 : 3;
    // slot of the Y angle on qubit q in layer 0 (layer 0 is built first,
    // qubits in ascending order)
    const auto y_slot = [params_per_qubit](int q) {
        return q * params_per_qubit + (params_per_qubit == 3 ? 1 : 0);
    };

    const std::array<std::string, 6> states = half_filling_basis_states();
    std::vector<TrialInit> trials;
    trials.reserve(states.size());
    for (std::size_t k = 0; k < states.size(); ++k) {
        std::array<bool, hubbard_n_qubits> bits{};
        for (int q = 0; q < hubbard_n_qubits; ++q) {
            bits[static_cast<std::size_t>(q)] = states[k][static_cast<std::size_t>(q)] == '1';
        }
        // invert the stacked entangler layers (CNOT is an involution)
        for (int layer = 0; layer < spec.n_layers; ++layer) {
            for (auto it = entangler.rbegin(); it != entangler.rend(); ++it) {
                bits[static_cast<std::size_t>(it->target)] =
                    bits[static_cast<std::size_t>(it->target)] !=
                    bits[static_cast<std::size_t>(it->control)];
            }
        }
        TrialInit init;
        init.label = trial_labels[k];
        init.bits = states[k];
        init.params0.assign(circuit.n_params(), 0.0);
        for (int q = 0; q < hubbard_n_qubits; ++q) {
            if (bits[static_cast<std::size_t>(q)]) {
                init.params0[static_cast<std::size_t>(y_slot(q))] = std::numbers::pi;
            }
        }
        trials.push_back(std::move(init));
    }
    return trials;
}

} // namespace kdvqe
