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

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "kdvqe/gate.hpp"
#include "kdvqe/statevector.hpp"

namespace kdvqe {

/// Location of a free parameter: which gate it feeds. Every supported gate
/// carries at most one angle, so the angle index inside the gate is always 0.
struct ParamSlot {
    std::size_t gate_index = 0;
    int angle_index = 0;
};

/// Ordered gate sequence with explicit free-parameter slots. Values are
/// immutable from the caller's perspective once built; apply_circuit returns
/// a fresh state.
class Circuit {
  public:
    explicit Circuit(int n_qubits) : n_qubits_(n_qubits) {
        if (n_qubits <= 0) {
            throw std::invalid_argument("Circuit: n_qubits must be positive");
        }
    }

    int n_qubits() const { return n_qubits_; }
    std::size_t n_params() const { return param_slots_.size(); }
    const std::vector<Gate>& gates() const { return gates_; }
    const std::vector<ParamSlot>& param_slots() const { return param_slots_; }

    void add_identity(int q) { push({GateKind::identity, q}); }
    void add_x(int q) { push({GateKind::pauli_x, q}); }
    void add_h(int q) { push({GateKind::hadamard, q}); }
    void add_phase(int q, double angle) { push({GateKind::phase, q, -1, angle}); }

    void add_cnot(int control, int target) {
        check_qubit(control);
        check_qubit(target);
        if (control == target) {
            throw std::invalid_argument("Circuit: CNOT control and target must differ");
        }
        Gate g;
        g.kind = GateKind::cnot;
        g.target = target;
        g.control = control;
        gates_.push_back(g);
    }

    /// Rotation with a fresh free parameter; returns the parameter index.
    int add_ry(int q) { return push_param(GateKind::ry, q); }
    int add_rz(int q) { return push_param(GateKind::rz, q); }

    void add_ry_fixed(int q, double angle) { push({GateKind::ry, q, -1, angle}); }
    void add_rz_fixed(int q, double angle) { push({GateKind::rz, q, -1, angle}); }

    /// Append another circuit on the same register, shifting its parameter
    /// slots past this circuit's free parameters.
    void append(const Circuit& other) {
        if (other.n_qubits_ != n_qubits_) {
            throw std::invalid_argument("Circuit::append: qubit count mismatch");
        }
        const std::size_t gate_base = gates_.size();
        const int param_base = static_cast<int>(n_params());
        for (Gate g : other.gates_) {
            if (g.param >= 0) {
                g.param += param_base;
            }
            gates_.push_back(g);
        }
        for (ParamSlot slot : other.param_slots_) {
            slot.gate_index += gate_base;
            param_slots_.push_back(slot);
        }
    }

  private:
    void check_qubit(int q) const {
        if (q < 0 || q >= n_qubits_) {
            throw std::invalid_argument("Circuit: qubit index out of range");
        }
    }

    void push(Gate g) {
        check_qubit(g.target);
        gates_.push_back(g);
    }

    int push_param(GateKind kind, int q) {
        check_qubit(q);
        Gate g;
        g.kind = kind;
        g.target = q;
        g.param = static_cast<int>(n_params());
        gates_.push_back(g);
        param_slots_.push_back({gates_.size() - 1, 0});
        return g.param;
    }

    int n_qubits_;
    std::vector<Gate> gates_;
    std::vector<ParamSlot> param_slots_;
};

/// U(params)|state>. Norm is preserved up to rounding; the input is not
/// modified.
inline Statevector apply_circuit(const Statevector& state, const Circuit& circuit,
                                 std::span<const double> params = {}) {
    if (state.n_qubits != circuit.n_qubits()) {
        throw std::invalid_argument("apply_circuit: state/circuit qubit count mismatch");
    }
    if (params.size() != circuit.n_params()) {
        throw std::invalid_argument("apply_circuit: wrong number of parameters");
    }
    Statevector psi = state;
    for (const Gate& g : circuit.gates()) {
        switch (g.kind) {
            case GateKind::identity:
                break;
            case GateKind::cnot:
                apply_cnot(psi, g.control, g.target);
                break;
            default: {
                const double angle = g.param >= 0 ? params[static_cast<std::size_t>(g.param)]
                                                  : g.angle;
                apply_single_qubit(psi, g.target, gate_matrix(g.kind, angle));
                break;
            }
        }
    }
    return psi;
}

} // namespace kdvqe
