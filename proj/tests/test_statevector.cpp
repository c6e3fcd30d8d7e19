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

#include <catch2/catch.hpp>

#include "kdvqe/circuit.hpp"
#include "kdvqe/dense.hpp"
#include "kdvqe/gate.hpp"
#include "kdvqe/hubbard.hpp"
#include "kdvqe/rng.hpp"
#include "kdvqe/statevector.hpp"

using namespace kdvqe;

TEST_CASE("basis state on one qubit", "[qsim]") {
    const Statevector psi = new_basis_state(1, "0");
    REQUIRE(psi.amps.size() == 2);
    CHECK(psi.amps[0] == cplx{1, 0});
    CHECK(psi.amps[1] == cplx{0, 0});
}

TEST_CASE("qubit 0 is the highest-order index bit", "[qsim]") {
    const Statevector psi = new_basis_state(2, "10");
    CHECK(psi.amps[2] == cplx{1, 0});
    CHECK(bits_to_index("10") == 2);
    CHECK(index_to_bits(2, 2) == "10");
}

TEST_CASE("basis state rejects length mismatch", "[qsim]") {
    CHECK_THROWS_AS(new_basis_state(2, "101"), std::invalid_argument);
    CHECK_THROWS_AS(new_basis_state(3, "1a1"), std::invalid_argument);
}

TEST_CASE("the 1010 configuration holds two particles", "[qsim]") {
    const Statevector psi = new_basis_state(4, "1010");
    CHECK(exact_expectation(psi, particle_number_operator()) == Approx(2.0).margin(1e-12));
}

TEST_CASE("identity circuit leaves states alone", "[qsim]") {
    Circuit c(2);
    c.add_identity(0);
    c.add_identity(1);
    const Statevector in = new_basis_state(2, "01");
    const Statevector out = apply_circuit(in, c);
    CHECK(fidelity(in, out) == Approx(1.0));
}

TEST_CASE("Pauli-X flips qubit 0", "[qsim]") {
    Circuit c(2);
    c.add_x(0);
    const Statevector out = apply_circuit(new_basis_state(2, "00"), c);
    CHECK(fidelity(out, new_basis_state(2, "10")) == Approx(1.0));
}

TEST_CASE("CNOT truth table", "[qsim]") {
    Circuit c(2);
    c.add_cnot(0, 1);
    CHECK(fidelity(apply_circuit(new_basis_state(2, "10"), c), new_basis_state(2, "11")) ==
          Approx(1.0));
    CHECK(fidelity(apply_circuit(new_basis_state(2, "00"), c), new_basis_state(2, "00")) ==
          Approx(1.0));
    CHECK(fidelity(apply_circuit(new_basis_state(2, "11"), c), new_basis_state(2, "10")) ==
          Approx(1.0));
}

TEST_CASE("apply_circuit rejects a wrong parameter count", "[qsim]") {
    Circuit c(1);
    c.add_ry(0);
    const std::vector<double> none;
    CHECK_THROWS_AS(apply_circuit(new_basis_state(1, "0"), c, none), std::invalid_argument);
}

TEST_CASE("every gate matrix is unitary", "[qsim]") {
    const std::vector<GateKind> single = {GateKind::identity, GateKind::pauli_x,
                                          GateKind::hadamard, GateKind::phase, GateKind::ry,
                                          GateKind::rz};
    for (GateKind kind : single) {
        for (double angle : {-2.7, -0.5, 0.0, 0.3, 1.0, 3.1}) {
            const Mat2 m = gate_matrix(kind, angle);
            // G†G - I, max norm
            const cplx g00 = std::conj(m[0]) * m[0] + std::conj(m[2]) * m[2] - 1.0;
            const cplx g01 = std::conj(m[0]) * m[1] + std::conj(m[2]) * m[3];
            const cplx g10 = std::conj(m[1]) * m[0] + std::conj(m[3]) * m[2];
            const cplx g11 = std::conj(m[1]) * m[1] + std::conj(m[3]) * m[3] - 1.0;
            for (const cplx& g : {g00, g01, g10, g11}) {
                CHECK(std::abs(g) < 1e-12);
            }
        }
    }
    Circuit c(2);
    c.add_cnot(1, 0);
    const Eigen::MatrixXcd u = to_dense(c);
    CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("random circuits preserve the norm", "[qsim][property]") {
    RngStream rng(1234);
    for (int rep = 0; rep < 50; ++rep) {
        Circuit c(4);
        const int n_gates = 1 + static_cast<int>(rng.uniform() * 40.0);
        std::vector<double> params;
        for (int g = 0; g < n_gates; ++g) {
            const int q = static_cast<int>(rng.uniform() * 4.0);
            switch (static_cast<int>(rng.uniform() * 6.0)) {
                case 0: c.add_x(q); break;
                case 1: c.add_h(q); break;
                case 2: c.add_phase(q, rng.uniform() * 6.28); break;
                case 3: {
                    c.add_ry(q);
                    params.push_back(rng.uniform() * 6.28 - 3.14);
                    break;
                }
                case 4: {
                    c.add_rz(q);
                    params.push_back(rng.uniform() * 6.28 - 3.14);
                    break;
                }
                default: {
                    const int other = (q + 1 + static_cast<int>(rng.uniform() * 3.0)) % 4;
                    c.add_cnot(q, other);
                    break;
                }
            }
        }
        Statevector psi = new_basis_state(4, "0000");
        psi = apply_circuit(psi, c, params);
        CHECK(std::abs(norm(psi) - 1.0) < 1e-9);
    }
}

TEST_CASE("circuit builders validate their inputs", "[qsim]") {
    Circuit c(2);
    CHECK_THROWS_AS(c.add_x(2), std::invalid_argument);
    CHECK_THROWS_AS(c.add_cnot(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(c.add_cnot(0, 5), std::invalid_argument);
}

TEST_CASE("param slots cover every free angle exactly once", "[qsim]") {
    Circuit c(3);
    c.add_ry(0);
    c.add_h(1);
    c.add_rz(2);
    c.add_ry_fixed(1, 0.4);
    REQUIRE(c.n_params() == 2);
    std::vector<bool> seen(c.gates().size(), false);
    for (const ParamSlot& slot : c.param_slots()) {
        CHECK(c.gates()[slot.gate_index].param >= 0);
        CHECK_FALSE(seen[slot.gate_index]);
        seen[slot.gate_index] = true;
    }
}

TEST_CASE("append shifts parameter slots", "[qsim]") {
    Circuit a(2);
    a.add_ry(0);
    Circuit b(2);
    b.add_ry(1);
    b.add_cnot(0, 1);
    a.append(b);
    REQUIRE(a.n_params() == 2);
    CHECK(a.gates()[1].param == 1);
    const std::vector<double> params = {3.14159, 0.0};
    CHECK_NOTHROW(apply_circuit(new_basis_state(2, "00"), a, params));
}
