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

#include <set>

#include <catch2/catch.hpp>

#include "kdvqe/dense.hpp"
#include "kdvqe/hubbard.hpp"

#include "oracles.hpp"

using namespace kdvqe;

TEST_CASE("hopping-only Hamiltonian has the four two-local terms", "[hubbard]") {
    const PauliSum h = build_hubbard_hamiltonian({1.0, 0.0});
    REQUIRE(h.terms().size() == 4);
    const std::set<std::string> expected = {"XXII", "YYII", "IIXX", "IIYY"};
    for (const PauliTerm& term : h.terms()) {
        CHECK(expected.contains(term.string.str()));
        CHECK(term.coeff == Approx(-0.5));
    }
}

TEST_CASE("generic parameters give eleven terms", "[hubbard]") {
    CHECK(build_hubbard_hamiltonian({1.0, 1.0}).terms().size() == 11);
}

TEST_CASE("interaction-only spectrum counts double occupancies", "[hubbard]") {
    const PauliSum h = build_hubbard_hamiltonian({0.0, 1.0});
    const Eigen::VectorXd evals = hermitian_eigenvalues(to_dense(h));
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
        const double nearest = std::round(evals(i));
        CHECK(std::abs(evals(i) - nearest) < 1e-12);
        CHECK(nearest >= 0.0);
        CHECK(nearest <= 2.0);
    }
}

TEST_CASE("ground energy matches the closed form", "[hubbard]") {
    const GroundState gs = exact_ground(build_hubbard_hamiltonian({1.0, 1.0}));
    CHECK(gs.energy == Approx(oracles::hubbard_ground_energy(1.0, 1.0)).margin(1e-9));
    CHECK(gs.energy == Approx(-1.5615528128088303).margin(1e-6));

    const GroundState free = exact_ground(build_hubbard_hamiltonian({1.0, 0.0}));
    CHECK(free.energy == Approx(-2.0).margin(1e-9));
}

TEST_CASE("exact_ground returns an eigenpair with small residual", "[hubbard]") {
    const PauliSum h = build_hubbard_hamiltonian({1.3, 0.7});
    const GroundState gs = exact_ground(h);
    const Eigen::MatrixXcd m = to_dense(h);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(gs.state.dim()));
    for (std::size_t i = 0; i < gs.state.dim(); ++i) {
        v(static_cast<Eigen::Index>(i)) = gs.state.amps[i];
    }
    CHECK((m * v - gs.energy * v).norm() < 1e-8);
    CHECK(norm(gs.state) == Approx(1.0).margin(1e-10));
}

TEST_CASE("exact_ground solves a single-qubit Z", "[hubbard]") {
    PauliSum z(1);
    z.add_term(1.0, "Z");
    const GroundState gs = exact_ground(z);
    CHECK(gs.energy == Approx(-1.0));
    CHECK(fidelity(gs.state, new_basis_state(1, "1")) == Approx(1.0).margin(1e-12));
}

TEST_CASE("dense routines refuse oversized operators", "[hubbard]") {
    PauliSum big(9);
    big.add_term(1.0, "ZZZZZZZZZ");
    CHECK_THROWS_AS(exact_ground(big), unsupported_size_error);
}

TEST_CASE("particle number expectations on basis states", "[hubbard]") {
    const PauliSum n = particle_number_operator();
    CHECK(exact_expectation(new_basis_state(4, "0000"), n) == Approx(0.0).margin(1e-12));
    CHECK(exact_expectation(new_basis_state(4, "1111"), n) == Approx(4.0).margin(1e-12));
    CHECK(exact_expectation(new_basis_state(4, "1010"), n) == Approx(2.0).margin(1e-12));
}

TEST_CASE("six half-filling configurations, psi_I first", "[hubbard]") {
    const auto states = half_filling_basis_states();
    REQUIRE(states.size() == 6);
    CHECK(states[0] == "1010");
    const PauliSum n = particle_number_operator();
    std::set<std::string> distinct;
    for (const std::string& bits : states) {
        distinct.insert(bits);
        CHECK(exact_expectation(new_basis_state(4, bits), n) == Approx(2.0).margin(1e-12));
    }
    CHECK(distinct.size() == 6);
}

TEST_CASE("built operators are Hermitian and conserve particle number", "[hubbard]") {
    const Eigen::MatrixXcd h = to_dense(build_hubbard_hamiltonian({0.9, 1.7}));
    const Eigen::MatrixXcd n = to_dense(particle_number_operator());
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((h * n - n * h).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("the Hamiltonian is symmetric under swapping spin sectors", "[hubbard]") {
    const Eigen::MatrixXcd h = to_dense(build_hubbard_hamiltonian({1.1, 0.4}));
    // permutation exchanging qubits 0<->2 and 1<->3
    const std::size_t dim = 16;
    Eigen::MatrixXcd perm = Eigen::MatrixXcd::Zero(16, 16);
    for (std::size_t x = 0; x < dim; ++x) {
        const std::size_t up = (x >> 2) & 3;
        const std::size_t down = x & 3;
        perm(static_cast<Eigen::Index>((down << 2) | up), static_cast<Eigen::Index>(x)) = 1.0;
    }
    CHECK((perm * h * perm.adjoint() - h).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("qubit Hamiltonian matches the ladder-operator construction", "[hubbard][property]") {
    RngStream rng(4096);
    for (int rep = 0; rep < 6; ++rep) {
        const double t = rng.uniform() * 4.0 - 2.0;
        const double u = rng.uniform() * 4.0 - 2.0;
        const Eigen::VectorXd via_pauli =
            hermitian_eigenvalues(to_dense(build_hubbard_hamiltonian({t, u})));
        const Eigen::VectorXd via_fermions =
            hermitian_eigenvalues(oracles::fermionic_hubbard(t, u));
        REQUIRE(via_pauli.size() == via_fermions.size());
        for (Eigen::Index i = 0; i < via_pauli.size(); ++i) {
            CHECK(via_pauli(i) == Approx(via_fermions(i)).margin(1e-10));
        }
    }
}
