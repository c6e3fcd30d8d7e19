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

#include "kdvqe/dense.hpp"
#include "kdvqe/pauli.hpp"

#include "oracles.hpp"

using namespace kdvqe;

TEST_CASE("Z expectation on the ground state", "[pauli]") {
    PauliSum z(1);
    z.add_term(1.0, "Z");
    CHECK(exact_expectation(new_basis_state(1, "0"), z) == Approx(1.0));
    CHECK(exact_expectation(new_basis_state(1, "1"), z) == Approx(-1.0));
}

TEST_CASE("expectation rejects dimension mismatches", "[pauli]") {
    PauliSum z(1);
    z.add_term(1.0, "Z");
    CHECK_THROWS_AS(exact_expectation(new_basis_state(2, "00"), z), std::invalid_argument);
    PauliSum sum(2);
    CHECK_THROWS_AS(sum.add_term(1.0, "ZZZ"), std::invalid_argument);
    CHECK_THROWS_AS(PauliString("ZA"), std::invalid_argument);
}

TEST_CASE("duplicate strings merge and tiny terms compress away", "[pauli]") {
    PauliSum sum(2);
    sum.add_term(0.5, "XY");
    sum.add_term(0.25, "XY");
    sum.add_term(1e-16, "ZZ");
    REQUIRE(sum.terms().size() == 2);
    CHECK(sum.terms()[0].coeff == Approx(0.75));
    sum.compress();
    REQUIRE(sum.terms().size() == 1);
}

TEST_CASE("imaginary residue of a Hermitian expectation is rounding noise", "[pauli]") {
    RngStream rng(31);
    const Statevector psi = oracles::random_state(4, rng);
    PauliSum sum(4);
    sum.add_term(0.7, "XYZI");
    sum.add_term(-1.2, "YYXZ");
    sum.add_term(0.3, "IIZY");
    CHECK(std::abs(expectation_value(psi, sum).imag()) < 1e-10);
}

TEST_CASE("dense conversion matches the direct action", "[pauli]") {
    PauliSum sum(2);
    sum.add_term(1.0, "XY");
    const Eigen::MatrixXcd m = to_dense(sum);
    RngStream rng(8);
    const Statevector psi = oracles::random_state(2, rng);
    const Statevector applied = apply_pauli(psi, PauliString("XY"));
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        cplx via_matrix{0, 0};
        for (std::size_t j = 0; j < psi.dim(); ++j) {
            via_matrix += m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
                          psi.amps[j];
        }
        CHECK(std::abs(via_matrix - applied.amps[i]) < 1e-12);
    }
}

TEST_CASE("real-weighted sums convert to Hermitian matrices", "[pauli][property]") {
    RngStream rng(77);
    const std::array<char, 4> letters = {'I', 'X', 'Y', 'Z'};
    for (int rep = 0; rep < 25; ++rep) {
        PauliSum sum(3);
        for (int t = 0; t < 5; ++t) {
            std::string ops;
            for (int q = 0; q < 3; ++q) {
                ops.push_back(letters[static_cast<std::size_t>(rng.uniform() * 4.0)]);
            }
            sum.add_term(rng.uniform() * 4.0 - 2.0, ops);
        }
        const Eigen::MatrixXcd m = to_dense(sum);
        CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("text export writes one coefficient and string per line", "[pauli]") {
    PauliSum sum(4);
    sum.add_term(-0.5, "XXII");
    sum.add_term(0.25, "ZIZI");
    const std::string text = to_text(sum);
    CHECK(text.find("-0.5 XXII\n") != std::string::npos);
    CHECK(text.find("0.25 ZIZI\n") != std::string::npos);
}
