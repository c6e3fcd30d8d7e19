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
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kdvqe/statevector.hpp"

namespace kdvqe {

/// One letter per qubit, over {I, X, Y, Z}.
class PauliString {
  public:
    PauliString() = default;

    explicit PauliString(std::string ops) : ops_(std::move(ops)) {
        for (char c : ops_) {
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
                throw std::invalid_argument("PauliString: letters must be I/X/Y/Z");
            }
        }
    }

    static PauliString identity(int n_qubits) {
        return PauliString(std::string(static_cast<std::size_t>(n_qubits), 'I'));
    }

    int size() const { return static_cast<int>(ops_.size()); }
    char at(int q) const { return ops_[static_cast<std::size_t>(q)]; }
    const std::string& str() const { return ops_; }

    bool is_identity() const {
        return ops_.find_first_not_of('I') == std::string::npos;
    }

    friend bool operator==(const PauliString&, const PauliString&) = default;

  private:
    std::string ops_;
};

struct PauliTerm {
    double coeff = 0.0;
    PauliString string;
};

/// Real-weighted sum of Pauli strings. Real coefficients keep the operator
/// Hermitian by construction. Equal strings are merged on insertion; term
/// order is first-insertion order, which downstream grouping relies on for
/// determinism.
class PauliSum {
  public:
    explicit PauliSum(int n_qubits) : n_qubits_(n_qubits) {
        if (n_qubits <= 0 || n_qubits > 63) {
            throw std::invalid_argument("PauliSum: unsupported qubit count");
        }
    }

    int n_qubits() const { return n_qubits_; }
    const std::vector<PauliTerm>& terms() const { return terms_; }

    void add_term(double coeff, const PauliString& s) {
        if (s.size() != n_qubits_) {
            throw std::invalid_argument("PauliSum::add_term: string length mismatch");
        }
        for (PauliTerm& t : terms_) {
            if (t.string == s) {
                t.coeff += coeff;
                return;
            }
        }
        terms_.push_back({coeff, s});
    }

    void add_term(double coeff, std::string_view ops) {
        add_term(coeff, PauliString(std::string(ops)));
    }

    /// Drop terms whose merged coefficient is negligible.
    void compress(double eps = 1e-14) {
        std::erase_if(terms_, [eps](const PauliTerm& t) { return std::abs(t.coeff) < eps; });
    }

    double identity_coefficient() const {
        for (const PauliTerm& t : terms_) {
            if (t.string.is_identity()) {
                return t.coeff;
            }
        }
        return 0.0;
    }

  private:
    int n_qubits_;
    std::vector<PauliTerm> terms_;
};

/// Bit masks describing a Pauli string's action on basis states, using the
/// library's qubit-0-is-MSB index convention:
///   P|x> = i^{y_count} * (-1)^{popcount(x & phase_mask)} |x ^ x_mask>
struct PauliMasks {
    std::uint64_t x_mask = 0;     // letters X or Y
    std::uint64_t phase_mask = 0; // letters Y or Z
    int y_count = 0;
};

inline PauliMasks pauli_masks(const PauliString& s) {
    PauliMasks m;
    const int n = s.size();
    for (int q = 0; q < n; ++q) {
        const std::uint64_t bit = std::uint64_t{1} << qubit_bit(n, q);
        switch (s.at(q)) {
            case 'X': m.x_mask |= bit; break;
            case 'Y':
                m.x_mask |= bit;
                m.phase_mask |= bit;
                ++m.y_count;
                break;
            case 'Z': m.phase_mask |= bit; break;
            default: break;
        }
    }
    return m;
}

inline cplx i_power(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

inline Statevector apply_pauli(const Statevector& psi, const PauliString& s) {
    if (s.size() != psi.n_qubits) {
        throw std::invalid_argument("apply_pauli: size mismatch");
    }
    const PauliMasks m = pauli_masks(s);
    const cplx yphase = i_power(m.y_count);
    Statevector out;
    out.n_qubits = psi.n_qubits;
    out.amps.assign(psi.dim(), cplx{0, 0});
    for (std::size_t x = 0; x < psi.dim(); ++x) {
        const int parity = std::popcount(x & m.phase_mask) & 1;
        const cplx phase = parity ? -yphase : yphase;
        out.amps[x ^ m.x_mask] = phase * psi.amps[x];
    }
    return out;
}

/// <psi|O|psi> as a complex number. For real-weighted Pauli sums the
/// imaginary part is rounding noise only.
inline cplx expectation_value(const Statevector& psi, const PauliSum& observable) {
    if (observable.n_qubits() != psi.n_qubits) {
        throw std::invalid_argument("expectation_value: observable/state qubit count mismatch");
    }
    cplx acc{0, 0};
    for (const PauliTerm& term : observable.terms()) {
        const PauliMasks m = pauli_masks(term.string);
        const cplx yphase = i_power(m.y_count);
        cplx e{0, 0};
        for (std::size_t x = 0; x < psi.dim(); ++x) {
            const int parity = std::popcount(x & m.phase_mask) & 1;
            const cplx phase = parity ? -yphase : yphase;
            e += std::conj(psi.amps[x ^ m.x_mask]) * phase * psi.amps[x];
        }
        acc += term.coeff * e;
    }
    return acc;
}

/// <psi|O|psi>, real part. The imaginary residue stays below 1e-10 because
/// coefficients are real and every Pauli string is Hermitian.
inline double exact_expectation(const Statevector& psi, const PauliSum& observable) {
    return expectation_value(psi, observable).real();
}

/// Plain-text export, one "coefficient pauli_string" line per term.
/// Consumers must not rely on line order.
inline std::string to_text(const PauliSum& sum) {
    std::ostringstream out;
    char buf[64];
    for (const PauliTerm& term : sum.terms()) {
        std::snprintf(buf, sizeof(buf), "%.17g", term.coeff);
        out << buf << ' ' << term.string.str() << '\n';
    }
    return out.str();
}

} // namespace kdvqe
