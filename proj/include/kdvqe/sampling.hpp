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

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kdvqe/rng.hpp"
#include "kdvqe/statevector.hpp"

namespace kdvqe {

/// Draw n_shots computational-basis samples from |amplitude|^2 and return the
/// histogram as a dense count vector indexed by basis state. The sampler is
/// hand-rolled (inverse CDF over the cumulative probabilities) so histograms
/// are reproducible for a given stream, independent of the standard library.
inline std::vector<std::int64_t> sample_bitstrings(const Statevector& psi,
                                                   std::int64_t n_shots, RngStream& rng) {
    if (n_shots < 0) {
        throw std::invalid_argument("sample_bitstrings: n_shots must be non-negative");
    }
    const std::size_t dim = psi.dim();
    std::vector<std::int64_t> counts(dim, 0);
    if (n_shots == 0) {
        return counts;
    }

    std::vector<double> cdf(dim);
    double total = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        total += std::norm(psi.amps[i]);
        cdf[i] = total;
    }
    // total is 1 up to rounding; dividing keeps the last bin closed.
    for (std::int64_t shot = 0; shot < n_shots; ++shot) {
        const double u = rng.uniform() * total;
        std::size_t lo = 0;
        std::size_t hi = dim - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (cdf[mid] > u) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        ++counts[lo];
    }
    return counts;
}

/// Bitstring-keyed view of a histogram; zero-count entries are omitted, so
/// zero shots yield an empty map.
inline std::map<std::string, std::int64_t> counts_map(const std::vector<std::int64_t>& counts,
                                                      int n_qubits) {
    std::map<std::string, std::int64_t> out;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] != 0) {
            out[index_to_bits(i, n_qubits)] = counts[i];
        }
    }
    return out;
}

} // namespace kdvqe
