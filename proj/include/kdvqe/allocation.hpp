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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace kdvqe {

/// Split an integer total across weights by largest-remainder rounding.
/// The result sums to the total exactly; remainder ties go to the lower
/// index. Weights need not be normalized but must be non-negative with a
/// positive sum.
inline std::vector<std::int64_t> largest_remainder_allocation(std::span<const double> weights,
                                                              std::int64_t total) {
    if (weights.empty()) {
        throw std::invalid_argument("largest_remainder_allocation: empty weights");
    }
    if (total < 0) {
        throw std::invalid_argument("largest_remainder_allocation: negative total");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw std::invalid_argument("largest_remainder_allocation: weights must be >= 0");
        }
        sum += w;
    }
    if (sum <= 0.0) {
        throw std::invalid_argument("largest_remainder_allocation: weight sum must be positive");
    }

    const std::size_t k = weights.size();
    std::vector<std::int64_t> alloc(k, 0);
    std::vector<double> frac(k, 0.0);
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double quota = static_cast<double>(total) * (weights[i] / sum);
        const double base = std::floor(quota);
        alloc[i] = static_cast<std::int64_t>(base);
        frac[i] = quota - base;
        assigned += alloc[i];
    }

    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&frac](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });

    std::int64_t leftover = total - assigned;
    for (std::size_t pos = 0; leftover > 0; pos = (pos + 1) % k) {
        ++alloc[order[pos]];
        --leftover;
    }
    return alloc;
}

} // namespace kdvqe
