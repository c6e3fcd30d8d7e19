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
#include <initializer_list>
#include <random>

namespace kdvqe {

// SplitMix64 finalizer, used to derive child seeds from stream labels.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

/// Deterministic random stream. Every stochastic routine in the library takes
/// one of these explicitly; nothing owns hidden RNG state.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  private:
    std::mt19937_64 gen_;
};

/// Derive a child seed from a master seed and an ordered list of labels.
/// Gives every (trial, step, purpose) evaluation its own stream so results
/// cannot depend on evaluation order.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> labels) {
    std::uint64_t h = mix64(master + 0x9e3779b97f4a7c15ULL);
    for (std::uint64_t label : labels) {
        h = mix64(h ^ (label + 0x9e3779b97f4a7c15ULL));
    }
    return h;
}

inline RngStream derive_stream(std::uint64_t master,
                               std::initializer_list<std::uint64_t> labels) {
    return RngStream(derive_seed(master, labels));
}

} // namespace kdvqe
