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

#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kdvqe/allocation.hpp"
#include "kdvqe/circuit.hpp"
#include "kdvqe/errors.hpp"
#include "kdvqe/pauli.hpp"
#include "kdvqe/rng.hpp"
#include "kdvqe/sampling.hpp"
#include "kdvqe/statevector.hpp"

namespace kdvqe {

/// Estimators run either on sampled shots or on exact expectation values.
/// Exact mode is a first-class option used by oracles and tests.
enum class EvalMode { shots, exact };

struct EnergyEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t shots_used = 0;
};

/// A set of qubit-wise commuting Pauli terms measured from one shot
/// histogram. basis_rotation maps every member to a Z-type string; z_mask
/// holds the post-rotation parity bits in amplitude-index order.
struct MeasurementGroup {
    struct Member {
        double coeff = 0.0;
        PauliString string;
        std::uint64_t z_mask = 0;
    };

    Circuit basis_rotation;
    std::vector<Member> members;
    std::string letters; // per-qubit measurement letter, 'I' where unconstrained
    double weight = 0.0; // sum of |coeff| over members

    explicit MeasurementGroup(int n_qubits)
        : basis_rotation(n_qubits), letters(static_cast<std::size_t>(n_qubits), 'I') {}
};

struct GroupedObservable {
    int n_qubits = 0;
    double identity_coeff = 0.0;
    std::vector<MeasurementGroup> groups;
};

/// Partition the non-identity terms into qubit-wise commuting groups by
/// greedy first-fit over terms in descending |coefficient| (ties keep term
/// order). The identity term is returned as an additive constant.
inline GroupedObservable group_commuting(const PauliSum& observable) {
    if (observable.terms().empty()) {
        throw std::invalid_argument("group_commuting: empty observable");
    }
    GroupedObservable out;
    out.n_qubits = observable.n_qubits();
    out.identity_coeff = observable.identity_coefficient();

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < observable.terms().size(); ++i) {
        if (!observable.terms()[i].string.is_identity()) {
            order.push_back(i);
        }
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(observable.terms()[a].coeff) > std::abs(observable.terms()[b].coeff);
    });

    const int n = out.n_qubits;
    for (std::size_t idx : order) {
        const PauliTerm& term = observable.terms()[idx];
        MeasurementGroup* home = nullptr;
        for (MeasurementGroup& g : out.groups) {
            bool fits = true;
            for (int q = 0; q < n && fits; ++q) {
                const char a = g.letters[static_cast<std::size_t>(q)];
                const char b = term.string.at(q);
                fits = a == 'I' || b == 'I' || a == b;
            }
            if (fits) {
                home = &g;
                break;
            }
        }
        if (home == nullptr) {
            out.groups.emplace_back(n);
            home = &out.groups.back();
        }
        MeasurementGroup::Member member;
        member.coeff = term.coeff;
        member.string = term.string;
        for (int q = 0; q < n; ++q) {
            const char b = term.string.at(q);
            if (b != 'I') {
                home->letters[static_cast<std::size_t>(q)] = b;
                member.z_mask |= std::uint64_t{1} << qubit_bit(n, q);
            }
        }
        home->weight += std::abs(term.coeff);
        home->members.push_back(std::move(member));
    }

    // X measures through H; Y through phase(-pi/2) then H.
    for (MeasurementGroup& g : out.groups) {
        for (int q = 0; q < n; ++q) {
            switch (g.letters[static_cast<std::size_t>(q)]) {
                case 'X':
                    g.basis_rotation.add_h(q);
                    break;
                case 'Y':
                    g.basis_rotation.add_phase(q, -std::numbers::pi / 2.0);
                    g.basis_rotation.add_h(q);
                    break;
                default:
                    break;
            }
        }
    }
    return out;
}

namespace detail {

/// Split shots across groups proportional to their |coefficient| weight,
/// then make sure no group starves: every group must see at least one shot.
inline std::vector<std::int64_t> split_group_shots(const GroupedObservable& grouped,
                                                   std::int64_t n_shots) {
    const std::size_t n_groups = grouped.groups.size();
    if (n_shots < static_cast<std::int64_t>(n_groups)) {
        throw insufficient_shots_error("shot budget " + std::to_string(n_shots) +
                                       " below measurement group count " +
                                       std::to_string(n_groups));
    }
    std::vector<double> weights;
    weights.reserve(n_groups);
    for (const MeasurementGroup& g : grouped.groups) {
        weights.push_back(g.weight);
    }
    std::vector<std::int64_t> alloc = largest_remainder_allocation(weights, n_shots);
    for (std::size_t i = 0; i < alloc.size(); ++i) {
        while (alloc[i] == 0) {
            const std::size_t donor = static_cast<std::size_t>(
                std::distance(alloc.begin(), std::max_element(alloc.begin(), alloc.end())));
            --alloc[donor];
            ++alloc[i];
        }
    }
    return alloc;
}

struct GroupSample {
    double mean = 0.0;
    double variance_of_mean = 0.0;
};

inline GroupSample sample_group(const Statevector& prepared, const MeasurementGroup& group,
                                std::int64_t n_shots, RngStream& rng) {
    const Statevector rotated = apply_circuit(prepared, group.basis_rotation);
    const std::vector<std::int64_t> counts = sample_bitstrings(rotated, n_shots, rng);

    double mean = 0.0;
    double second = 0.0;
    for (std::size_t s = 0; s < counts.size(); ++s) {
        if (counts[s] == 0) {
            continue;
        }
        double value = 0.0;
        for (const MeasurementGroup::Member& m : group.members) {
            const int parity = std::popcount(s & m.z_mask) & 1;
            value += parity ? -m.coeff : m.coeff;
        }
        const double p = static_cast<double>(counts[s]) / static_cast<double>(n_shots);
        mean += p * value;
        second += p * value * value;
    }
    GroupSample out;
    out.mean = mean;
    const double variance = std::max(0.0, second - mean * mean);
    out.variance_of_mean = variance / static_cast<double>(n_shots);
    return out;
}

} // namespace detail

inline Statevector prepare_state(const Circuit& state_prep, std::span<const double> params) {
    return apply_circuit(zero_state(state_prep.n_qubits()), state_prep, params);
}

/// Shot-based energy estimate: the budget is split across commuting groups,
/// each group is sampled once, and per-group sample variances propagate into
/// the standard error. The estimate is unbiased for the exact expectation.
inline EnergyEstimate estimate_energy(const Circuit& state_prep, std::span<const double> params,
                                      const PauliSum& observable, std::int64_t n_shots,
                                      RngStream& rng) {
    if (observable.n_qubits() != state_prep.n_qubits()) {
        throw std::invalid_argument("estimate_energy: observable/circuit qubit count mismatch");
    }
    const GroupedObservable grouped = group_commuting(observable);
    EnergyEstimate est;
    est.value = grouped.identity_coeff;
    if (grouped.groups.empty()) {
        return est;
    }
    const std::vector<std::int64_t> alloc = detail::split_group_shots(grouped, n_shots);
    const Statevector prepared = prepare_state(state_prep, params);
    double var = 0.0;
    for (std::size_t g = 0; g < grouped.groups.size(); ++g) {
        const detail::GroupSample sample =
            detail::sample_group(prepared, grouped.groups[g], alloc[g], rng);
        est.value += sample.mean;
        var += sample.variance_of_mean;
        est.shots_used += alloc[g];
    }
    est.std_error = std::sqrt(var);
    return est;
}

inline double exact_energy(const Circuit& state_prep, std::span<const double> params,
                           const PauliSum& observable) {
    return exact_expectation(prepare_state(state_prep, params), observable);
}

/// Penalty lambda * |<n> - target| added to the raw energy. sign = +1 adds
/// the penalty (the default, which confines the search to the target
/// particle-number sector); sign = -1 subtracts it instead.
struct PenaltyConfig {
    double lambda = 1.0;
    double target = 2.0;
    double sign = 1.0;
};

struct ObjectiveEval {
    EnergyEstimate estimate; // penalized value
    double hamiltonian_value = 0.0;
    double number_value = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

/// Split a budget between the two observables proportional to their
/// non-identity |coefficient| weight, then enforce each side's group count.
inline std::pair<std::int64_t, std::int64_t> split_objective_shots(const GroupedObservable& h,
                                                                   const GroupedObservable& n,
                                                                   std::int64_t n_shots) {
    const auto need_h = static_cast<std::int64_t>(h.groups.size());
    const auto need_n = static_cast<std::int64_t>(n.groups.size());
    if (n_shots < need_h + need_n) {
        throw insufficient_shots_error("shot budget " + std::to_string(n_shots) +
                                       " cannot cover both observables' measurement groups");
    }
    double wh = 0.0;
    double wn = 0.0;
    for (const MeasurementGroup& g : h.groups) {
        wh += g.weight;
    }
    for (const MeasurementGroup& g : n.groups) {
        wn += g.weight;
    }
    const std::array<double, 2> weights{wh, wn};
    std::vector<std::int64_t> split = largest_remainder_allocation(weights, n_shots);
    if (split[0] < need_h) {
        split[1] -= need_h - split[0];
        split[0] = need_h;
    }
    if (split[1] < need_n) {
        split[0] -= need_n - split[1];
        split[1] = need_n;
    }
    return {split[0], split[1]};
}

} // namespace detail

/// Objective of one trial: raw energy plus the particle-number penalty.
/// In shot mode the budget is split between the two observables; with
/// lambda = 0 every shot goes to the Hamiltonian and number_value stays NaN.
inline ObjectiveEval penalized_objective(const Circuit& state_prep,
                                         std::span<const double> params,
                                         const PauliSum& hamiltonian, const PauliSum& number_op,
                                         const PenaltyConfig& penalty, EvalMode mode,
                                         std::int64_t n_shots, RngStream& rng) {
    if (penalty.lambda < 0.0) {
        throw std::invalid_argument("penalized_objective: lambda must be >= 0");
    }
    ObjectiveEval out;
    if (mode == EvalMode::exact) {
        const Statevector prepared = prepare_state(state_prep, params);
        out.hamiltonian_value = exact_expectation(prepared, hamiltonian);
        out.number_value = exact_expectation(prepared, number_op);
        out.estimate.value =
            out.hamiltonian_value +
            penalty.sign * penalty.lambda * std::abs(out.number_value - penalty.target);
        return out;
    }

    if (penalty.lambda == 0.0) {
        const EnergyEstimate h = estimate_energy(state_prep, params, hamiltonian, n_shots, rng);
        out.estimate = h;
        out.hamiltonian_value = h.value;
        return out;
    }

    const GroupedObservable grouped_h = group_commuting(hamiltonian);
    const GroupedObservable grouped_n = group_commuting(number_op);
    const auto [shots_h, shots_n] = detail::split_objective_shots(grouped_h, grouped_n, n_shots);
    const EnergyEstimate h = estimate_energy(state_prep, params, hamiltonian, shots_h, rng);
    const EnergyEstimate n = estimate_energy(state_prep, params, number_op, shots_n, rng);
    out.hamiltonian_value = h.value;
    out.number_value = n.value;
    out.estimate.value =
        h.value + penalty.sign * penalty.lambda * std::abs(n.value - penalty.target);
    // |.| is locally linear with slope +-1, so the penalty contributes
    // lambda^2 * Var(n-estimate).
    out.estimate.std_error = std::sqrt(h.std_error * h.std_error +
                                       penalty.lambda * penalty.lambda * n.std_error * n.std_error);
    out.estimate.shots_used = h.shots_used + n.shots_used;
    return out;
}

/// Parameter-shift gradient of the penalized objective. Each of the 2P
/// shifted evaluations draws from its own derived stream (labels 0..2P-1),
/// so evaluations may run in any order. number_deviation is <n> - target at
/// the unshifted point; when absent it is computed here (exactly in exact
/// mode, else from one extra evaluation with the per-eval budget, stream
/// label 2P). The |.| kink uses the subgradient sign(deviation), with
/// sign(0) = 0.
inline std::vector<double> estimate_gradient(const Circuit& state_prep,
                                             std::span<const double> params,
                                             const PauliSum& hamiltonian,
                                             const PauliSum& number_op,
                                             const PenaltyConfig& penalty, EvalMode mode,
                                             std::int64_t n_shots_per_eval,
                                             std::uint64_t stream_seed,
                                             std::optional<double> number_deviation = {}) {
    if (penalty.lambda < 0.0) {
        throw std::invalid_argument("estimate_gradient: lambda must be >= 0");
    }
    const std::size_t n_params = state_prep.n_params();
    std::vector<double> grad(n_params, 0.0);
    if (n_params == 0) {
        return grad;
    }

    double dev = 0.0;
    if (penalty.lambda > 0.0) {
        if (number_deviation.has_value()) {
            dev = *number_deviation;
        } else if (mode == EvalMode::exact) {
            dev = exact_energy(state_prep, params, number_op) - penalty.target;
        } else {
            RngStream rng = derive_stream(stream_seed, {2 * n_params});
            const EnergyEstimate n =
                estimate_energy(state_prep, params, number_op, n_shots_per_eval, rng);
            dev = n.value - penalty.target;
        }
    }
    const double sgn = dev > 0.0 ? 1.0 : (dev < 0.0 ? -1.0 : 0.0);
    const bool need_number = penalty.lambda > 0.0 && sgn != 0.0;

    const GroupedObservable grouped_h = group_commuting(hamiltonian);
    const GroupedObservable grouped_n =
        need_number ? group_commuting(number_op) : GroupedObservable{};

    std::vector<double> shifted(params.begin(), params.end());
    for (std::size_t i = 0; i < n_params; ++i) {
        double h_plus = 0.0;
        double h_minus = 0.0;
        double n_plus = 0.0;
        double n_minus = 0.0;
        for (int side = 0; side < 2; ++side) {
            const double shift = side == 0 ? std::numbers::pi / 2.0 : -std::numbers::pi / 2.0;
            shifted[i] = params[i] + shift;
            double h_val = 0.0;
            double n_val = 0.0;
            if (mode == EvalMode::exact) {
                const Statevector prepared = prepare_state(state_prep, shifted);
                h_val = exact_expectation(prepared, hamiltonian);
                if (need_number) {
                    n_val = exact_expectation(prepared, number_op);
                }
            } else {
                RngStream rng = derive_stream(stream_seed,
                                              {2 * i + static_cast<std::uint64_t>(side)});
                if (need_number) {
                    const auto [shots_h, shots_n] = detail::split_objective_shots(
                        grouped_h, grouped_n, n_shots_per_eval);
                    h_val = estimate_energy(state_prep, shifted, hamiltonian, shots_h, rng).value;
                    n_val = estimate_energy(state_prep, shifted, number_op, shots_n, rng).value;
                } else {
                    h_val = estimate_energy(state_prep, shifted, hamiltonian, n_shots_per_eval,
                                            rng)
                                .value;
                }
            }
            if (side == 0) {
                h_plus = h_val;
                n_plus = n_val;
            } else {
                h_minus = h_val;
                n_minus = n_val;
            }
        }
        shifted[i] = params[i];
        grad[i] = 0.5 * (h_plus - h_minus) +
                  penalty.sign * penalty.lambda * sgn * 0.5 * (n_plus - n_minus);
    }
    return grad;
}

/// Smallest per-evaluation budget that still feeds every measurement group.
inline std::int64_t min_objective_shots(const PauliSum& hamiltonian, const PauliSum& number_op,
                                        double lambda) {
    std::int64_t need = static_cast<std::int64_t>(group_commuting(hamiltonian).groups.size());
    if (lambda > 0.0) {
        need += static_cast<std::int64_t>(group_commuting(number_op).groups.size());
    }
    return need;
}

} // namespace kdvqe
