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
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "kdvqe/allocation.hpp"
#include "kdvqe/ansatz.hpp"
#include "kdvqe/estimator.hpp"
#include "kdvqe/hubbard.hpp"
#include "kdvqe/rng.hpp"

namespace kdvqe {

/// Schedule and budget of one annealed ensemble run. The shot/temperature
/// defaults (10^4 total shots, T0 = 25, 5% decay, prune below 100) are the
/// benchmark settings.
struct ScheduleConfig {
    std::int64_t total_shots = 10000;
    double t0 = 25.0;
    double decay = 0.05; // fraction of T removed after each step
    std::int64_t prune_threshold = 100;
    // 0.01 keeps per-step descent slow against the annealing timescale, so
    // high-energy trials are pruned while still high instead of racing the
    // eventual survivor into the ground basin.
    double learning_rate = 0.01;
    int max_steps = 200;
    double lambda = 1.0;
    double gradient_shot_fraction = 0.5; // share of a trial's shots spent on gradient evals
    double temperature_floor = 0.05;     // condensation requires T below this
    int refinement_steps = 50;
    EvalMode mode = EvalMode::shots;
    double penalty_sign = 1.0;             // +1 adds the number penalty, -1 subtracts
    bool weights_from_raw_energy = false;  // weight trials by the raw energy instead of
                                           // the penalized objective
};

/// Throws invalid_argument naming the offending config key.
inline void validate(const ScheduleConfig& c) {
    if (c.total_shots < 1) throw std::invalid_argument("n_shots: must be >= 1");
    if (!(c.t0 > 0.0) || !std::isfinite(c.t0)) throw std::invalid_argument("t0: must be > 0");
    if (!(c.decay > 0.0 && c.decay < 1.0)) throw std::invalid_argument("decay: must be in (0,1)");
    if (c.prune_threshold < 0) throw std::invalid_argument("prune_threshold: must be >= 0");
    if (!(c.learning_rate > 0.0)) throw std::invalid_argument("eta: must be > 0");
    if (c.max_steps < 0) throw std::invalid_argument("max_steps: must be >= 0");
    if (c.lambda < 0.0) throw std::invalid_argument("lambda: must be >= 0");
    if (!(c.gradient_shot_fraction > 0.0 && c.gradient_shot_fraction < 1.0)) {
        throw std::invalid_argument("gradient_shot_fraction: must be in (0,1)");
    }
    if (!(c.temperature_floor > 0.0)) {
        throw std::invalid_argument("temperature_floor: must be > 0");
    }
    if (c.refinement_steps < 0) throw std::invalid_argument("refinement_steps: must be >= 0");
    if (c.penalty_sign != 1.0 && c.penalty_sign != -1.0) {
        throw std::invalid_argument("penalty_sign: must be plus or minus");
    }
}

/// One ensemble member. Pruned trials never regain activity and hold zero
/// shots.
struct TrialState {
    std::string label;
    std::vector<double> params;
    EnergyEstimate energy;
    double raw_energy = 0.0; // Hamiltonian part of the last objective estimate
    std::int64_t shots_assigned = 0;
    bool active = true;
};

struct Ensemble {
    std::vector<TrialState> trials;
    double temperature = std::numeric_limits<double>::infinity();
    int step = 0;
    ScheduleConfig config;
    std::uint64_t rng_seed = 0;
};

struct RunRow {
    int step = 0;
    std::string trial;
    double epsilon = 0.0;
    double std_error = 0.0;
    std::int64_t shots = 0;
    double temperature = 0.0;
    bool active = true;
};

struct RunRecord {
    std::vector<RunRow> rows;
    int condensation_step = -1; // -1: the pool never condensed
    std::string final_trial;
    double final_epsilon = 0.0;
    double final_energy_exact = 0.0;
    std::vector<double> final_params;
};

/// Everything a run needs besides the schedule: the parameterized state
/// preparation, the objective observables, and the starting trials.
struct Problem {
    Circuit state_prep;
    PauliSum hamiltonian;
    PauliSum number_op;
    double number_target = 2.0;
    std::vector<TrialInit> initial;
};

inline Problem hubbard_problem(const HubbardParams& params = {}, const AnsatzSpec& spec = {}) {
    return Problem{build_ansatz(spec), build_hubbard_hamiltonian(params),
                   particle_number_operator(), 2.0, initial_trials(spec)};
}

/// Boltzmann weights over trial energies at the given virtual temperature.
/// Energies are shifted by their minimum before exponentiation, which makes
/// the weights exactly invariant under a common energy offset and keeps the
/// exponentials in range. temperature = +inf gives the uniform mixture; the
/// T -> 0 limit is realized by the schedule, never evaluated here.
inline std::vector<double> boltzmann_weights(std::span<const double> energies,
                                             double temperature) {
    if (energies.empty()) {
        throw std::invalid_argument("boltzmann_weights: empty energies");
    }
    if (std::isnan(temperature) || temperature <= 0.0) {
        throw std::invalid_argument("boltzmann_weights: temperature must be positive");
    }
    const double lowest = *std::min_element(energies.begin(), energies.end());
    std::vector<double> w(energies.size());
    double z = 0.0;
    for (std::size_t k = 0; k < energies.size(); ++k) {
        const double shifted = energies[k] - lowest;
        w[k] = std::isinf(temperature) ? 1.0 : std::exp(-shifted / temperature);
        z += w[k];
    }
    for (double& x : w) {
        x /= z;
    }
    return w;
}

/// Integer shot allocation N_s * w_k with largest-remainder rounding; ties go
/// to the lower trial index and the result sums to N_s exactly.
inline std::vector<std::int64_t> allocate_shots(std::span<const double> weights,
                                                std::int64_t n_s) {
    double sum = 0.0;
    for (double w : weights) {
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("allocate_shots: weights must sum to 1");
    }
    return largest_remainder_allocation(weights, n_s);
}

inline double anneal_step(double temperature, double decay) {
    if (!(temperature > 0.0)) {
        throw std::invalid_argument("anneal_step: temperature must be positive");
    }
    if (!(decay > 0.0 && decay < 1.0)) {
        throw std::invalid_argument("anneal_step: decay must be in (0,1)");
    }
    return temperature * (1.0 - decay);
}

namespace detail {

inline std::vector<std::size_t> active_indices(const Ensemble& e) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < e.trials.size(); ++k) {
        if (e.trials[k].active) {
            idx.push_back(k);
        }
    }
    return idx;
}

inline double weight_energy(const Ensemble& e, const TrialState& trial) {
    return e.config.weights_from_raw_energy ? trial.raw_energy : trial.energy.value;
}

/// Recompute Boltzmann weights over the active trials and write the integer
/// allocation back into them.
inline void reallocate(Ensemble& e) {
    const std::vector<std::size_t> idx = active_indices(e);
    std::vector<double> energies;
    energies.reserve(idx.size());
    for (std::size_t k : idx) {
        energies.push_back(weight_energy(e, e.trials[k]));
    }
    const std::vector<double> weights = boltzmann_weights(energies, e.temperature);
    const std::vector<std::int64_t> alloc = allocate_shots(weights, e.config.total_shots);
    for (std::size_t j = 0; j < idx.size(); ++j) {
        e.trials[idx[j]].shots_assigned = alloc[j];
    }
}

} // namespace detail

/// Deactivate trials whose allocation fell below the prune threshold and
/// reallocate the full budget over the survivors, repeating until stable.
/// The pool never empties: if every active trial would be pruned, the single
/// lowest-energy one (ties to the lower index) is retained.
inline Ensemble prune(Ensemble e) {
    if (detail::active_indices(e).empty()) {
        throw std::invalid_argument("prune: no active trials");
    }
    for (;;) {
        const std::vector<std::size_t> idx = detail::active_indices(e);
        if (idx.size() <= 1) {
            break;
        }
        std::vector<std::size_t> below;
        for (std::size_t k : idx) {
            if (e.trials[k].shots_assigned < e.config.prune_threshold) {
                below.push_back(k);
            }
        }
        if (below.empty()) {
            break;
        }
        if (below.size() == idx.size()) {
            std::size_t keep = idx[0];
            for (std::size_t k : idx) {
                if (detail::weight_energy(e, e.trials[k]) <
                    detail::weight_energy(e, e.trials[keep])) {
                    keep = k;
                }
            }
            for (std::size_t k : idx) {
                if (k != keep) {
                    e.trials[k].active = false;
                    e.trials[k].shots_assigned = 0;
                }
            }
            detail::reallocate(e);
            break;
        }
        for (std::size_t k : below) {
            e.trials[k].active = false;
            e.trials[k].shots_assigned = 0;
        }
        detail::reallocate(e);
    }
    return e;
}

/// tr(rho H) of the current mixture: Boltzmann-weighted average of the
/// active trials' tracked energies at the current temperature.
inline double mixed_state_energy(const Ensemble& e) {
    const std::vector<std::size_t> idx = detail::active_indices(e);
    if (idx.empty()) {
        throw std::invalid_argument("mixed_state_energy: no active trials");
    }
    std::vector<double> energies;
    energies.reserve(idx.size());
    for (std::size_t k : idx) {
        energies.push_back(detail::weight_energy(e, e.trials[k]));
    }
    const std::vector<double> weights = boltzmann_weights(energies, e.temperature);
    double acc = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
        acc += weights[j] * energies[j];
    }
    return acc;
}

/// Stream-purpose labels: every evaluation draws from the sub-stream named
/// (trial index, step index, purpose), so trial evaluations are independent
/// of execution order.
inline constexpr std::uint64_t stream_objective = 0;
inline constexpr std::uint64_t stream_gradient = 1;

namespace detail {

struct TrialUpdate {
    ObjectiveEval objective;
    bool updated = false;
};

/// Estimate one trial's objective with its estimation sub-budget, then take
/// one gradient-descent step with the remainder. The parameter update is
/// skipped when the per-evaluation gradient budget cannot feed every
/// measurement group; the trial keeps its estimate and simply stops moving,
/// which only happens to allocations already sliding toward the prune
/// threshold.
inline TrialUpdate evaluate_and_update(TrialState& trial, std::size_t trial_index,
                                       const Problem& problem, const ScheduleConfig& config,
                                       std::uint64_t run_seed, int step_index,
                                       std::int64_t budget) {
    const PenaltyConfig penalty{config.lambda, problem.number_target, config.penalty_sign};
    const std::size_t n_params = problem.state_prep.n_params();

    std::int64_t grad_budget = static_cast<std::int64_t>(
        std::floor(static_cast<double>(budget) * config.gradient_shot_fraction));
    std::int64_t est_budget = budget - grad_budget;

    RngStream est_rng = derive_stream(
        run_seed, {trial_index, static_cast<std::uint64_t>(step_index), stream_objective});
    TrialUpdate result;
    result.objective =
        penalized_objective(problem.state_prep, trial.params, problem.hamiltonian,
                            problem.number_op, penalty, config.mode, est_budget, est_rng);
    trial.energy = result.objective.estimate;
    trial.raw_energy = result.objective.hamiltonian_value;

    if (n_params == 0) {
        return result;
    }
    const double deviation = config.lambda > 0.0
                                 ? result.objective.number_value - problem.number_target
                                 : 0.0;
    const std::int64_t per_eval = grad_budget / static_cast<std::int64_t>(2 * n_params);
    if (config.mode == EvalMode::shots) {
        const double sgn = deviation > 0.0 ? 1.0 : (deviation < 0.0 ? -1.0 : 0.0);
        std::int64_t need =
            static_cast<std::int64_t>(group_commuting(problem.hamiltonian).groups.size());
        if (config.lambda > 0.0 && sgn != 0.0) {
            need += static_cast<std::int64_t>(group_commuting(problem.number_op).groups.size());
        }
        if (per_eval < need) {
            return result;
        }
    }
    const std::uint64_t grad_seed = derive_seed(
        run_seed, {trial_index, static_cast<std::uint64_t>(step_index), stream_gradient});
    const std::vector<double> grad =
        estimate_gradient(problem.state_prep, trial.params, problem.hamiltonian,
                          problem.number_op, penalty, config.mode, per_eval, grad_seed,
                          deviation);
    for (std::size_t i = 0; i < n_params; ++i) {
        trial.params[i] -= config.learning_rate * grad[i];
    }
    result.updated = true;
    return result;
}

} // namespace detail

/// One optimization-and-annealing step. For every active trial: estimate the
/// penalized objective, take a gradient step, then reweight the pool from the
/// fresh estimates, reallocate the budget, prune, and decay the temperature.
/// Appends one row per trial that was active when the step began; a trial
/// pruned here gets its final row with active = false.
inline Ensemble step(Ensemble e, const Problem& problem, std::vector<RunRow>* rows = nullptr) {
    const std::vector<std::size_t> idx = detail::active_indices(e);
    if (idx.empty()) {
        throw std::invalid_argument("step: no active trials");
    }
    const int step_index = e.step + 1;
    const double temperature_used = e.temperature;

    std::vector<std::int64_t> consumed(e.trials.size(), 0);
    for (std::size_t k : idx) {
        consumed[k] = e.trials[k].shots_assigned;
        detail::evaluate_and_update(e.trials[k], k, problem, e.config, e.rng_seed, step_index,
                                    e.trials[k].shots_assigned);
    }

    detail::reallocate(e);
    e = prune(std::move(e));

    if (rows != nullptr) {
        for (std::size_t k : idx) {
            rows->push_back({step_index, e.trials[k].label, e.trials[k].energy.value,
                             e.trials[k].energy.std_error, consumed[k], temperature_used,
                             e.trials[k].active});
        }
    }
    e.temperature = anneal_step(e.temperature, e.config.decay);
    e.step = step_index;
    return e;
}

/// Fresh ensemble with the uniform (infinite-temperature) allocation and the
/// schedule's starting temperature.
inline Ensemble make_ensemble(const Problem& problem, const ScheduleConfig& config,
                              std::uint64_t seed) {
    validate(config);
    if (problem.initial.empty()) {
        throw std::invalid_argument("make_ensemble: no initial trials");
    }
    Ensemble e;
    e.config = config;
    e.rng_seed = seed;
    e.temperature = config.t0;
    const std::vector<double> uniform(problem.initial.size(),
                                      1.0 / static_cast<double>(problem.initial.size()));
    const std::vector<std::int64_t> alloc = allocate_shots(uniform, config.total_shots);
    for (std::size_t k = 0; k < problem.initial.size(); ++k) {
        TrialState trial;
        trial.label = problem.initial[k].label;
        trial.params = problem.initial[k].params0;
        trial.shots_assigned = alloc[k];
        e.trials.push_back(std::move(trial));
    }
    return e;
}

/// Full pipeline: initial estimates under the uniform mixture, annealed
/// optimization until the pool condenses (a single active trial at a
/// temperature below the floor) or max_steps runs out, then refinement of
/// the survivor with the whole budget.
inline RunRecord run(const ScheduleConfig& config, const Problem& problem, std::uint64_t seed) {
    Ensemble e = make_ensemble(problem, config, seed);
    RunRecord record;

    const PenaltyConfig penalty{config.lambda, problem.number_target, config.penalty_sign};
    for (std::size_t k = 0; k < e.trials.size(); ++k) {
        RngStream rng = derive_stream(seed, {k, 0, stream_objective});
        const ObjectiveEval obj =
            penalized_objective(problem.state_prep, e.trials[k].params, problem.hamiltonian,
                                problem.number_op, penalty, config.mode,
                                e.trials[k].shots_assigned, rng);
        e.trials[k].energy = obj.estimate;
        e.trials[k].raw_energy = obj.hamiltonian_value;
        record.rows.push_back({0, e.trials[k].label, obj.estimate.value,
                               obj.estimate.std_error, e.trials[k].shots_assigned,
                               std::numeric_limits<double>::infinity(), true});
    }

    std::size_t survivor = 0;
    const auto finalize = [&](std::size_t surv) {
        record.final_trial = e.trials[surv].label;
        record.final_epsilon = e.trials[surv].energy.value;
        record.final_params = e.trials[surv].params;
        record.final_energy_exact =
            exact_energy(problem.state_prep, e.trials[surv].params, problem.hamiltonian);
    };

    if (config.max_steps == 0) {
        survivor = 0;
        for (std::size_t k = 1; k < e.trials.size(); ++k) {
            if (e.trials[k].energy.value < e.trials[survivor].energy.value) {
                survivor = k;
            }
        }
        finalize(survivor);
        return record;
    }

    for (int s = 0; s < config.max_steps; ++s) {
        e = step(std::move(e), problem, &record.rows);
        const std::vector<std::size_t> idx = detail::active_indices(e);
        if (idx.size() == 1 && e.temperature < config.temperature_floor) {
            record.condensation_step = e.step;
            break;
        }
    }

    {
        const std::vector<std::size_t> idx = detail::active_indices(e);
        survivor = idx[0];
        for (std::size_t k : idx) {
            if (e.trials[k].energy.value < e.trials[survivor].energy.value) {
                survivor = k;
            }
        }
        for (std::size_t k : idx) {
            if (k != survivor) {
                e.trials[k].active = false;
                e.trials[k].shots_assigned = 0;
            }
        }
    }

    TrialState& winner = e.trials[survivor];
    for (int r = 0; r < config.refinement_steps; ++r) {
        const int step_index = e.step + 1;
        winner.shots_assigned = config.total_shots;
        detail::evaluate_and_update(winner, survivor, problem, e.config, e.rng_seed, step_index,
                                    winner.shots_assigned);
        record.rows.push_back({step_index, winner.label, winner.energy.value,
                               winner.energy.std_error, winner.shots_assigned, e.temperature,
                               true});
        e.temperature = anneal_step(e.temperature, e.config.decay);
        e.step = step_index;
    }

    finalize(survivor);
    return record;
}

} // namespace kdvqe
