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

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "kdvqe/ansatz.hpp"
#include "kdvqe/engine.hpp"
#include "kdvqe/hubbard.hpp"

namespace kdvqe {

/// Config-file or config-value problem; carries the offending key.
class config_error : public std::runtime_error {
  public:
    config_error(const std::string& key, const std::string& what)
        : std::runtime_error(key + ": " + what), key_(key) {}

    const std::string& key() const { return key_; }

  private:
    std::string key_;
};

/// Run-table parse problem; carries the 1-based offending line.
class table_error : public std::runtime_error {
  public:
    table_error(int line, const std::string& what)
        : std::runtime_error("row " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const { return line_; }

  private:
    int line_;
};

/// Everything one experiment needs: model parameters, schedule, ansatz
/// shape, and the seed. Unset config keys keep the benchmark defaults.
struct RunConfig {
    HubbardParams hubbard;
    ScheduleConfig schedule;
    int n_layers = 2;
    std::uint64_t seed = 0;
    RotationKind rotation = RotationKind::ry;
};

/// Full float precision; infinities print as "inf" and parse back.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {

inline std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw config_error(key, "expected a number, got '" + value + "'");
    }
}

inline std::int64_t parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const std::int64_t v = std::stoll(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw config_error(key, "expected an integer, got '" + value + "'");
    }
}

inline std::uint64_t parse_uint(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw config_error(key, "expected an unsigned integer, got '" + value + "'");
    }
}

} // namespace detail

inline EvalMode parse_mode(const std::string& value) {
    if (value == "shots") {
        return EvalMode::shots;
    }
    if (value == "exact") {
        return EvalMode::exact;
    }
    throw config_error("mode", "must be 'shots' or 'exact', got '" + value + "'");
}

/// Apply one "key = value" setting. Shared by the config-file parser and the
/// CLI flag layer so both go through the same validation.
inline void apply_config_value(RunConfig& config, const std::string& key,
                               const std::string& value) {
    if (key == "t") {
        config.hubbard.t = detail::parse_double(key, value);
    } else if (key == "u") {
        config.hubbard.u = detail::parse_double(key, value);
    } else if (key == "lambda") {
        config.schedule.lambda = detail::parse_double(key, value);
    } else if (key == "eta") {
        config.schedule.learning_rate = detail::parse_double(key, value);
    } else if (key == "n_shots") {
        config.schedule.total_shots = detail::parse_int(key, value);
    } else if (key == "t0") {
        config.schedule.t0 = detail::parse_double(key, value);
    } else if (key == "decay") {
        config.schedule.decay = detail::parse_double(key, value);
    } else if (key == "prune_threshold") {
        config.schedule.prune_threshold = detail::parse_int(key, value);
    } else if (key == "max_steps") {
        config.schedule.max_steps = static_cast<int>(detail::parse_int(key, value));
    } else if (key == "n_layers") {
        config.n_layers = static_cast<int>(detail::parse_int(key, value));
    } else if (key == "seed") {
        config.seed = detail::parse_uint(key, value);
    } else if (key == "mode") {
        config.schedule.mode = parse_mode(value);
    } else if (key == "gradient_shot_fraction") {
        config.schedule.gradient_shot_fraction = detail::parse_double(key, value);
    } else if (key == "temperature_floor") {
        config.schedule.temperature_floor = detail::parse_double(key, value);
    } else if (key == "refinement_steps") {
        config.schedule.refinement_steps = static_cast<int>(detail::parse_int(key, value));
    } else {
        throw config_error(key, "unknown config key");
    }
}

/// Flat "key = value" config format; blank lines and '#' comments ignored.
inline RunConfig parse_run_config(std::istream& in) {
    RunConfig config;
    std::string line;
    while (std::getline(in, line)) {
        const std::string stripped = detail::trim(line);
        if (stripped.empty() || stripped.front() == '#') {
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw config_error(stripped, "expected 'key = value'");
        }
        const std::string key = detail::trim(stripped.substr(0, eq));
        const std::string value = detail::trim(stripped.substr(eq + 1));
        apply_config_value(config, key, value);
    }
    return config;
}

/// Throws invalid_argument naming the config key if any run setting is out
/// of range.
inline void validate(const RunConfig& config) {
    validate(config.schedule);
    if (!std::isfinite(config.hubbard.t)) throw std::invalid_argument("t: must be finite");
    if (!std::isfinite(config.hubbard.u)) throw std::invalid_argument("u: must be finite");
    if (config.n_layers < 1) throw std::invalid_argument("n_layers: must be >= 1");
}

inline AnsatzSpec ansatz_spec_of(const RunConfig& config) {
    AnsatzSpec spec;
    spec.n_layers = config.n_layers;
    spec.rotation = config.rotation;
    return spec;
}

inline constexpr const char* run_table_header = "step,trial,epsilon,stderr,shots,temperature,active";

inline void write_run_table(std::ostream& out, std::span<const RunRow> rows) {
    out << run_table_header << '\n';
    for (const RunRow& row : rows) {
        out << row.step << ',' << row.trial << ',' << format_double(row.epsilon) << ','
            << format_double(row.std_error) << ',' << row.shots << ','
            << format_double(row.temperature) << ',' << (row.active ? 1 : 0) << '\n';
    }
}

inline std::vector<RunRow> read_run_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || detail::trim(line) != run_table_header) {
        throw table_error(1, "missing or malformed header");
    }
    std::vector<RunRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = detail::trim(line);
        if (stripped.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(stripped);
        std::string field;
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 7) {
            throw table_error(line_no, "expected 7 columns, got " +
                                           std::to_string(fields.size()));
        }
        try {
            RunRow row;
            row.step = std::stoi(fields[0]);
            row.trial = fields[1];
            row.epsilon = std::stod(fields[2]);
            row.std_error = std::stod(fields[3]);
            row.shots = std::stoll(fields[4]);
            row.temperature = std::stod(fields[5]);
            row.active = std::stoi(fields[6]) != 0;
            rows.push_back(std::move(row));
        } catch (const std::exception&) {
            throw table_error(line_no, "unparseable field");
        }
    }
    return rows;
}

/// Flat key-value summary. The config echo plus the seed is enough to
/// reproduce the run bit-exactly.
inline void write_run_summary(std::ostream& out, const RunRecord& record,
                              const RunConfig& config) {
    out << "seed = " << config.seed << '\n';
    out << "mode = " << (config.schedule.mode == EvalMode::shots ? "shots" : "exact") << '\n';
    out << "t = " << format_double(config.hubbard.t) << '\n';
    out << "u = " << format_double(config.hubbard.u) << '\n';
    out << "lambda = " << format_double(config.schedule.lambda) << '\n';
    out << "eta = " << format_double(config.schedule.learning_rate) << '\n';
    out << "n_shots = " << config.schedule.total_shots << '\n';
    out << "t0 = " << format_double(config.schedule.t0) << '\n';
    out << "decay = " << format_double(config.schedule.decay) << '\n';
    out << "prune_threshold = " << config.schedule.prune_threshold << '\n';
    out << "max_steps = " << config.schedule.max_steps << '\n';
    out << "n_layers = " << config.n_layers << '\n';
    out << "gradient_shot_fraction = " << format_double(config.schedule.gradient_shot_fraction)
        << '\n';
    out << "temperature_floor = " << format_double(config.schedule.temperature_floor) << '\n';
    out << "refinement_steps = " << config.schedule.refinement_steps << '\n';
    out << "rotation = " << (config.rotation == RotationKind::ry ? "ry" : "zyz") << '\n';
    out << "penalty_sign = " << (config.schedule.penalty_sign > 0 ? "plus" : "minus") << '\n';
    out << "weights_from = " << (config.schedule.weights_from_raw_energy ? "raw" : "penalized")
        << '\n';
    out << "condensation_step = " << record.condensation_step << '\n';
    out << "final_trial = " << record.final_trial << '\n';
    out << "final_epsilon = " << format_double(record.final_epsilon) << '\n';
    out << "final_energy_exact = " << format_double(record.final_energy_exact) << '\n';
    out << "final_params = ";
    for (std::size_t i = 0; i < record.final_params.size(); ++i) {
        out << (i == 0 ? "" : ",") << format_double(record.final_params[i]);
    }
    out << '\n';
}

/// Per-trial energy trajectory, ending at the trial's last recorded step.
struct TrialSeries {
    std::string label;
    std::vector<RunRow> rows;
};

inline std::vector<TrialSeries> energy_series(std::span<const RunRow> rows) {
    std::vector<TrialSeries> series;
    for (const RunRow& row : rows) {
        auto it = std::find_if(series.begin(), series.end(),
                               [&](const TrialSeries& s) { return s.label == row.trial; });
        if (it == series.end()) {
            series.push_back({row.trial, {}});
            it = series.end() - 1;
        }
        it->rows.push_back(row);
    }
    return series;
}

inline void write_energy_series(std::ostream& out, const TrialSeries& series) {
    out << "step,epsilon,stderr\n";
    for (const RunRow& row : series.rows) {
        out << row.step << ',' << format_double(row.epsilon) << ','
            << format_double(row.std_error) << '\n';
    }
}

/// Stacked shot allocation per step; trials absent from a step count as 0,
/// so every row sums to the total budget.
struct AllocationTable {
    std::vector<std::string> labels;
    std::vector<std::pair<int, std::vector<std::int64_t>>> rows;
};

inline AllocationTable allocation_series(std::span<const RunRow> rows) {
    AllocationTable table;
    for (const RunRow& row : rows) {
        if (std::find(table.labels.begin(), table.labels.end(), row.trial) ==
            table.labels.end()) {
            table.labels.push_back(row.trial);
        }
    }
    std::map<int, std::vector<std::int64_t>> by_step;
    for (const RunRow& row : rows) {
        auto [it, inserted] =
            by_step.try_emplace(row.step, std::vector<std::int64_t>(table.labels.size(), 0));
        const auto col = static_cast<std::size_t>(
            std::distance(table.labels.begin(),
                          std::find(table.labels.begin(), table.labels.end(), row.trial)));
        it->second[col] = row.shots;
    }
    for (auto& [step, alloc] : by_step) {
        table.rows.emplace_back(step, std::move(alloc));
    }
    return table;
}

inline void write_allocation_table(std::ostream& out, const AllocationTable& table) {
    out << "step";
    for (const std::string& label : table.labels) {
        out << ',' << label;
    }
    out << '\n';
    for (const auto& [step, alloc] : table.rows) {
        out << step;
        for (std::int64_t shots : alloc) {
            out << ',' << shots;
        }
        out << '\n';
    }
}

} // namespace kdvqe
