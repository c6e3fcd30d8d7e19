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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kdvqe/kdvqe.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_runtime = 1;
constexpr int exit_usage = 2;

std::string default_outdir() {
    if (const char* env = std::getenv("KDVQE_OUTDIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return ".";
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file " + path.string());
    }
    out << contents;
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

struct RunFlags {
    std::string config_path;
    std::string outdir;
    std::string mode;
    std::string rotation;
    std::string penalty_sign;
    std::string weights_from;
    double t = 0;
    double u = 0;
    double lambda = 0;
    double eta = 0;
    std::int64_t n_shots = 0;
    double t0 = 0;
    double decay = 0;
    std::int64_t prune_threshold = 0;
    int max_steps = 0;
    int n_layers = 0;
    std::uint64_t seed = 0;
    double gradient_shot_fraction = 0;
    double temperature_floor = 0;
    int refinement_steps = 0;
};

int cmd_run(const CLI::App& cmd, const RunFlags& flags) {
    kdvqe::RunConfig config;
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in) {
            std::cerr << "error: cannot read config file " << flags.config_path << "\n";
            return exit_usage;
        }
        try {
            config = kdvqe::parse_run_config(in);
        } catch (const kdvqe::config_error& err) {
            std::cerr << "error: config file: " << err.what() << "\n";
            return exit_usage;
        }
    }

    // flags override config-file values, which override the defaults
    try {
        if (cmd.count("--t")) config.hubbard.t = flags.t;
        if (cmd.count("--u")) config.hubbard.u = flags.u;
        if (cmd.count("--lambda")) config.schedule.lambda = flags.lambda;
        if (cmd.count("--eta")) config.schedule.learning_rate = flags.eta;
        if (cmd.count("--shots")) config.schedule.total_shots = flags.n_shots;
        if (cmd.count("--t0")) config.schedule.t0 = flags.t0;
        if (cmd.count("--decay")) config.schedule.decay = flags.decay;
        if (cmd.count("--prune-threshold")) config.schedule.prune_threshold = flags.prune_threshold;
        if (cmd.count("--max-steps")) config.schedule.max_steps = flags.max_steps;
        if (cmd.count("--layers")) config.n_layers = flags.n_layers;
        if (cmd.count("--seed")) config.seed = flags.seed;
        if (cmd.count("--mode")) config.schedule.mode = kdvqe::parse_mode(flags.mode);
        if (cmd.count("--gradient-shot-fraction")) {
            config.schedule.gradient_shot_fraction = flags.gradient_shot_fraction;
        }
        if (cmd.count("--temperature-floor")) {
            config.schedule.temperature_floor = flags.temperature_floor;
        }
        if (cmd.count("--refinement-steps")) {
            config.schedule.refinement_steps = flags.refinement_steps;
        }
        if (cmd.count("--rotation")) {
            if (flags.rotation == "ry") {
                config.rotation = kdvqe::RotationKind::ry;
            } else if (flags.rotation == "zyz") {
                config.rotation = kdvqe::RotationKind::zyz;
            } else {
                throw kdvqe::config_error("rotation", "must be 'ry' or 'zyz'");
            }
        }
        if (cmd.count("--penalty-sign")) {
            if (flags.penalty_sign == "plus") {
                config.schedule.penalty_sign = 1.0;
            } else if (flags.penalty_sign == "minus") {
                config.schedule.penalty_sign = -1.0;
            } else {
                throw kdvqe::config_error("penalty_sign", "must be 'plus' or 'minus'");
            }
        }
        if (cmd.count("--weights-from")) {
            if (flags.weights_from == "penalized") {
                config.schedule.weights_from_raw_energy = false;
            } else if (flags.weights_from == "raw") {
                config.schedule.weights_from_raw_energy = true;
            } else {
                throw kdvqe::config_error("weights_from", "must be 'penalized' or 'raw'");
            }
        }
        kdvqe::validate(config);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return exit_usage;
    }

    const std::string outdir = cmd.count("--outdir") ? flags.outdir : default_outdir();

    try {
        const kdvqe::Problem problem =
            kdvqe::hubbard_problem(config.hubbard, kdvqe::ansatz_spec_of(config));
        const kdvqe::RunRecord record = kdvqe::run(config.schedule, problem, config.seed);

        std::ostringstream table;
        kdvqe::write_run_table(table, record.rows);
        std::ostringstream summary;
        kdvqe::write_run_summary(summary, record, config);

        const std::filesystem::path dir(outdir);
        std::filesystem::create_directories(dir);
        write_file(dir / "run_table.csv", table.str());
        write_file(dir / "run_summary.txt", summary.str());

        std::cout << "final_trial = " << record.final_trial << "\n"
                  << "final_epsilon = " << kdvqe::format_double(record.final_epsilon) << "\n"
                  << "final_energy_exact = " << kdvqe::format_double(record.final_energy_exact)
                  << "\n"
                  << "condensation_step = " << record.condensation_step << "\n"
                  << "table = " << (dir / "run_table.csv").string() << "\n"
                  << "summary = " << (dir / "run_summary.txt").string() << "\n";
        return exit_ok;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return exit_runtime;
    }
}

int cmd_exact(double t, double u, bool dump_hamiltonian) {
    try {
        const kdvqe::HubbardParams params{t, u};
        const kdvqe::PauliSum h = kdvqe::build_hubbard_hamiltonian(params);
        const kdvqe::PauliSum number_op = kdvqe::particle_number_operator();
        const kdvqe::GroundState ground = kdvqe::exact_ground(h);

        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.12g", ground.energy);
        std::cout << "ground_energy = " << buf << "\n";
        std::snprintf(buf, sizeof(buf), "%.12g",
                      kdvqe::exact_expectation(ground.state, number_op));
        std::cout << "ground_particle_number = " << buf << "\n";

        const kdvqe::AnsatzSpec spec;
        const kdvqe::Circuit circuit = kdvqe::build_ansatz(spec);
        for (const kdvqe::TrialInit& trial : kdvqe::initial_trials(spec)) {
            const kdvqe::Statevector psi =
                kdvqe::prepare_state(circuit, trial.params0);
            std::snprintf(buf, sizeof(buf), "%.12g", kdvqe::exact_expectation(psi, h));
            std::cout << trial.label << " = " << buf << "\n";
        }
        if (dump_hamiltonian) {
            std::cout << kdvqe::to_text(h);
        }
        return exit_ok;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return exit_runtime;
    }
}

int cmd_figdata(const std::string& table_path, const CLI::App& cmd, const std::string& outdir_flag) {
    std::ifstream in(table_path);
    if (!in) {
        std::cerr << "error: cannot read table " << table_path << "\n";
        return exit_usage;
    }
    std::vector<kdvqe::RunRow> rows;
    try {
        rows = kdvqe::read_run_table(in);
    } catch (const kdvqe::table_error& err) {
        std::cerr << "error: " << table_path << ": " << err.what() << "\n";
        return exit_usage;
    }

    const std::string outdir = cmd.count("--outdir") ? outdir_flag : default_outdir();
    try {
        const std::filesystem::path dir(outdir);
        std::filesystem::create_directories(dir);
        for (const kdvqe::TrialSeries& series : kdvqe::energy_series(rows)) {
            std::ostringstream out;
            kdvqe::write_energy_series(out, series);
            write_file(dir / ("energy_" + series.label + ".csv"), out.str());
            std::cout << "energy_" << series.label << ".csv\n";
        }
        std::ostringstream out;
        kdvqe::write_allocation_table(out, kdvqe::allocation_series(rows));
        write_file(dir / "allocation.csv", out.str());
        std::cout << "allocation.csv\n";
        return exit_ok;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return exit_runtime;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Annealed-ensemble variational eigensolver for the 2-site Hubbard model"};
    app.require_subcommand(1);

    RunFlags flags;
    CLI::App* run = app.add_subcommand("run", "Run a seeded experiment and write its tables");
    run->add_option("--config", flags.config_path, "Config file (key = value lines)");
    run->add_option("--outdir", flags.outdir, "Output directory (default: $KDVQE_OUTDIR or .)");
    run->add_option("--seed", flags.seed, "RNG seed");
    run->add_option("--t", flags.t, "Hopping amplitude");
    run->add_option("--u", flags.u, "On-site interaction");
    run->add_option("--lambda", flags.lambda, "Particle-number penalty strength");
    run->add_option("--eta", flags.eta, "Gradient-descent learning rate");
    run->add_option("--shots", flags.n_shots, "Total shot budget per step");
    run->add_option("--t0", flags.t0, "Starting virtual temperature");
    run->add_option("--decay", flags.decay, "Per-step temperature decay fraction");
    run->add_option("--prune-threshold", flags.prune_threshold,
                    "Prune trials allocated fewer shots than this");
    run->add_option("--max-steps", flags.max_steps, "Maximum annealing steps");
    run->add_option("--layers", flags.n_layers, "Ansatz layers");
    run->add_option("--mode", flags.mode, "Estimation mode: shots | exact");
    run->add_option("--gradient-shot-fraction", flags.gradient_shot_fraction,
                    "Share of each trial's shots spent on gradient evaluations");
    run->add_option("--temperature-floor", flags.temperature_floor,
                    "Condensation requires the temperature below this");
    run->add_option("--refinement-steps", flags.refinement_steps,
                    "Extra full-budget steps on the survivor");
    run->add_option("--rotation", flags.rotation, "Rotation family: ry | zyz");
    run->add_option("--penalty-sign", flags.penalty_sign, "Penalty sign: plus | minus");
    run->add_option("--weights-from", flags.weights_from,
                    "Weight trials by: penalized | raw");

    double exact_t = 1.0;
    double exact_u = 1.0;
    bool dump_hamiltonian = false;
    CLI::App* exact = app.add_subcommand("exact", "Exact ground data from the dense oracle");
    exact->add_option("--t", exact_t, "Hopping amplitude");
    exact->add_option("--u", exact_u, "On-site interaction");
    exact->add_flag("--dump-hamiltonian", dump_hamiltonian,
                    "Also print the Hamiltonian, one 'coefficient pauli_string' per line");

    std::string table_path;
    std::string figdata_outdir;
    CLI::App* figdata =
        app.add_subcommand("figdata", "Split a run table into per-trial plot series");
    figdata->add_option("--table", table_path, "Run table produced by 'run'")->required();
    figdata->add_option("--outdir", figdata_outdir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    if (run->parsed()) {
        return cmd_run(*run, flags);
    }
    if (exact->parsed()) {
        return cmd_exact(exact_t, exact_u, dump_hamiltonian);
    }
    return cmd_figdata(table_path, *figdata, figdata_outdir);
}
