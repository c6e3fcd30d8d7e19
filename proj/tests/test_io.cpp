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

#include <numeric>
#include <sstream>

#include <catch2/catch.hpp>

#include "kdvqe/io.hpp"

using namespace kdvqe;

TEST_CASE("config files override the defaults", "[io]") {
    std::istringstream in(
        "# benchmark tweaks\n"
        "t = 2.0\n"
        "eta = 0.2\n"
        "n_shots = 5000\n"
        "mode = exact\n"
        "seed = 31\n"
        "\n");
    const RunConfig config = parse_run_config(in);
    CHECK(config.hubbard.t == 2.0);
    CHECK(config.hubbard.u == 1.0);
    CHECK(config.schedule.learning_rate == 0.2);
    CHECK(config.schedule.total_shots == 5000);
    CHECK(config.schedule.mode == EvalMode::exact);
    CHECK(config.seed == 31);
    CHECK(config.schedule.t0 == 25.0);
    CHECK(config.schedule.decay == 0.05);
    CHECK(config.schedule.prune_threshold == 100);
}

TEST_CASE("unknown keys and bad values name the field", "[io]") {
    std::istringstream unknown("speling = 3\n");
    CHECK_THROWS_WITH(parse_run_config(unknown), Catch::Contains("speling"));

    std::istringstream bad("eta = fast\n");
    CHECK_THROWS_WITH(parse_run_config(bad), Catch::Contains("eta"));

    std::istringstream bad_mode("mode = sometimes\n");
    CHECK_THROWS_WITH(parse_run_config(bad_mode), Catch::Contains("mode"));
}

TEST_CASE("run tables survive a write/read round trip", "[io]") {
    std::vector<RunRow> rows = {
        {0, "psi_I", 2.5, 0.031, 1667, std::numeric_limits<double>::infinity(), true},
        {1, "psi_I", 2.4801234567890123, 0.03, 1667, 25.0, true},
        {1, "psi_VI", -1.5123, 0.02, 1666, 25.0, false},
    };
    std::ostringstream out;
    write_run_table(out, rows);
    std::istringstream in(out.str());
    const std::vector<RunRow> parsed = read_run_table(in);
    REQUIRE(parsed.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(parsed[i].step == rows[i].step);
        CHECK(parsed[i].trial == rows[i].trial);
        CHECK(parsed[i].epsilon == rows[i].epsilon); // full precision, bit exact
        CHECK(parsed[i].std_error == rows[i].std_error);
        CHECK(parsed[i].shots == rows[i].shots);
        CHECK(parsed[i].active == rows[i].active);
    }
    CHECK(std::isinf(parsed[0].temperature));
}

TEST_CASE("malformed tables report the offending row", "[io]") {
    std::istringstream missing_header("nope\n");
    CHECK_THROWS_AS(read_run_table(missing_header), table_error);

    std::istringstream short_row(std::string(run_table_header) + "\n1,psi_I,2.5\n");
    try {
        read_run_table(short_row);
        FAIL("expected a table_error");
    } catch (const table_error& err) {
        CHECK(err.line() == 2);
    }
}

TEST_CASE("figure data splits energies per trial and stacks allocations", "[io]") {
    const std::vector<RunRow> rows = {
        {0, "psi_I", 2.5, 0.0, 5000, 25.0, true},
        {0, "psi_VI", -1.5, 0.0, 5000, 25.0, true},
        {1, "psi_I", 2.4, 0.0, 4000, 25.0, false},
        {1, "psi_VI", -1.51, 0.0, 6000, 25.0, true},
        {2, "psi_VI", -1.52, 0.0, 10000, 23.75, true},
    };
    const std::vector<TrialSeries> series = energy_series(rows);
    REQUIRE(series.size() == 2);
    CHECK(series[0].label == "psi_I");
    CHECK(series[0].rows.size() == 2);
    CHECK(series[0].rows.back().step == 1); // ends at its pruning step
    CHECK_FALSE(series[0].rows.back().active);
    CHECK(series[1].rows.size() == 3);

    const AllocationTable alloc = allocation_series(rows);
    REQUIRE(alloc.labels == std::vector<std::string>{"psi_I", "psi_VI"});
    REQUIRE(alloc.rows.size() == 3);
    for (const auto& [step, shots] : alloc.rows) {
        CHECK(std::accumulate(shots.begin(), shots.end(), std::int64_t{0}) == 10000);
    }
    CHECK(alloc.rows[2].second[0] == 0); // pruned trial contributes nothing

    std::ostringstream out;
    write_allocation_table(out, alloc);
    CHECK(out.str().starts_with("step,psi_I,psi_VI\n"));
}

TEST_CASE("summaries echo the configuration", "[io]") {
    RunRecord record;
    record.condensation_step = 122;
    record.final_trial = "psi_VI";
    record.final_epsilon = -1.559;
    record.final_energy_exact = -1.561;
    record.final_params = {0.25, -0.5};
    RunConfig config;
    config.seed = 77;
    std::ostringstream out;
    write_run_summary(out, record, config);
    const std::string text = out.str();
    for (const char* key :
         {"seed = 77", "mode = shots", "t = 1", "u = 1", "lambda = 1", "eta = 0.01",
          "n_shots = 10000", "t0 = 25", "decay = 0.05", "prune_threshold = 100",
          "max_steps = 200", "n_layers = 2", "gradient_shot_fraction = 0.5",
          "temperature_floor = 0.05", "refinement_steps = 50", "condensation_step = 122",
          "final_trial = psi_VI", "final_params = 0.25,-0.5"}) {
        INFO(key);
        CHECK(text.find(key) != std::string::npos);
    }
}

TEST_CASE("library-level runs serialize identically for equal seeds", "[io]") {
    ScheduleConfig schedule;
    schedule.max_steps = 6;
    schedule.refinement_steps = 1;
    const Problem p = hubbard_problem();
    const RunRecord a = run(schedule, p, 42);
    const RunRecord b = run(schedule, p, 42);
    std::ostringstream sa;
    std::ostringstream sb;
    write_run_table(sa, a.rows);
    write_run_table(sb, b.rows);
    CHECK(sa.str() == sb.str());
}
