// Copyright 2026 The born-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "bornlab/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitError = 1;
constexpr int kExitFail = 2;

int verdict(bool passed) { return passed ? kExitPass : kExitFail; }

std::filesystem::path place(const std::string &path, const std::optional<std::string> &out_dir) {
    if (!out_dir) return path;
    return std::filesystem::path(*out_dir) / std::filesystem::path(path).filename();
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"born-lab: many-minds and Born-rule simulations"};
    app.require_subcommand(1);

    auto *run = app.add_subcommand("run", "Run a scenario file and write CSV and JSON artifacts");
    std::string scenario_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::optional<std::string> out_dir;
    run->add_option("file", scenario_path, "Scenario file")->required();
    run->add_option("--seed", seed, "Override the scenario seed");
    run->add_option("--mode", mode, "exact or mc");
    run->add_option("--out", out_dir, "Directory for the CSV and JSON outputs");

    auto *check = app.add_subcommand("check", "Print a verification report as JSON");
    check->require_subcommand(1);

    auto *envariance = check->add_subcommand("envariance", "Swap/counterswap symmetry of Schmidt states");
    std::optional<std::uint32_t> env_levels;
    std::optional<std::string> env_weights;
    envariance->add_option("--T", env_levels, "Number of equal-amplitude branches");
    envariance->add_option("--weights", env_weights, "Fine-grain these weights instead");

    auto *frequency = check->add_subcommand("frequency", "Frequency-operator expectations");
    std::string freq_weights;
    std::uint32_t freq_n = 0;
    double freq_epsilon = 0.05;
    frequency->add_option("--weights", freq_weights, "Outcome weights, e.g. 1/3,2/3")->required();
    frequency->add_option("--N", freq_n, "Number of repetitions")->required()->check(CLI::PositiveNumber);
    frequency->add_option("--epsilon", freq_epsilon, "Maverick threshold");

    auto *wallace = check->add_subcommand("wallace", "Erasure chain for an observer record state");
    std::string wallace_weights;
    wallace->add_option("--weights", wallace_weights, "Outcome weights")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitError;
    }

    try {
        if (*run) {
            bornlab::ScenarioFile sc = bornlab::load_scenario(scenario_path);
            if (seed) sc.seed = *seed;
            if (mode) sc.mode = bornlab::parse_mode(*mode);
            bornlab::RunOutput r = bornlab::run_scenario(sc);
            const std::string json = r.summary.dump(2) + "\n";
            bornlab::write_files_atomically({{place(sc.csv_path, out_dir), r.csv}, {place(sc.json_path, out_dir), json}});
            std::cout << json;
            return verdict(r.passed);
        }
        bornlab::CheckOutput c;
        if (*envariance) {
            std::optional<bornlab::SystemSpec> spec;
            if (env_weights) spec = bornlab::SystemSpec::parse(*env_weights);
            c = bornlab::check_envariance(env_levels, spec);
        } else if (*frequency) {
            c = bornlab::check_frequency(bornlab::SystemSpec::parse(freq_weights), freq_n, freq_epsilon);
        } else {
            c = bornlab::check_wallace(bornlab::SystemSpec::parse(wallace_weights));
        }
        std::cout << c.report.dump(2) << "\n";
        return verdict(c.passed);
    } catch (const std::exception &e) {
        std::cerr << "born-lab: " << e.what() << "\n";
        return kExitError;
    }
}
