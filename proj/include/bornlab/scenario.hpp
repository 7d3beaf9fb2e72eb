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

#ifndef BORNLAB_SCENARIO_HPP
#define BORNLAB_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "bornlab/mmi_unitary.hpp"
#include "bornlab/system_spec.hpp"

namespace bornlab {

enum class Model { EverettFrequency, MmiStochastic, MmiUnitary, EnvarianceCheck, WallaceChain };

std::string_view model_name(Model m);
std::string_view mode_name(RunMode m);
/// Accepts "exact", "monte-carlo" and "mc".
RunMode parse_mode(std::string_view text);

/// A validated scenario file.
///
/// Format: UTF-8 text, one `key = value` per line, `#` starts a comment.
/// Keys: name, model, weights, outcomes, N, M, T, seed, mode, epsilon, csv,
/// json. Weights are comma-separated "p/q" rationals or decimals.
struct ScenarioFile {
    std::string name;
    Model model = Model::MmiUnitary;
    std::optional<SystemSpec> spec;
    std::optional<std::uint64_t> minds;
    std::optional<std::uint64_t> repetitions;
    std::optional<std::uint32_t> levels;
    std::uint64_t seed = 0;
    RunMode mode = RunMode::MonteCarlo;
    double epsilon = 0.05;
    std::string csv_path;
    std::string json_path;
};

/// Errors carry "<source>:<line>: <message>".
ScenarioFile parse_scenario(std::string_view text, const std::string &source = "<scenario>");
ScenarioFile load_scenario(const std::filesystem::path &path);

}  // namespace bornlab

#endif
