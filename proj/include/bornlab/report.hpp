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

#ifndef BORNLAB_REPORT_HPP
#define BORNLAB_REPORT_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bornlab/scenario.hpp"
#include "bornlab/system_spec.hpp"

namespace bornlab {

using OrderedJson = nlohmann::ordered_json;

/// Column order of every tally CSV.
inline constexpr const char *kCsvHeader = "repetition,outcome,aware_count,fraction";

struct RunOutput {
    /// RFC 4180, CRLF line endings, header first.
    std::string csv;
    /// Stable key order; "generated_at" is the only non-reproducible field.
    OrderedJson summary;
    bool passed = false;
};

RunOutput run_scenario(const ScenarioFile &scenario);

struct CheckOutput {
    OrderedJson report;
    bool passed = false;
};

/// Swap/counterswap checks on every pair of the T-branch Schmidt state, or on
/// the fine-grained state of `spec` when given.
CheckOutput check_envariance(std::optional<std::uint32_t> levels, const std::optional<SystemSpec> &spec);
/// Frequency-operator expectations and maverick measures for N repetitions.
CheckOutput check_frequency(const SystemSpec &spec, std::uint32_t n, double epsilon);
/// Counterswap + erasure chain on every outcome pair of the observer-record state.
CheckOutput check_wallace(const SystemSpec &spec);

/// 3 sigma half-width of a single repetition's aware fraction.
double band_halfwidth(double weight, std::uint64_t minds);

std::string csv_field(const std::string &s);
std::string format_double(double v);

/// Writes every file to a temporary sibling first and renames them into
/// place only after all writes succeed.
void write_files_atomically(const std::vector<std::pair<std::filesystem::path, std::string>> &files);

}  // namespace bornlab

#endif
