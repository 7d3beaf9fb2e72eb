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

#include "bornlab/scenario.hpp"

#include <cctype>
#include <algorithm>
#include <charconv>
#include <limits>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace bornlab {

namespace {

std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto comma = s.find(',', start);
        out.push_back(trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::uint64_t parse_u64(const std::string &value) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
        throw Error("expected an unsigned integer, got '" + value + "'");
    }
    return v;
}

double parse_double(const std::string &value) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
        throw Error("expected a number, got '" + value + "'");
    }
    return v;
}

Model parse_model(const std::string &value) {
    static const std::map<std::string, Model> models = {
        {"everett-frequency", Model::EverettFrequency}, {"mmi-stochastic", Model::MmiStochastic},
        {"mmi-unitary", Model::MmiUnitary},             {"envariance-check", Model::EnvarianceCheck},
        {"wallace-chain", Model::WallaceChain},
    };
    auto it = models.find(value);
    if (it == models.end()) {
        throw Error("unknown model '" + value + "'");
    }
    return it->second;
}

struct Entry {
    std::string value;
    std::size_t line;
};

}  // namespace

std::string_view model_name(Model m) {
    switch (m) {
        case Model::EverettFrequency:
            return "everett-frequency";
        case Model::MmiStochastic:
            return "mmi-stochastic";
        case Model::MmiUnitary:
            return "mmi-unitary";
        case Model::EnvarianceCheck:
            return "envariance-check";
        case Model::WallaceChain:
            return "wallace-chain";
    }
    return "unknown";
}

std::string_view mode_name(RunMode m) {
    return m == RunMode::Exact ? "exact" : "monte-carlo";
}

RunMode parse_mode(std::string_view text) {
    if (text == "exact") return RunMode::Exact;
    if (text == "monte-carlo" || text == "mc") return RunMode::MonteCarlo;
    throw Error("mode must be exact, monte-carlo or mc");
}

ScenarioFile parse_scenario(std::string_view text, const std::string &source) {
    static const std::vector<std::string> known = {"name", "model", "weights", "outcomes", "N",   "M",
                                                   "T",    "seed",  "mode",    "epsilon",  "csv", "json"};
    std::map<std::string, Entry> entries;
    std::size_t line_no = 0;
    std::size_t last_line = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    auto fail = [&](std::size_t line, const std::string &msg) -> Error {
        return Error(source + ":" + std::to_string(line) + ": " + msg);
    };
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        std::string content = trim(line);
        if (content.empty()) continue;
        last_line = line_no;
        auto eq = content.find('=');
        if (eq == std::string::npos) {
            throw fail(line_no, "expected 'key = value'");
        }
        std::string key = trim(std::string_view(content).substr(0, eq));
        std::string value = trim(std::string_view(content).substr(eq + 1));
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw fail(line_no, "unknown key '" + key + "'");
        }
        if (entries.contains(key)) {
            throw fail(line_no, "duplicate key '" + key + "'");
        }
        if (value.empty()) {
            throw fail(line_no, "empty value for '" + key + "'");
        }
        entries[key] = Entry{value, line_no};
    }

    ScenarioFile sc;
    auto with_line = [&](const std::string &key, auto &&fn) {
        const Entry &e = entries.at(key);
        try {
            fn(e.value);
        } catch (const Error &err) {
            throw fail(e.line, err.what());
        }
    };
    auto require = [&](const std::string &key) {
        if (!entries.contains(key)) {
            throw fail(last_line, "missing required key '" + key + "' for model " +
                                      std::string(model_name(sc.model)));
        }
    };

    if (!entries.contains("model")) {
        throw fail(last_line, "missing required key 'model'");
    }
    with_line("model", [&](const std::string &v) { sc.model = parse_model(v); });
    require("name");
    sc.name = entries.at("name").value;

    std::vector<std::string> outcome_names;
    if (entries.contains("outcomes")) outcome_names = split_list(entries.at("outcomes").value);
    if (entries.contains("weights")) {
        with_line("weights", [&](const std::string &v) { sc.spec = SystemSpec::parse(v, outcome_names); });
    } else if (!outcome_names.empty()) {
        throw fail(entries.at("outcomes").line, "outcomes given without weights");
    }
    if (entries.contains("N")) with_line("N", [&](const std::string &v) { sc.minds = parse_u64(v); });
    if (entries.contains("M")) with_line("M", [&](const std::string &v) { sc.repetitions = parse_u64(v); });
    if (entries.contains("T")) {
        with_line("T", [&](const std::string &v) {
            auto t = parse_u64(v);
            if (t == 0 || t > kDefaultFineGrainCap) {
                throw Error("T must be between 1 and " + std::to_string(kDefaultFineGrainCap));
            }
            sc.levels = static_cast<std::uint32_t>(t);
        });
    }
    if (entries.contains("seed")) with_line("seed", [&](const std::string &v) { sc.seed = parse_u64(v); });
    if (entries.contains("mode")) with_line("mode", [&](const std::string &v) { sc.mode = parse_mode(v); });
    if (entries.contains("epsilon")) {
        with_line("epsilon", [&](const std::string &v) {
            sc.epsilon = parse_double(v);
            if (!(sc.epsilon > 0)) {
                throw Error("epsilon must be positive");
            }
        });
    }
    sc.csv_path = entries.contains("csv") ? entries.at("csv").value : sc.name + ".csv";
    sc.json_path = entries.contains("json") ? entries.at("json").value : sc.name + ".json";

    auto positive = [&](const std::string &key, const std::optional<std::uint64_t> &v) {
        if (v && *v == 0) {
            throw fail(entries.at(key).line, key + " must be positive");
        }
    };
    positive("N", sc.minds);
    positive("M", sc.repetitions);

    switch (sc.model) {
        case Model::MmiUnitary:
        case Model::MmiStochastic:
            require("weights");
            require("N");
            if (sc.mode == RunMode::MonteCarlo) require("M");
            break;
        case Model::EverettFrequency:
            require("weights");
            require("N");
            if (sc.mode == RunMode::MonteCarlo) require("M");
            if (*sc.minds > std::numeric_limits<std::uint32_t>::max()) {
                throw fail(entries.at("N").line, "N too large");
            }
            break;
        case Model::EnvarianceCheck:
            if (!entries.contains("weights") && !entries.contains("T")) {
                throw fail(last_line, "envariance-check needs T or weights");
            }
            break;
        case Model::WallaceChain:
            require("weights");
            break;
    }
    return sc;
}

ScenarioFile load_scenario(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(path.string() + ": cannot open scenario file");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.string());
}

}  // namespace bornlab
