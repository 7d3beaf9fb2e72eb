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

#include "bornlab/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>

#include "bornlab/envariance.hpp"
#include "bornlab/frequency.hpp"
#include "bornlab/mmi_stochastic.hpp"
#include "bornlab/mmi_unitary.hpp"

namespace bornlab {

namespace {

constexpr double kIdentityTolerance = 1e-12;
/// Below this many expected hulk events per run, any observed hulk fails.
constexpr double kHulkExpectationFloor = 1e-3;

std::string timestamp() {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<double> theoretical_doubles(const std::vector<Rational> &w) {
    std::vector<double> out;
    for (const auto &x : w) out.push_back(to_double(x));
    return out;
}

std::vector<std::string> rational_strings(const std::vector<Rational> &w) {
    std::vector<std::string> out;
    for (const auto &x : w) out.push_back(to_string(x));
    return out;
}

std::string tally_csv(const std::vector<MindTally> &tallies, const std::vector<std::string> &names,
                      std::uint64_t minds) {
    std::string out = std::string(kCsvHeader) + "\r\n";
    for (std::size_t k = 0; k < tallies.size(); ++k) {
        for (std::size_t a = 0; a < names.size(); ++a) {
            const auto c = tallies[k].counts[a];
            out += std::to_string(k + 1) + "," + csv_field(names[a]) + "," + std::to_string(c) + "," +
                   format_double(static_cast<double>(c) / static_cast<double>(minds)) + "\r\n";
        }
    }
    return out;
}

struct TallyStats {
    std::vector<double> mean_fraction;
    std::vector<double> observed_fluctuation;
    std::vector<std::uint64_t> hulks_per_outcome;
    std::uint64_t hulk_events = 0;
};

TallyStats tally_stats(const std::vector<MindTally> &tallies, const std::vector<double> &weights,
                       std::uint64_t minds) {
    TallyStats s;
    const std::size_t k = weights.size();
    const double m = static_cast<double>(tallies.size());
    s.hulks_per_outcome.assign(k, 0);
    for (std::size_t a = 0; a < k; ++a) {
        double sum = 0, ss = 0;
        for (const auto &t : tallies) sum += static_cast<double>(t.counts[a]);
        const double mean = sum / m;
        for (const auto &t : tallies) ss += std::pow(static_cast<double>(t.counts[a]) - mean, 2);
        const double sd = tallies.size() > 1 ? std::sqrt(ss / (m - 1)) : 0.0;
        s.mean_fraction.push_back(mean / static_cast<double>(minds));
        s.observed_fluctuation.push_back(mean > 0 ? sd / mean : 0.0);
    }
    for (const auto &t : tallies) {
        bool hulk = false;
        for (std::size_t a = 0; a < k; ++a) {
            if (t.counts[a] != 0) continue;
            ++s.hulks_per_outcome[a];
            hulk = hulk || weights[a] > 0;
        }
        s.hulk_events += hulk;
    }
    return s;
}

std::vector<double> predicted_fluctuation(const std::vector<double> &weights, std::uint64_t minds) {
    std::vector<double> out;
    for (double w : weights) {
        out.push_back(w > 0 ? std::sqrt((1 - w) / w) / std::sqrt(static_cast<double>(minds)) : 0.0);
    }
    return out;
}

/// Fraction bands plus the hulk rule shared by all Monte Carlo verdicts.
bool monte_carlo_verdict(OrderedJson &j, const std::vector<double> &weights, const std::vector<double> &mean,
                         std::uint64_t hulk_events, std::uint64_t minds, std::uint64_t repetitions) {
    std::vector<double> bands;
    std::vector<bool> within;
    bool pass = true;
    double hulk_probability = 0;
    for (std::size_t a = 0; a < weights.size(); ++a) {
        bands.push_back(band_halfwidth(weights[a], minds));
        const bool ok = std::abs(mean[a] - weights[a]) <= bands.back() + kIdentityTolerance;
        within.push_back(ok);
        pass = pass && ok;
        if (weights[a] > 0) hulk_probability += std::pow(1.0 - weights[a], static_cast<double>(minds));
    }
    const double expected_hulks = std::min(1.0, hulk_probability) * static_cast<double>(repetitions);
    const bool hulk_ok = expected_hulks >= kHulkExpectationFloor || hulk_events == 0;
    j["band_halfwidth"] = bands;
    j["within_band"] = within;
    j["hulk_count"] = hulk_events;
    j["hulk_expected"] = expected_hulks;
    return pass && hulk_ok;
}

OrderedJson header(const ScenarioFile &sc) {
    OrderedJson j;
    j["name"] = sc.name;
    j["model"] = model_name(sc.model);
    j["mode"] = mode_name(sc.mode);
    j["seed"] = sc.seed;
    return j;
}

void spec_fields(OrderedJson &j, const SystemSpec &spec) {
    j["outcomes"] = spec.outcomes();
    j["theoretical"] = spec.weights();
    if (spec.is_exact()) j["theoretical_exact"] = rational_strings(spec.exact_weights());
}

RunOutput run_unitary(const ScenarioFile &sc) {
    const SystemSpec &spec = *sc.spec;
    ExperimentScenario es{spec, *sc.minds, sc.repetitions.value_or(1), sc.levels, sc.seed, sc.mode};
    ConvergenceReport r = run_experiment(es);
    RunOutput out;
    OrderedJson j = header(sc);
    j["minds"] = r.minds;
    j["repetitions"] = sc.mode == RunMode::Exact ? 0 : r.repetitions;
    j["levels"] = r.map.levels();
    std::vector<std::uint32_t> sizes;
    for (std::size_t a = 0; a < r.map.coarse_count(); ++a) sizes.push_back(r.map.size_of(a));
    j["fine_grain_sizes"] = sizes;
    j["outcomes"] = spec.outcomes();
    const auto theory = theoretical_doubles(r.theoretical);
    j["theoretical"] = theory;
    j["theoretical_exact"] = rational_strings(r.theoretical);
    j["empirical"] = r.mean_fraction;
    j["fluctuation_predicted"] = r.predicted_fluctuation;
    j["fluctuation_observed"] = r.observed_fluctuation;
    if (sc.mode == RunMode::Exact) {
        // The unitary model's exact tally law must be the multinomial law.
        SystemSpec coarse = SystemSpec::exact(spec.outcomes(), r.theoretical);
        bool matches = true;
        Rational total = 0;
        OrderedJson dist = OrderedJson::array();
        for (const auto &[t, p] : r.exact_distribution) {
            matches = matches && p == tally_pmf(coarse, r.minds, t);
            total += p;
            OrderedJson e;
            e["tally"] = t.counts;
            e["probability"] = to_string(p);
            dist.push_back(std::move(e));
        }
        matches = matches && total == 1;
        j["exact_distribution"] = std::move(dist);
        j["hulk_probability_exact"] = rational_strings(r.exact_hulk_probability);
        j["matches_multinomial"] = matches;
        out.passed = matches;
        out.csv = std::string(kCsvHeader) + "\r\n";
    } else {
        std::vector<double> gas_freq;
        for (const auto &p : mind_probability_table(r)) gas_freq.push_back(p.empirical);
        j["mind_probability_empirical"] = gas_freq;
        j["hulks_per_outcome"] = r.hulks_per_outcome;
        out.passed = monte_carlo_verdict(j, theory, r.mean_fraction, r.hulk_events, r.minds, r.repetitions);
        out.csv = tally_csv(r.tallies, spec.outcomes(), r.minds);
    }
    j["verdict"] = out.passed ? "pass" : "fail";
    j["generated_at"] = timestamp();
    out.summary = std::move(j);
    return out;
}

RunOutput run_stochastic(const ScenarioFile &sc) {
    const SystemSpec &spec = *sc.spec;
    RunOutput out;
    OrderedJson j = header(sc);
    j["minds"] = *sc.minds;
    j["repetitions"] = sc.mode == RunMode::Exact ? 0 : *sc.repetitions;
    spec_fields(j, spec);
    const auto predicted = predicted_fluctuation(spec.weights(), *sc.minds);
    if (sc.mode == RunMode::Exact) {
        j["fluctuation_predicted"] = predicted;
        if (!spec.is_exact()) {
            throw Error("exact mode needs rational weights");
        }
        auto tallies = all_tallies(spec.size(), *sc.minds);
        if (tallies.size() > 100000) {
            throw Error("exact mode enumeration cap exceeded");
        }
        Rational total = 0;
        OrderedJson dist = OrderedJson::array();
        for (const auto &t : tallies) {
            Rational p = tally_pmf(spec, *sc.minds, t);
            total += p;
            OrderedJson e;
            e["tally"] = t.counts;
            e["probability"] = to_string(p);
            dist.push_back(std::move(e));
        }
        std::vector<std::string> hulks;
        for (OutcomeIndex a = 0; a < spec.size(); ++a) hulks.push_back(to_string(hulk_probability(spec, *sc.minds, a)));
        j["exact_distribution"] = std::move(dist);
        j["hulk_probability_exact"] = hulks;
        j["mode_tally"] = mode_tally(spec, *sc.minds).counts;
        out.passed = total == 1;
        out.csv = std::string(kCsvHeader) + "\r\n";
    } else {
        auto tallies = sample_minds_trials(spec, *sc.minds, *sc.repetitions, SeededRng(sc.seed));
        TallyStats s = tally_stats(tallies, spec.weights(), *sc.minds);
        j["empirical"] = s.mean_fraction;
        j["fluctuation_predicted"] = predicted;
        j["fluctuation_observed"] = s.observed_fluctuation;
        j["hulks_per_outcome"] = s.hulks_per_outcome;
        out.passed = monte_carlo_verdict(j, spec.weights(), s.mean_fraction, s.hulk_events, *sc.minds,
                                         *sc.repetitions);
        out.csv = tally_csv(tallies, spec.outcomes(), *sc.minds);
    }
    j["verdict"] = out.passed ? "pass" : "fail";
    j["generated_at"] = timestamp();
    out.summary = std::move(j);
    return out;
}

RunOutput run_frequency(const ScenarioFile &sc) {
    const SystemSpec &spec = *sc.spec;
    const auto n = static_cast<std::uint32_t>(*sc.minds);
    RunOutput out;
    OrderedJson j = header(sc);
    j["repetitions_per_history"] = n;
    j["epsilon"] = sc.epsilon;
    if (sc.mode == RunMode::Exact) {
        CheckOutput c = check_frequency(spec, n, sc.epsilon);
        for (auto &[k, v] : c.report.items()) j[k] = v;
        out.passed = c.passed;
        out.csv = std::string(kCsvHeader) + "\r\n";
    } else {
        spec_fields(j, spec);
        j["histories"] = *sc.repetitions;
        auto tallies = sample_minds_trials(spec, n, *sc.repetitions, SeededRng(sc.seed));
        TallyStats s = tally_stats(tallies, spec.weights(), n);
        std::vector<double> maverick_predicted, maverick_observed;
        for (OutcomeIndex a = 0; a < spec.size(); ++a) {
            maverick_predicted.push_back(maverick_measure(spec, n, a, sc.epsilon).value);
            std::uint64_t hits = 0;
            for (const auto &t : tallies) {
                hits += std::abs(static_cast<double>(t.counts[a]) / n - spec.weight(a)) > sc.epsilon;
            }
            maverick_observed.push_back(static_cast<double>(hits) / static_cast<double>(tallies.size()));
        }
        j["empirical"] = s.mean_fraction;
        j["fluctuation_predicted"] = predicted_fluctuation(spec.weights(), n);
        j["fluctuation_observed"] = s.observed_fluctuation;
        j["maverick_predicted"] = maverick_predicted;
        j["maverick_observed"] = maverick_observed;
        out.passed = monte_carlo_verdict(j, spec.weights(), s.mean_fraction, 0, n, *sc.repetitions);
        out.csv = tally_csv(tallies, spec.outcomes(), n);
    }
    j["verdict"] = out.passed ? "pass" : "fail";
    j["generated_at"] = timestamp();
    out.summary = std::move(j);
    return out;
}

RunOutput run_check_model(const ScenarioFile &sc, const CheckOutput &c) {
    RunOutput out;
    OrderedJson j = header(sc);
    for (auto &[k, v] : c.report.items()) j[k] = v;
    out.passed = c.passed;
    j["verdict"] = out.passed ? "pass" : "fail";
    j["generated_at"] = timestamp();
    out.summary = std::move(j);
    out.csv = std::string(kCsvHeader) + "\r\n";
    return out;
}

OrderedJson state_json(const BranchState &s) {
    OrderedJson arr = OrderedJson::array();
    for (const auto &b : s.branches()) {
        OrderedJson e;
        e["system"] = b.label.system == kErased ? OrderedJson("erased") : OrderedJson(b.label.system);
        e["env"] = b.label.env;
        e["amplitude"] = {b.amplitude.real(), b.amplitude.imag()};
        arr.push_back(std::move(e));
    }
    return arr;
}

}  // namespace

double band_halfwidth(double weight, std::uint64_t minds) {
    return 3.0 * std::sqrt(weight * (1.0 - weight) / static_cast<double>(minds));
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

RunOutput run_scenario(const ScenarioFile &sc) {
    const bool sampled = sc.model == Model::MmiUnitary || sc.model == Model::MmiStochastic ||
                         sc.model == Model::EverettFrequency;
    if (sampled && sc.mode == RunMode::MonteCarlo && !sc.repetitions) {
        throw Error("M is required in monte-carlo mode");
    }
    switch (sc.model) {
        case Model::MmiUnitary:
            return run_unitary(sc);
        case Model::MmiStochastic:
            return run_stochastic(sc);
        case Model::EverettFrequency:
            return run_frequency(sc);
        case Model::EnvarianceCheck:
            return run_check_model(sc, check_envariance(sc.levels, sc.spec));
        case Model::WallaceChain:
            return run_check_model(sc, check_wallace(*sc.spec));
    }
    throw Error("unknown model");
}

CheckOutput check_envariance(std::optional<std::uint32_t> levels, const std::optional<SystemSpec> &spec) {
    CheckOutput out;
    OrderedJson &j = out.report;
    BranchState state;
    std::optional<FineGraining> grained;
    if (spec) {
        grained = fine_grain(*spec, levels);
        state = grained->state;
        j["levels"] = grained->map.levels();
    } else {
        if (!levels) {
            throw Error("envariance check needs T or weights");
        }
        state = schmidt_state(*levels);
        j["levels"] = *levels;
    }
    bool pass = true;
    OrderedJson pairs = OrderedJson::array();
    const auto branches = state.branches();
    for (std::size_t x = 0; x < branches.size(); ++x) {
        for (std::size_t y = x + 1; y < branches.size(); ++y) {
            const SystemSymbol a = branches[x].label.system;
            const SystemSymbol b = branches[y].label.system;
            auto env = verify_envariance(state, a, b);
            auto sym = strong_symmetry_check(state, a, b);
            OrderedJson p;
            p["pair"] = {a, b};
            p["fidelity"] = env.fidelity;
            p["envariant"] = env.envariant;
            p["strong_symmetry"] = sym.holds;
            pass = pass && env.envariant && sym.holds;
            pairs.push_back(std::move(p));
        }
    }
    j["pairs"] = std::move(pairs);
    std::vector<Rational> fine;
    try {
        fine = equiprobability_from_symmetry(state);
        j["equiprobability"] = rational_strings(fine);
    } catch (const Error &) {
        pass = false;
        j["equiprobability"] = nullptr;
    }
    if (grained && !fine.empty()) {
        auto coarse = coarse_probability(grained->map, fine);
        j["outcomes"] = spec->outcomes();
        j["coarse_probability"] = rational_strings(coarse);
        j["theoretical_exact"] = rational_strings(spec->exact_weights());
        pass = pass && coarse == spec->exact_weights();
    }
    out.passed = pass;
    return out;
}

CheckOutput check_frequency(const SystemSpec &spec, std::uint32_t n, double epsilon) {
    CheckOutput out;
    OrderedJson &j = out.report;
    j["outcomes"] = spec.outcomes();
    j["theoretical"] = spec.weights();
    if (spec.is_exact()) j["theoretical_exact"] = rational_strings(spec.exact_weights());
    j["repetitions_per_history"] = n;
    bool pass = true;
    std::vector<double> expectation, maverick, typicality;
    std::vector<std::string> expectation_exact;
    bool closed_form = false;
    for (OutcomeIndex a = 0; a < spec.size(); ++a) {
        auto e = frequency_expectation(spec, n, a, {.cap = std::uint64_t{1} << 20, .allow_closed_form = true});
        closed_form = closed_form || e.closed_form;
        expectation.push_back(e.value);
        if (e.exact) {
            expectation_exact.push_back(to_string(*e.exact));
            pass = pass && *e.exact == spec.exact_weight(a);
        } else {
            pass = pass && std::abs(e.value - spec.weight(a)) < kIdentityTolerance;
        }
        maverick.push_back(maverick_measure(spec, n, a, epsilon).value);
        typicality.push_back(spec.weight(a) > 0 ? typicality_error(spec, n, a) : 0.0);
    }
    j["expectation"] = expectation;
    if (!expectation_exact.empty()) j["expectation_exact"] = expectation_exact;
    j["closed_form"] = closed_form;
    j["epsilon"] = epsilon;
    j["maverick_measure"] = maverick;
    j["typicality_error"] = typicality;
    out.passed = pass;
    return out;
}

CheckOutput check_wallace(const SystemSpec &spec) {
    CheckOutput out;
    OrderedJson &j = out.report;
    BranchState state = observer_record_state(spec);
    j["outcomes"] = spec.outcomes();
    j["state"] = state_json(state);
    bool pass = true;
    OrderedJson pairs = OrderedJson::array();
    const auto branches = state.branches();
    for (std::size_t x = 0; x < branches.size(); ++x) {
        for (std::size_t y = x + 1; y < branches.size(); ++y) {
            const SystemSymbol a = branches[x].label.system;
            const SystemSymbol b = branches[y].label.system;
            WallaceReport w = wallace_chain(state, a, b);
            OrderedJson p;
            p["pair"] = {spec.name(static_cast<OutcomeIndex>(a)), spec.name(static_cast<OutcomeIndex>(b))};
            p["erased_identical"] = w.erased_identical;
            p["involution"] = w.involution;
            p["measure_a"] = w.measure_a;
            p["measure_b"] = w.measure_b;
            if (w.exact_measure_a && w.exact_measure_b) {
                p["measure_a_exact"] = to_string(*w.exact_measure_a);
                p["measure_b_exact"] = to_string(*w.exact_measure_b);
            }
            p["equal_probabilities"] = w.equal_probabilities;
            if (!w.erased_identical) p["note"] = "indifference premise not met at equal-weight level";
            pass = pass && w.erased_identical && w.involution;
            pairs.push_back(std::move(p));
        }
    }
    j["pairs"] = std::move(pairs);
    out.passed = pass;
    return out;
}

void write_files_atomically(const std::vector<std::pair<std::filesystem::path, std::string>> &files) {
    std::vector<std::filesystem::path> temps;
    try {
        for (const auto &[path, content] : files) {
            if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
            auto tmp = path;
            tmp += ".tmp";
            temps.push_back(tmp);
            std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
            f << content;
            f.close();
            if (!f) {
                throw Error("cannot write " + path.string());
            }
        }
    } catch (const std::exception &e) {
        std::error_code ec;
        for (const auto &t : temps) std::filesystem::remove(t, ec);
        if (dynamic_cast<const Error *>(&e)) throw;
        throw Error(e.what());
    }
    // Nothing is renamed until every temp file is complete.
    for (std::size_t i = 0; i < files.size(); ++i) {
        std::filesystem::rename(temps[i], files[i].first);
    }
}

}  // namespace bornlab
