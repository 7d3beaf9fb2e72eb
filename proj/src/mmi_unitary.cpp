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

#include "bornlab/mmi_unitary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bornlab/kernels.hpp"
#include "bornlab/parallel.hpp"

namespace bornlab {

QubitGas::QubitGas(std::uint32_t levels, std::uint64_t minds, std::uint64_t repetitions, std::uint64_t seed,
                   std::vector<QubitSymbol> symbols)
    : levels_(levels), minds_(minds), repetitions_(repetitions), seed_(seed), symbols_(std::move(symbols)) {
    if (symbols_.size() != minds_ * repetitions_) {
        throw Error("gas size does not match minds x repetitions");
    }
    for (auto s : symbols_) {
        if (s >= levels_) {
            throw Error("qubit symbol outside alphabet");
        }
    }
}

std::vector<std::uint64_t> QubitGas::symbol_counts() const {
    std::vector<std::uint64_t> counts(levels_, 0);
    for (auto s : symbols_) ++counts[s];
    return counts;
}

std::vector<std::uint64_t> QubitGas::family_counts(std::uint64_t mind) const {
    if (mind >= minds_) {
        throw Error("mind index out of range");
    }
    std::vector<std::uint64_t> counts(levels_, 0);
    for (std::uint64_t k = 0; k < repetitions_; ++k) ++counts[at(mind, k)];
    return counts;
}

namespace {

void check_gas_shape(std::uint32_t levels, std::uint64_t minds, std::uint64_t repetitions) {
    if (levels < 2) {
        throw Error("qubit alphabet needs at least two levels");
    }
    if (levels > std::numeric_limits<QubitSymbol>::max()) {
        throw Error("qubit alphabet too large");
    }
    if (minds == 0 || repetitions == 0) {
        throw Error("mind and repetition counts must be positive");
    }
}

QubitGas sample_gas_impl(std::uint32_t levels, std::uint64_t minds, std::uint64_t repetitions, std::uint64_t seed,
                         bool parallel) {
    check_gas_shape(levels, minds, repetitions);
    SeededRng rng(seed);
    auto symbols = parallel ? kernels::sample_gas_columns(levels, minds, repetitions, rng)
                            : kernels::sample_gas_columns_serial(levels, minds, repetitions, rng);
    return QubitGas(levels, minds, repetitions, seed, std::move(symbols));
}

std::uint32_t scenario_levels(const ExperimentScenario &sc) {
    if (sc.levels) return *sc.levels;
    if (!sc.spec.is_exact()) {
        throw Error("requires rational approximation");
    }
    BigInt lcd = sc.spec.common_denominator();
    if (lcd > kDefaultFineGrainCap) {
        throw Error("fine-graining denominator exceeds cap");
    }
    // A single certain outcome still needs a two-symbol gas.
    return std::max<std::uint32_t>(2, lcd.convert_to<std::uint32_t>());
}

MindTally coarse_tally(const FineGrainMap &map, const MindTally &fine) {
    MindTally out;
    out.counts.assign(map.coarse_count(), 0);
    for (std::uint32_t s = 0; s < map.levels(); ++s) out.counts[map.coarse_of(s)] += fine.counts[s];
    return out;
}

void summarize_monte_carlo(ConvergenceReport &r) {
    const std::size_t k = r.map.coarse_count();
    const double n = static_cast<double>(r.minds);
    const double m = static_cast<double>(r.repetitions);
    r.mean_fraction.assign(k, 0.0);
    r.observed_fluctuation.assign(k, 0.0);
    r.hulks_per_outcome.assign(k, 0);
    r.hulk_events = 0;
    for (std::size_t a = 0; a < k; ++a) {
        double sum = 0;
        for (const auto &t : r.tallies) sum += static_cast<double>(t.counts[a]);
        const double mean = sum / m;
        double ss = 0;
        for (const auto &t : r.tallies) {
            const double d = static_cast<double>(t.counts[a]) - mean;
            ss += d * d;
        }
        r.mean_fraction[a] = mean / n;
        const double sd = r.repetitions > 1 ? std::sqrt(ss / (m - 1.0)) : 0.0;
        r.observed_fluctuation[a] = mean > 0 ? sd / mean : 0.0;
    }
    for (const auto &t : r.tallies) {
        bool hulk = false;
        for (std::size_t a = 0; a < k; ++a) {
            if (t.counts[a] != 0) continue;
            ++r.hulks_per_outcome[a];
            hulk = hulk || r.theoretical[a] > 0;
        }
        r.hulk_events += hulk;
    }
}

void summarize_exact(ConvergenceReport &r) {
    const std::size_t k = r.map.coarse_count();
    const double n = static_cast<double>(r.minds);
    r.mean_fraction.assign(k, 0.0);
    r.observed_fluctuation.assign(k, 0.0);
    r.hulks_per_outcome.assign(k, 0);
    r.exact_hulk_probability.assign(k, Rational(0));
    for (std::size_t a = 0; a < k; ++a) {
        Rational mean = 0;
        Rational second = 0;
        for (const auto &[t, p] : r.exact_distribution) {
            mean += p * t.counts[a];
            second += p * t.counts[a] * t.counts[a];
            if (t.counts[a] == 0) r.exact_hulk_probability[a] += p;
        }
        const double mu = to_double(mean);
        const double var = to_double(second - mean * mean);
        r.mean_fraction[a] = mu / n;
        r.observed_fluctuation[a] = mu > 0 ? std::sqrt(var) / mu : 0.0;
    }
}

ConvergenceReport run_impl(const ExperimentScenario &sc, bool parallel) {
    if (sc.minds == 0 || sc.repetitions == 0) {
        throw Error("mind and repetition counts must be positive");
    }
    const std::uint32_t levels = scenario_levels(sc);
    ConvergenceReport r;
    r.map = fine_grain(sc.spec, levels).map;
    r.minds = sc.minds;
    r.repetitions = sc.repetitions;
    r.mode = sc.mode;
    for (std::size_t a = 0; a < r.map.coarse_count(); ++a) {
        r.theoretical.push_back(r.map.coarse_weight(a));
        const double w = to_double(r.theoretical.back());
        r.predicted_fluctuation.push_back(w > 0 ? std::sqrt((1.0 - w) / w) / std::sqrt(static_cast<double>(sc.minds))
                                                : 0.0);
    }
    if (sc.mode == RunMode::Exact) {
        if (sc.minds > std::numeric_limits<std::uint32_t>::max()) {
            throw Error("exact mode enumeration cap exceeded");
        }
        r.exact_distribution = exact_tally_distribution(r.map, static_cast<std::uint32_t>(sc.minds));
        summarize_exact(r);
        return r;
    }
    QubitGas gas = sample_gas_impl(levels, sc.minds, sc.repetitions, sc.seed, parallel);
    r.tallies.resize(sc.repetitions);
    const auto reps = static_cast<std::int64_t>(sc.repetitions);
    auto one = [&](std::int64_t k) {
        BranchState evolved = evolve_many_minds(levels, gas.column(static_cast<std::uint64_t>(k)));
        r.tallies[static_cast<std::size_t>(k)] = coarse_tally(r.map, aware_tally(evolved, levels, sc.minds));
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
        for (std::int64_t k = 0; k < reps; ++k) one(k);
    } else {
        for (std::int64_t k = 0; k < reps; ++k) one(k);
    }
    r.gas = std::move(gas);
    summarize_monte_carlo(r);
    return r;
}

}  // namespace

QubitGas sample_gas(std::uint32_t levels, std::uint64_t minds, std::uint64_t repetitions, std::uint64_t seed) {
    return sample_gas_impl(levels, minds, repetitions, seed, true);
}

std::string branch_env_tag(std::uint32_t s) {
    return "E" + std::to_string(s);
}

BranchState ready_observer(std::span<const QubitSymbol> qubits) {
    BranchLabel label;
    label.env = "E_ready";
    label.minds.assign(qubits.size(), MindSlot::ready());
    label.qubits.assign(qubits.begin(), qubits.end());
    return unit_state(LabelSchema{Field::Env, Field::Minds, Field::Qubits}, std::move(label));
}

BranchState evolve_single_mind(const SystemSpec &spec, QubitSymbol qubit) {
    if (spec.size() != 2 || spec.weight(0) != 0.5 || spec.weight(1) != 0.5) {
        throw Error("single-mind evolution needs a symmetric two-outcome system");
    }
    if (qubit > kHeart) {
        throw Error("qubit symbol outside alphabet");
    }
    return evolve_t_level(2, qubit);
}

BranchState evolve_t_level(std::uint32_t levels, QubitSymbol beta) {
    const QubitSymbol one[] = {beta};
    return evolve_many_minds(levels, one);
}

BranchState evolve_many_minds(std::uint32_t levels, std::span<const QubitSymbol> qubits) {
    if (levels == 0) {
        throw Error("qubit alphabet is empty");
    }
    if (qubits.empty()) {
        throw Error("mind count must be positive");
    }
    for (auto q : qubits) {
        if (q >= levels) {
            throw Error("qubit symbol outside alphabet");
        }
    }
    std::vector<Branch> out;
    out.reserve(levels);
    const double amp = std::sqrt(1.0 / levels);
    for (std::uint32_t s = 0; s < levels; ++s) {
        Branch b;
        b.label.system = static_cast<SystemSymbol>(s);
        b.label.env = branch_env_tag(s);
        b.label.minds.reserve(qubits.size());
        for (auto q : qubits) {
            b.label.minds.push_back(q == s ? MindSlot::aware(static_cast<SystemSymbol>(s)) : MindSlot::empty());
        }
        b.label.qubits.assign(qubits.begin(), qubits.end());
        b.amplitude = amp;
        b.exact_weight = Rational(1, levels);
        out.push_back(std::move(b));
    }
    return BranchState(LabelSchema{Field::System, Field::Env, Field::Minds, Field::Qubits}, std::move(out));
}

MindTally aware_tally(const BranchState &evolved, std::uint32_t levels, std::uint64_t minds) {
    MindTally t;
    t.counts.assign(levels, 0);
    std::vector<std::uint8_t> seen(minds, 0);
    for (const auto &b : evolved.branches()) {
        if (b.label.minds.size() != minds) {
            throw Error("mind slot count does not match");
        }
        const SystemSymbol s = b.label.system;
        if (s < 0 || static_cast<std::uint32_t>(s) >= levels) {
            throw Error("branch outside the fine alphabet");
        }
        for (std::uint64_t i = 0; i < minds; ++i) {
            const MindSlot &slot = b.label.minds[i];
            if (!slot.is_aware()) continue;
            if (slot.outcome != s || seen[i]++) {
                throw Error("mind aware in more than one branch");
            }
            ++t.counts[static_cast<std::size_t>(s)];
        }
    }
    for (auto v : seen) {
        if (v != 1) {
            throw Error("mind aware in no branch");
        }
    }
    return t;
}

ConvergenceReport run_experiment(const ExperimentScenario &scenario) {
    return run_impl(scenario, true);
}

ConvergenceReport run_experiment_serial(const ExperimentScenario &scenario) {
    return run_impl(scenario, false);
}

std::map<MindTally, Rational> exact_tally_distribution(const FineGrainMap &map, std::uint32_t minds,
                                                       std::uint64_t cap) {
    if (minds == 0) {
        throw Error("mind count must be positive");
    }
    const std::uint32_t levels = map.levels();
    BigInt total = boost::multiprecision::pow(BigInt(levels), minds);
    if (total > cap) {
        throw Error("exact mode enumeration cap exceeded");
    }
    std::map<MindTally, std::uint64_t> counts;
    std::vector<QubitSymbol> column(minds, 0);
    while (true) {
        BranchState evolved = evolve_many_minds(levels, column);
        ++counts[coarse_tally(map, aware_tally(evolved, levels, minds))];
        std::size_t i = minds;
        while (i-- > 0) {
            if (++column[i] < levels) break;
            column[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }
    std::map<MindTally, Rational> out;
    for (const auto &[t, c] : counts) out.emplace(t, Rational(BigInt(c), total));
    return out;
}

std::vector<MindProbability> mind_probability_table(const ConvergenceReport &report) {
    std::vector<MindProbability> out;
    std::vector<std::uint64_t> symbols;
    double total = 0;
    if (report.gas) {
        symbols = report.gas->symbol_counts();
        total = static_cast<double>(report.gas->minds() * report.gas->repetitions());
    }
    for (std::size_t a = 0; a < report.map.coarse_count(); ++a) {
        MindProbability p;
        p.theoretical = report.map.coarse_weight(a);
        if (report.gas) {
            std::uint64_t hits = 0;
            for (auto s : report.map.group(a)) hits += symbols[s];
            p.empirical = static_cast<double>(hits) / total;
        } else {
            p.empirical = to_double(p.theoretical);
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<std::vector<std::uint64_t>> joint_mind_table(const ConvergenceReport &report, std::uint64_t i,
                                                         std::uint64_t j) {
    if (!report.gas) {
        throw Error("joint table needs a sampled gas");
    }
    const QubitGas &gas = *report.gas;
    if (i >= gas.minds() || j >= gas.minds()) {
        throw Error("mind index out of range");
    }
    const std::size_t k = report.map.coarse_count();
    std::vector<std::vector<std::uint64_t>> table(k, std::vector<std::uint64_t>(k, 0));
    for (std::uint64_t r = 0; r < gas.repetitions(); ++r) {
        ++table[report.map.coarse_of(gas.at(i, r))][report.map.coarse_of(gas.at(j, r))];
    }
    return table;
}

}  // namespace bornlab
