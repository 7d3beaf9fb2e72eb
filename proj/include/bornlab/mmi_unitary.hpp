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

#ifndef BORNLAB_MMI_UNITARY_HPP
#define BORNLAB_MMI_UNITARY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "bornlab/branch_state.hpp"
#include "bornlab/envariance.hpp"
#include "bornlab/rational.hpp"
#include "bornlab/rng.hpp"
#include "bornlab/system_spec.hpp"
#include "bornlab/tally.hpp"

namespace bornlab {

/// For T = 2, qubit symbol 0 is a spade (routes to the first outcome) and 1
/// a heart.
inline constexpr QubitSymbol kSpade = 0;
inline constexpr QubitSymbol kHeart = 1;

/// Driving qubits drawn i.i.d. uniform from a T-symbol alphabet, one family
/// per mind and one column per repetition.
class QubitGas {
   public:
    QubitGas(std::uint32_t levels, std::uint64_t minds, std::uint64_t repetitions, std::uint64_t seed,
             std::vector<QubitSymbol> symbols);

    std::uint32_t levels() const { return levels_; }
    std::uint64_t minds() const { return minds_; }
    std::uint64_t repetitions() const { return repetitions_; }
    std::uint64_t seed() const { return seed_; }

    QubitSymbol at(std::uint64_t mind, std::uint64_t repetition) const {
        return symbols_[repetition * minds_ + mind];
    }
    /// The symbols met by every mind in one repetition.
    std::span<const QubitSymbol> column(std::uint64_t repetition) const {
        return std::span<const QubitSymbol>(symbols_).subspan(repetition * minds_, minds_);
    }
    /// Occurrences of each symbol across the whole gas.
    std::vector<std::uint64_t> symbol_counts() const;
    /// Occurrences of each symbol in one mind's family.
    std::vector<std::uint64_t> family_counts(std::uint64_t mind) const;

    bool operator==(const QubitGas &) const = default;

   private:
    std::uint32_t levels_;
    std::uint64_t minds_;
    std::uint64_t repetitions_;
    std::uint64_t seed_;
    std::vector<QubitSymbol> symbols_;
};

/// Column k comes from stream k of the seed, so any column can be
/// regenerated alone and the gas is independent of thread count.
QubitGas sample_gas(std::uint32_t levels, std::uint64_t minds, std::uint64_t repetitions, std::uint64_t seed);

/// Environment tag of fine branch s after the measurement ("E0", "E1", ...).
std::string branch_env_tag(std::uint32_t s);

/// The observer before the interaction: environment "E_ready", every mind
/// slot Ready, qubits as given.
BranchState ready_observer(std::span<const QubitSymbol> qubits);

/// Symmetric two-outcome measurement driven by one qubit: the mind becomes
/// Aware in the branch the qubit selects and Empty in the other.
BranchState evolve_single_mind(const SystemSpec &spec, QubitSymbol qubit);

/// T equal branches; the mind is Aware(beta) in branch beta only.
BranchState evolve_t_level(std::uint32_t levels, QubitSymbol beta);

/// T equal branches; in branch s, mind i is Aware(s) iff qubits[i] == s.
BranchState evolve_many_minds(std::uint32_t levels, std::span<const QubitSymbol> qubits);

/// Aware minds per branch, indexed by the branch's system symbol. Throws if
/// some mind is not Aware in exactly one branch.
MindTally aware_tally(const BranchState &evolved, std::uint32_t levels, std::uint64_t minds);

enum class RunMode { MonteCarlo, Exact };

struct ExperimentScenario {
    SystemSpec spec;
    std::uint64_t minds = 1;
    std::uint64_t repetitions = 1;
    /// Fine-grain level count; defaults to the weights' common denominator.
    std::optional<std::uint32_t> levels;
    std::uint64_t seed = 0;
    RunMode mode = RunMode::MonteCarlo;
};

struct ConvergenceReport {
    FineGrainMap map;
    std::uint64_t minds = 0;
    std::uint64_t repetitions = 0;
    RunMode mode = RunMode::MonteCarlo;

    /// Monte Carlo: coarse tallies per repetition.
    std::vector<MindTally> tallies;
    std::optional<QubitGas> gas;
    /// Exact mode: distribution of the coarse tally over all T^N gas columns.
    std::map<MindTally, Rational> exact_distribution;

    std::vector<Rational> theoretical;
    std::vector<double> mean_fraction;
    /// std/mean of N_a across repetitions (exact mode: of the distribution).
    std::vector<double> observed_fluctuation;
    std::vector<double> predicted_fluctuation;
    /// Repetitions in which the coarse outcome had no aware mind.
    std::vector<std::uint64_t> hulks_per_outcome;
    /// Repetitions in which some positive-weight outcome had no aware mind.
    std::uint64_t hulk_events = 0;
    /// Exact mode: probability that outcome a receives no aware mind.
    std::vector<Rational> exact_hulk_probability;
};

/// Repeats the many-minds evolution M times against fresh gas columns and
/// groups fine-branch tallies by coarse outcome.
ConvergenceReport run_experiment(const ExperimentScenario &scenario);
ConvergenceReport run_experiment_serial(const ExperimentScenario &scenario);

/// Exact coarse tally distribution obtained by routing every one of the T^N
/// gas assignments through the unitary evolution.
std::map<MindTally, Rational> exact_tally_distribution(const FineGrainMap &map, std::uint32_t minds,
                                                       std::uint64_t cap = std::uint64_t{1} << 24);

struct MindProbability {
    Rational theoretical;
    double empirical = 0;
};

/// P(O_a) = |Delta_a|/T next to the empirical frequency of gas symbols in
/// Delta_a (Monte Carlo) or the exact value (exact mode).
std::vector<MindProbability> mind_probability_table(const ConvergenceReport &report);

/// Counts of (coarse outcome of mind i, coarse outcome of mind j) across
/// repetitions.
std::vector<std::vector<std::uint64_t>> joint_mind_table(const ConvergenceReport &report, std::uint64_t i,
                                                         std::uint64_t j);

}  // namespace bornlab

#endif
