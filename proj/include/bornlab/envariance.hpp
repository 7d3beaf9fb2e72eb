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

#ifndef BORNLAB_ENVARIANCE_HPP
#define BORNLAB_ENVARIANCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bornlab/branch_state.hpp"
#include "bornlab/rational.hpp"
#include "bornlab/system_spec.hpp"

namespace bornlab {

/// Partition of the fine alphabet {0..T-1} into one group per coarse outcome.
/// Groups built from sizes are contiguous and in coarse-outcome order.
class FineGrainMap {
   public:
    static FineGrainMap from_sizes(const std::vector<std::uint32_t> &sizes);
    /// Validates disjointness and coverage of {0..T-1}.
    static FineGrainMap from_groups(std::vector<std::vector<std::uint32_t>> groups);

    std::uint32_t levels() const { return levels_; }
    std::size_t coarse_count() const { return groups_.size(); }
    const std::vector<std::uint32_t> &group(std::size_t a) const { return groups_.at(a); }
    std::uint32_t size_of(std::size_t a) const { return static_cast<std::uint32_t>(groups_.at(a).size()); }
    /// Coarse outcome owning fine symbol s.
    std::uint32_t coarse_of(std::uint32_t s) const { return coarse_of_.at(s); }
    const std::vector<std::uint32_t> &coarse_index() const { return coarse_of_; }
    /// T_a / T
    Rational coarse_weight(std::size_t a) const { return Rational(size_of(a), levels_); }

   private:
    std::uint32_t levels_ = 0;
    std::vector<std::vector<std::uint32_t>> groups_;
    std::vector<std::uint32_t> coarse_of_;
};

/// Environment tag attached to fine outcome s in symmetric states ("eps1", ...).
std::string fine_env_tag(std::uint32_t s);
/// Environment tag attached to coarse outcome a before relabeling ("e1", ...).
std::string coarse_env_tag(std::uint32_t a);

/// sum_{s<T} sqrt(1/T) |s>_S |eps_s>_E. Requires T >= 2.
BranchState schmidt_state(std::uint32_t levels);

/// The environment tag perfectly correlated with system symbol s, if the
/// state has exactly one branch with that symbol.
std::optional<std::string> correlated_tag(const BranchState &s, SystemSymbol symbol);

struct EnvarianceReport {
    BranchState swapped;
    BranchState counterswapped;
    /// |<U_E U_S psi | psi>|^2
    double fidelity = 0;
    /// Both symbols carry distinct environment records.
    bool correlated = false;
    bool envariant = false;
};

/// U_S swaps a and b. U_E swaps their records and carries the relative phase
/// of the two branches, so any pair of equal-magnitude branches is restored.
EnvarianceReport verify_envariance(const BranchState &s, SystemSymbol a, SystemSymbol b);

/// The swap/counterswap chain for a pair: the measure of (a, eps_a) in psi,
/// of (b, eps_a) after the system swap, of (b, eps_b) after the counterswap,
/// and of (b, eps_b) in psi. The chain closes when the first and last agree.
struct SymmetryCheck {
    double original = 0;
    double after_swap = 0;
    double after_counterswap = 0;
    double partner = 0;
    bool swap_indifference = false;
    bool counterswap_indifference = false;
    bool correlated = false;
    bool holds = false;
};

SymmetryCheck strong_symmetry_check(const BranchState &s, SystemSymbol a, SystemSymbol b);

/// Probabilities assigned from swap symmetry alone: 1/T for each branch, in
/// canonical branch order. Throws "not envariant" unless every pair passes
/// verify_envariance with distinct environment records.
std::vector<Rational> equiprobability_from_symmetry(const BranchState &s);

struct FineGraining {
    FineGrainMap map;
    /// sum_s sqrt(1/T) |s> |e_{a(s)}>: fine system, coarse environment record.
    BranchState coarse_tagged;
    /// After relabeling the environment to one record per fine branch.
    BranchState state;
};

inline constexpr std::uint32_t kDefaultFineGrainCap = 10000;

/// Splits each coarse weight T_a/T into T_a equal branches. T defaults to
/// the least common denominator; an explicit T must be a multiple of it.
FineGraining fine_grain(const SystemSpec &spec, std::optional<std::uint32_t> levels = std::nullopt,
                        std::uint32_t cap = kDefaultFineGrainCap);

/// Rational weights with a common denominator T <= cap, each within
/// `tolerance` of the input and summing to exactly one.
std::vector<Rational> rational_approximation(const std::vector<double> &weights, double tolerance = 1e-6,
                                             std::uint32_t cap = kDefaultFineGrainCap);

/// Group sums of fine probabilities.
std::vector<Rational> coarse_probability(const FineGrainMap &map, const std::vector<Rational> &fine);

struct WallaceReport {
    BranchState original;
    BranchState counterswapped;
    BranchState erased;
    BranchState erased_counterswapped;
    std::string record_a;
    std::string record_b;
    /// erase(psi) and erase(U_E psi) agree branch for branch.
    bool erased_identical = false;
    /// Counterswapping twice restores psi.
    bool involution = false;
    double measure_a = 0;
    double measure_b = 0;
    std::optional<Rational> exact_measure_a;
    std::optional<Rational> exact_measure_b;
    /// P(a, Alex_a) = P(b, Alex_b) follows from branch indifference; set
    /// exactly when erased_identical.
    bool equal_probabilities = false;
};

WallaceReport wallace_chain(const BranchState &s, SystemSymbol a, SystemSymbol b);

/// sqrt(w_a) |a> |Alex_a> over the spec's outcomes.
BranchState observer_record_state(const SystemSpec &spec);

}  // namespace bornlab

#endif
