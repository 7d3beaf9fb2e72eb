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

#ifndef BORNLAB_KERNELS_HPP
#define BORNLAB_KERNELS_HPP

// Hot loops of the library. Every kernel comes in two flavors: the default
// OpenMP version used by the modules, and a `_serial` reference kept for
// tests and benchmarks. Exact kernels agree bit-for-bit; floating kernels
// agree to rounding.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "bornlab/rational.hpp"
#include "bornlab/rng.hpp"
#include "bornlab/tally.hpp"

namespace bornlab::kernels {

/// buckets[a][k] = sum over length-N histories h with N_a(h) = k of
/// prod_b numerators[b]^{N_b(h)}. Dividing by D^N (D = sum of numerators)
/// turns the buckets into exact Everett measures.
using ExactBuckets = std::vector<std::vector<BigInt>>;
/// Same, with floating weights; the entries are measures directly.
using FloatBuckets = std::vector<std::vector<double>>;

ExactBuckets history_buckets(std::span<const BigInt> numerators, std::uint32_t n);
ExactBuckets history_buckets_serial(std::span<const BigInt> numerators, std::uint32_t n);

FloatBuckets history_buckets(std::span<const double> weights, std::uint32_t n);
FloatBuckets history_buckets_serial(std::span<const double> weights, std::uint32_t n);

/// Categorical sampler description shared by the Monte Carlo kernels. When
/// `exact` is set, draws are integers below `denominator` compared against
/// integer cumulative numerators; otherwise doubles against `cumulative`.
struct Categorical {
    bool exact = false;
    std::vector<std::uint64_t> cumulative_numerators;
    std::uint64_t denominator = 1;
    std::vector<double> cumulative;

    std::size_t size() const { return exact ? cumulative_numerators.size() : cumulative.size(); }
    std::size_t draw(RandomStream &rng) const {
        return exact ? rng.categorical(cumulative_numerators, denominator) : rng.categorical(cumulative);
    }
};

/// Trial t draws `minds` independent categorical values from stream t.
std::vector<MindTally> sample_tallies(const Categorical &dist, std::uint64_t minds, std::uint64_t trials,
                                      const SeededRng &rng);
std::vector<MindTally> sample_tallies_serial(const Categorical &dist, std::uint64_t minds, std::uint64_t trials,
                                             const SeededRng &rng);

/// Column k of the gas (one symbol per mind) is drawn from stream k.
/// Result is column-major: symbols[k * minds + i].
std::vector<std::uint16_t> sample_gas_columns(std::uint32_t levels, std::uint64_t minds, std::uint64_t columns,
                                              const SeededRng &rng);
std::vector<std::uint16_t> sample_gas_columns_serial(std::uint32_t levels, std::uint64_t minds,
                                                     std::uint64_t columns, const SeededRng &rng);

/// Counts, over all levels^minds qubit assignments, how many produce each
/// coarse tally when fine symbol s is routed to coarse outcome group_of[s].
std::map<MindTally, std::uint64_t> gas_tally_counts(std::span<const std::uint32_t> group_of, std::uint32_t groups,
                                                    std::uint32_t minds);
std::map<MindTally, std::uint64_t> gas_tally_counts_serial(std::span<const std::uint32_t> group_of,
                                                           std::uint32_t groups, std::uint32_t minds);

}  // namespace bornlab::kernels

#endif
