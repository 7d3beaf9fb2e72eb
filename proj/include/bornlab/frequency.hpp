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

#ifndef BORNLAB_FREQUENCY_HPP
#define BORNLAB_FREQUENCY_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "bornlab/branch_state.hpp"
#include "bornlab/rational.hpp"
#include "bornlab/system_spec.hpp"

namespace bornlab {

/// sum_a amplitude_a |a>, with exact branch weights when the spec is exact.
BranchState system_superposition(const SystemSpec &spec);

struct HistoryStats {
    std::vector<std::uint64_t> counts;
    std::uint64_t length = 0;
    /// ||Psi(h)||^2 = prod_a weight_a^{N_a(h)}
    double measure = 0;
    std::optional<Rational> exact_measure;

    Rational frequency(OutcomeIndex a) const { return Rational(counts.at(a), length); }
};

HistoryStats history_state(const SystemSpec &spec, const History &h);

/// Eigenvalue of the frequency operator Q_a on the history state |Psi(h)>,
/// exactly N_a(h)/N.
Rational frequency_eigenvalue(const History &h, OutcomeIndex a);

struct EnumerationLimits {
    /// Largest alphabet^N that is enumerated history by history.
    std::uint64_t cap = std::uint64_t{1} << 20;
    /// Beyond the cap, fall back to closed forms instead of failing.
    bool allow_closed_form = false;
};

struct FrequencyExpectation {
    double value = 0;
    std::optional<Rational> exact;
    /// True when the value came from the closed form rather than enumeration.
    bool closed_form = false;
};

/// <Psi_N|Q_a|Psi_N> for the N-fold product state, summed over every history.
FrequencyExpectation frequency_expectation(const SystemSpec &spec, std::uint32_t n, OutcomeIndex a,
                                           const EnumerationLimits &limits = {});

struct MaverickMeasure {
    double value = 0;
    std::optional<Rational> exact;
    bool enumerated = false;
};

/// Total measure of the histories whose relative frequency of `a` deviates
/// from weight_a by more than epsilon. Enumerates histories under the cap and
/// otherwise sums the binomial tail of N_a.
MaverickMeasure maverick_measure(const SystemSpec &spec, std::uint32_t n, OutcomeIndex a, double epsilon,
                                 const EnumerationLimits &limits = {.cap = std::uint64_t{1} << 20,
                                                                    .allow_closed_form = true});

/// Predicted relative spread of N_a: sqrt((1 - w_a) / w_a) / sqrt(N).
double typicality_error(const SystemSpec &spec, std::uint64_t n, OutcomeIndex a);

/// Expected payoff sum_a x_a w_a.
double value_function(const std::vector<double> &payoffs, const SystemSpec &spec);
Rational value_function(const std::vector<Rational> &payoffs, const SystemSpec &spec);

}  // namespace bornlab

#endif
