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

#ifndef BORNLAB_MMI_STOCHASTIC_HPP
#define BORNLAB_MMI_STOCHASTIC_HPP

#include <cstdint>
#include <vector>

#include "bornlab/kernels.hpp"
#include "bornlab/rational.hpp"
#include "bornlab/rng.hpp"
#include "bornlab/system_spec.hpp"
#include "bornlab/tally.hpp"

namespace bornlab {

/// Sampler for one mind's branch choice. Exact specs whose common
/// denominator fits in 64 bits sample with integer arithmetic.
kernels::Categorical categorical_for(const SystemSpec &spec);

/// Each of N minds independently picks outcome a with probability weight_a.
/// Draws come from stream 0 of `rng`.
MindTally sample_minds(const SystemSpec &spec, std::uint64_t minds, const SeededRng &rng);

/// Outcome picked by each mind in trial `trial`, in mind order. Uses the same
/// draws as that trial of sample_minds_trials, so the two always agree.
History sample_mind_outcomes(const SystemSpec &spec, std::uint64_t minds, const SeededRng &rng,
                             std::uint64_t trial = 0);

/// Trial t uses stream t of `rng`; the result does not depend on thread count.
std::vector<MindTally> sample_minds_trials(const SystemSpec &spec, std::uint64_t minds, std::uint64_t trials,
                                          const SeededRng &rng);

/// Multinomial probability N!/prod N_a! * prod w_a^{N_a}.
Rational tally_pmf(const SystemSpec &spec, std::uint64_t minds, const MindTally &tally);
double tally_pmf_double(const SystemSpec &spec, std::uint64_t minds, const MindTally &tally);

/// Every tally of `minds` over `outcomes` in lexicographic order.
std::vector<MindTally> all_tallies(std::size_t outcomes, std::uint64_t minds);

/// A tally maximizing the pmf; ties go to the lexicographically smallest.
MindTally mode_tally(const SystemSpec &spec, std::uint64_t minds);

/// Probability that branch a receives no mind: (1 - w_a)^N.
Rational hulk_probability(const SystemSpec &spec, std::uint64_t minds, OutcomeIndex a);
double hulk_probability_double(const SystemSpec &spec, std::uint64_t minds, OutcomeIndex a);

/// Predicted std/mean of N_a: sqrt((1 - w_a) / w_a) / sqrt(N).
double relative_fluctuation(const SystemSpec &spec, std::uint64_t minds, OutcomeIndex a);

/// Smallest mind count N for which the expected number of minds recording
/// history h, N * P_h, reaches one: ceil(1 / P_h).
BigInt history_support_bound(const SystemSpec &spec, const History &h);

}  // namespace bornlab

#endif
