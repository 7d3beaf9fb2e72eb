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

#include "bornlab/mmi_stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bornlab/frequency.hpp"

namespace bornlab {

namespace {

void check_tally(const SystemSpec &spec, std::uint64_t minds, const MindTally &tally) {
    if (tally.counts.size() != spec.size() || tally.total() != minds) {
        throw Error("inconsistent tally");
    }
}

double log_pmf(const SystemSpec &spec, std::uint64_t minds, const MindTally &tally) {
    double v = std::lgamma(static_cast<double>(minds) + 1.0);
    for (OutcomeIndex a = 0; a < spec.size(); ++a) {
        const auto k = static_cast<double>(tally.counts[a]);
        v -= std::lgamma(k + 1.0);
        if (k > 0) {
            if (spec.weight(a) == 0) return -INFINITY;
            v += k * std::log(spec.weight(a));
        }
    }
    return v;
}

void fill_tallies(std::size_t pos, std::uint64_t remaining, MindTally &current, std::vector<MindTally> &out) {
    if (pos + 1 == current.counts.size()) {
        current.counts[pos] = remaining;
        out.push_back(current);
        return;
    }
    for (std::uint64_t k = 0; k <= remaining; ++k) {
        current.counts[pos] = k;
        fill_tallies(pos + 1, remaining - k, current, out);
    }
}

}  // namespace

kernels::Categorical categorical_for(const SystemSpec &spec) {
    kernels::Categorical dist;
    if (spec.is_exact()) {
        BigInt d = spec.common_denominator();
        if (d <= BigInt(std::numeric_limits<std::uint64_t>::max())) {
            dist.exact = true;
            dist.denominator = d.convert_to<std::uint64_t>();
            std::uint64_t running = 0;
            for (const auto &a : spec.common_numerators()) {
                running += a.convert_to<std::uint64_t>();
                dist.cumulative_numerators.push_back(running);
            }
            return dist;
        }
    }
    double running = 0;
    for (double w : spec.weights()) {
        running += w;
        dist.cumulative.push_back(running);
    }
    dist.cumulative.back() = 1.0;
    return dist;
}

History sample_mind_outcomes(const SystemSpec &spec, std::uint64_t minds, const SeededRng &rng,
                             std::uint64_t trial) {
    if (minds == 0) {
        throw Error("mind count must be positive");
    }
    const auto dist = categorical_for(spec);
    auto stream = rng.stream(trial);
    History out(minds);
    for (auto &o : out) o = static_cast<OutcomeIndex>(dist.draw(stream));
    return out;
}

MindTally sample_minds(const SystemSpec &spec, std::uint64_t minds, const SeededRng &rng) {
    if (minds == 0) {
        throw Error("mind count must be positive");
    }
    return kernels::sample_tallies(categorical_for(spec), minds, 1, rng).front();
}

std::vector<MindTally> sample_minds_trials(const SystemSpec &spec, std::uint64_t minds, std::uint64_t trials,
                                          const SeededRng &rng) {
    if (minds == 0) {
        throw Error("mind count must be positive");
    }
    return kernels::sample_tallies(categorical_for(spec), minds, trials, rng);
}

Rational tally_pmf(const SystemSpec &spec, std::uint64_t minds, const MindTally &tally) {
    check_tally(spec, minds, tally);
    BigInt coefficient = factorial(minds);
    Rational p = 1;
    for (OutcomeIndex a = 0; a < spec.size(); ++a) {
        coefficient /= factorial(tally.counts[a]);
        p *= pow(spec.exact_weight(a), tally.counts[a]);
    }
    return p * coefficient;
}

double tally_pmf_double(const SystemSpec &spec, std::uint64_t minds, const MindTally &tally) {
    check_tally(spec, minds, tally);
    return std::exp(log_pmf(spec, minds, tally));
}

std::vector<MindTally> all_tallies(std::size_t outcomes, std::uint64_t minds) {
    std::vector<MindTally> out;
    if (outcomes == 0) return out;
    MindTally current;
    current.counts.assign(outcomes, 0);
    fill_tallies(0, minds, current, out);
    return out;
}

MindTally mode_tally(const SystemSpec &spec, std::uint64_t minds) {
    if (minds == 0) {
        throw Error("mind count must be positive");
    }
    auto tallies = all_tallies(spec.size(), minds);
    std::vector<double> logs;
    logs.reserve(tallies.size());
    double best = -INFINITY;
    for (const auto &t : tallies) {
        logs.push_back(log_pmf(spec, minds, t));
        best = std::max(best, logs.back());
    }
    // Floating log-pmfs only shortlist near-maximal tallies; exact specs
    // settle the shortlist with rational comparisons.
    std::vector<std::size_t> shortlist;
    for (std::size_t i = 0; i < tallies.size(); ++i) {
        if (logs[i] >= best - 1e-9 * std::max(1.0, std::abs(best))) shortlist.push_back(i);
    }
    if (!spec.is_exact()) {
        return tallies[shortlist.front()];
    }
    std::size_t winner = shortlist.front();
    Rational winner_p = tally_pmf(spec, minds, tallies[winner]);
    for (std::size_t i : shortlist) {
        Rational p = tally_pmf(spec, minds, tallies[i]);
        if (p > winner_p) {
            winner = i;
            winner_p = std::move(p);
        }
    }
    return tallies[winner];
}

Rational hulk_probability(const SystemSpec &spec, std::uint64_t minds, OutcomeIndex a) {
    return pow(Rational(1) - spec.exact_weight(a), minds);
}

double hulk_probability_double(const SystemSpec &spec, std::uint64_t minds, OutcomeIndex a) {
    if (spec.is_exact()) return to_double(hulk_probability(spec, minds, a));
    return std::pow(1.0 - spec.weight(a), static_cast<double>(minds));
}

double relative_fluctuation(const SystemSpec &spec, std::uint64_t minds, OutcomeIndex a) {
    if (a >= spec.size()) {
        throw Error("outcome index out of range");
    }
    if (minds == 0) {
        throw Error("mind count must be positive");
    }
    const double w = spec.weight(a);
    if (w == 0) {
        throw Error("degenerate outcome");
    }
    return std::sqrt((1.0 - w) / w) / std::sqrt(static_cast<double>(minds));
}

BigInt history_support_bound(const SystemSpec &spec, const History &h) {
    HistoryStats stats = history_state(spec, h);
    if (stats.exact_measure) {
        if (*stats.exact_measure == 0) {
            throw Error("impossible history");
        }
        return ceil(Rational(1) / *stats.exact_measure);
    }
    if (stats.measure == 0) {
        throw Error("impossible history");
    }
    return BigInt(std::ceil(1.0 / stats.measure));
}

}  // namespace bornlab
