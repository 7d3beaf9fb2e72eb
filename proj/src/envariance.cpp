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

#include "bornlab/envariance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace bornlab {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

/// sum_{s<T} sqrt(1/T) |s> |tag(s)>
template <class TagFn>
BranchState equal_superposition(std::uint32_t levels, TagFn tag) {
    std::vector<Branch> out;
    const double amp = std::sqrt(1.0 / levels);
    for (std::uint32_t s = 0; s < levels; ++s) {
        Branch b;
        b.label.system = static_cast<SystemSymbol>(s);
        b.label.env = tag(s);
        b.amplitude = amp;
        b.exact_weight = Rational(1, levels);
        out.push_back(std::move(b));
    }
    return BranchState(LabelSchema{Field::System, Field::Env}, std::move(out));
}

void require_system_env(const BranchState &s) {
    if (!s.schema().has(Field::System) || !s.schema().has(Field::Env)) {
        throw Error("state needs system and environment fields");
    }
}

double joint_measure(const BranchState &s, SystemSymbol sym, const std::string &tag) {
    return measure_of(s, [&](const BranchLabel &l) { return l.system == sym && l.env == tag; });
}

Amplitude amplitude_of(const BranchState &s, SystemSymbol sym) {
    for (const auto &b : s.branches()) {
        if (b.label.system == sym) return b.amplitude;
    }
    return 0;
}

// Exchange of the two records, carrying the relative phase of the two branches
// so that equal magnitudes are restored exactly whatever their phases.
LabelUnitary counterswap(const BranchState &s, SystemSymbol a, SystemSymbol b, const std::string &tag_a,
                         const std::string &tag_b) {
    Amplitude rel = amplitude_of(s, b) * std::conj(amplitude_of(s, a));
    rel = std::abs(rel) > 0 ? rel / std::abs(rel) : Amplitude(1);
    LabelUnitary::EnvMap m;
    m.mapping = {{tag_a, tag_b}, {tag_b, tag_a}};
    m.phases = {{tag_a, rel}, {tag_b, std::conj(rel)}};
    return LabelUnitary(std::move(m));
}

}  // namespace

FineGrainMap FineGrainMap::from_sizes(const std::vector<std::uint32_t> &sizes) {
    std::vector<std::vector<std::uint32_t>> groups;
    std::uint32_t next = 0;
    for (auto n : sizes) {
        std::vector<std::uint32_t> g;
        for (std::uint32_t i = 0; i < n; ++i) g.push_back(next++);
        groups.push_back(std::move(g));
    }
    return from_groups(std::move(groups));
}

FineGrainMap FineGrainMap::from_groups(std::vector<std::vector<std::uint32_t>> groups) {
    FineGrainMap map;
    std::uint32_t total = 0;
    for (const auto &g : groups) total += static_cast<std::uint32_t>(g.size());
    if (total == 0) {
        throw Error("partition mismatch");
    }
    map.coarse_of_.assign(total, std::numeric_limits<std::uint32_t>::max());
    for (std::uint32_t a = 0; a < groups.size(); ++a) {
        for (auto s : groups[a]) {
            if (s >= total || map.coarse_of_[s] != std::numeric_limits<std::uint32_t>::max()) {
                throw Error("partition mismatch");
            }
            map.coarse_of_[s] = a;
        }
    }
    map.levels_ = total;
    map.groups_ = std::move(groups);
    return map;
}

std::string fine_env_tag(std::uint32_t s) {
    return "eps" + std::to_string(s + 1);
}

std::string coarse_env_tag(std::uint32_t a) {
    return "e" + std::to_string(a + 1);
}

BranchState schmidt_state(std::uint32_t levels) {
    if (levels < 2) {
        throw Error("Schmidt state needs at least two branches");
    }
    return equal_superposition(levels, fine_env_tag);
}

std::optional<std::string> correlated_tag(const BranchState &s, SystemSymbol symbol) {
    std::optional<std::string> tag;
    for (const auto &b : s.branches()) {
        if (b.label.system != symbol) continue;
        if (tag) return std::nullopt;
        tag = b.label.env;
    }
    return tag;
}

EnvarianceReport verify_envariance(const BranchState &s, SystemSymbol a, SystemSymbol b) {
    require_system_env(s);
    EnvarianceReport report;
    report.swapped = apply(LabelUnitary::swap_system(a, b), s);
    auto tag_a = correlated_tag(s, a);
    auto tag_b = correlated_tag(s, b);
    report.correlated = tag_a && tag_b && *tag_a != *tag_b;
    if (report.correlated) {
        report.counterswapped = apply(counterswap(s, a, b, *tag_a, *tag_b), report.swapped);
    } else {
        report.counterswapped = report.swapped;
    }
    report.fidelity = fidelity(report.counterswapped, s);
    report.envariant = report.correlated && std::abs(report.fidelity - 1.0) < kSymmetryTolerance;
    return report;
}

SymmetryCheck strong_symmetry_check(const BranchState &s, SystemSymbol a, SystemSymbol b) {
    require_system_env(s);
    SymmetryCheck check;
    const std::string tag_a = correlated_tag(s, a).value_or("");
    const std::string tag_b = correlated_tag(s, b).value_or("");
    check.correlated = !tag_a.empty() && !tag_b.empty() && tag_a != tag_b;

    BranchState swapped = apply(LabelUnitary::swap_system(a, b), s);
    BranchState counterswapped =
        check.correlated ? apply(counterswap(s, a, b, tag_a, tag_b), swapped) : swapped;

    check.original = joint_measure(s, a, tag_a);
    check.after_swap = joint_measure(swapped, b, tag_a);
    check.after_counterswap = joint_measure(counterswapped, b, check.correlated ? tag_b : tag_a);
    check.partner = joint_measure(s, b, check.correlated ? tag_b : tag_a);
    check.swap_indifference = std::abs(check.original - check.after_swap) < kSymmetryTolerance;
    check.counterswap_indifference = std::abs(check.after_swap - check.after_counterswap) < kSymmetryTolerance;
    check.holds = check.swap_indifference && check.counterswap_indifference &&
                  std::abs(check.after_counterswap - check.partner) < kSymmetryTolerance;
    return check;
}

std::vector<Rational> equiprobability_from_symmetry(const BranchState &s) {
    require_system_env(s);
    const std::size_t n = s.size();
    if (n == 0) {
        throw Error("not envariant");
    }
    std::vector<SystemSymbol> symbols;
    for (const auto &b : s.branches()) symbols.push_back(b.label.system);
    for (std::size_t i = 1; i < n; ++i) {
        if (symbols[i] == symbols[i - 1]) {
            throw Error("not envariant");
        }
    }
    // Envariance of a pair means equal magnitudes, so pairing every branch with the first covers all pairs.
    for (std::size_t j = 1; j < n; ++j) {
        if (!verify_envariance(s, symbols[0], symbols[j]).envariant) {
            throw Error("not envariant");
        }
    }
    return std::vector<Rational>(n, Rational(1, n));
}

FineGraining fine_grain(const SystemSpec &spec, std::optional<std::uint32_t> levels, std::uint32_t cap) {
    if (!spec.is_exact()) {
        throw Error("requires rational approximation");
    }
    BigInt lcd = spec.common_denominator();
    BigInt t = levels ? BigInt(*levels) : lcd;
    if (t > cap) {
        throw Error("fine-graining denominator exceeds cap");
    }
    if (t == 0 || t % lcd != 0) {
        throw Error("fine-graining mismatch");
    }
    const auto total = t.convert_to<std::uint32_t>();
    std::vector<std::uint32_t> sizes;
    for (const auto &w : spec.exact_weights()) {
        Rational scaled = w * total;
        sizes.push_back(boost::multiprecision::numerator(scaled).convert_to<std::uint32_t>());
    }
    FineGrainMap map = FineGrainMap::from_sizes(sizes);
    BranchState coarse_tagged =
        equal_superposition(total, [&](std::uint32_t s) { return coarse_env_tag(map.coarse_of(s)); });
    BranchState state = equal_superposition(total, fine_env_tag);
    return FineGraining{std::move(map), std::move(coarse_tagged), std::move(state)};
}

std::vector<Rational> rational_approximation(const std::vector<double> &weights, double tolerance,
                                             std::uint32_t cap) {
    if (weights.empty()) {
        throw Error("outcome alphabet is empty");
    }
    for (std::uint32_t t = 1; t <= cap; ++t) {
        std::vector<std::int64_t> counts;
        std::int64_t sum = 0;
        for (double w : weights) {
            counts.push_back(std::llround(w * t));
            sum += counts.back();
        }
        // Push the rounding residue onto the entries that absorb it best.
        while (sum != t) {
            std::size_t pick = 0;
            double best = INFINITY;
            for (std::size_t i = 0; i < counts.size(); ++i) {
                std::int64_t candidate = counts[i] + (sum < t ? 1 : -1);
                if (candidate < 0) continue;
                double err = std::abs(static_cast<double>(candidate) / t - weights[i]);
                if (err < best) {
                    best = err;
                    pick = i;
                }
            }
            counts[pick] += sum < t ? 1 : -1;
            sum += sum < t ? 1 : -1;
        }
        bool ok = true;
        for (std::size_t i = 0; i < counts.size() && ok; ++i) {
            ok = std::abs(static_cast<double>(counts[i]) / t - weights[i]) < tolerance;
        }
        if (ok) {
            std::vector<Rational> out;
            for (auto c : counts) out.emplace_back(BigInt(c), BigInt(t));
            return out;
        }
    }
    throw Error("no rational approximation within tolerance below the denominator cap");
}

std::vector<Rational> coarse_probability(const FineGrainMap &map, const std::vector<Rational> &fine) {
    if (fine.size() != map.levels()) {
        throw Error("partition mismatch");
    }
    Rational total = 0;
    for (const auto &p : fine) total += p;
    if (total != 1) {
        throw Error("fine probabilities must sum to 1");
    }
    std::vector<Rational> out(map.coarse_count(), Rational(0));
    for (std::uint32_t s = 0; s < map.levels(); ++s) out[map.coarse_of(s)] += fine[s];
    return out;
}

WallaceReport wallace_chain(const BranchState &s, SystemSymbol a, SystemSymbol b) {
    require_system_env(s);
    auto tag_a = correlated_tag(s, a);
    auto tag_b = correlated_tag(s, b);
    if (!tag_a || !tag_b || *tag_a == *tag_b) {
        throw Error("wallace chain needs distinct observer records for both outcomes");
    }
    WallaceReport r;
    r.record_a = *tag_a;
    r.record_b = *tag_b;
    r.original = s;
    const auto cs = counterswap(s, a, b, *tag_a, *tag_b);
    r.counterswapped = apply(cs, s);
    const std::set<SystemSymbol> targets{a, b};
    r.erased = erase(s, targets);
    r.erased_counterswapped = erase(r.counterswapped, targets);
    r.erased_identical = same_branches(r.erased, r.erased_counterswapped, kSymmetryTolerance);
    r.involution = same_branches(apply(cs, r.counterswapped), s, kSymmetryTolerance);
    auto pred_a = [&](const BranchLabel &l) { return l.system == a && l.env == *tag_a; };
    auto pred_b = [&](const BranchLabel &l) { return l.system == b && l.env == *tag_b; };
    r.measure_a = measure_of(s, pred_a);
    r.measure_b = measure_of(s, pred_b);
    r.exact_measure_a = exact_measure_of(s, pred_a);
    r.exact_measure_b = exact_measure_of(s, pred_b);
    r.equal_probabilities = r.erased_identical;
    return r;
}

BranchState observer_record_state(const SystemSpec &spec) {
    std::vector<Branch> out;
    for (OutcomeIndex a = 0; a < spec.size(); ++a) {
        Branch b;
        b.label.system = static_cast<SystemSymbol>(a);
        b.label.env = "Alex_" + spec.name(a);
        b.amplitude = spec.amplitude(a);
        if (spec.is_exact()) b.exact_weight = spec.exact_weight(a);
        out.push_back(std::move(b));
    }
    return BranchState(LabelSchema{Field::System, Field::Env}, std::move(out));
}

}  // namespace bornlab
