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

#include "bornlab/frequency.hpp"

#include <cmath>

#include "bornlab/kernels.hpp"

namespace bornlab {

namespace {

bool within_cap(std::size_t alphabet, std::uint32_t n, std::uint64_t cap) {
    BigInt total = boost::multiprecision::pow(BigInt(alphabet), n);
    return total <= cap;
}

void check_outcome(const SystemSpec &spec, OutcomeIndex a) {
    if (a >= spec.size()) {
        throw Error("outcome index out of range");
    }
}

/// |k/N - w| > epsilon, evaluated exactly.
bool deviates(std::uint64_t k, std::uint32_t n, const Rational &w, const Rational &epsilon) {
    Rational d = Rational(k, n) - w;
    if (d < 0) d = -d;
    return d > epsilon;
}

bool deviates(std::uint64_t k, std::uint32_t n, double w, double epsilon) {
    return std::abs(static_cast<double>(k) / n - w) > epsilon;
}

double log_binomial_pmf(std::uint32_t n, std::uint32_t k, double w) {
    if (w == 0) return k == 0 ? 0.0 : -INFINITY;
    if (w == 1) return k == n ? 0.0 : -INFINITY;
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * std::log(w) +
           (n - k) * std::log1p(-w);
}

}  // namespace

BranchState system_superposition(const SystemSpec &spec) {
    std::vector<Branch> out;
    for (OutcomeIndex a = 0; a < spec.size(); ++a) {
        Branch b;
        b.label.system = static_cast<SystemSymbol>(a);
        b.amplitude = spec.amplitude(a);
        if (spec.is_exact()) b.exact_weight = spec.exact_weight(a);
        out.push_back(std::move(b));
    }
    return BranchState(LabelSchema{Field::System}, std::move(out));
}

HistoryStats history_state(const SystemSpec &spec, const History &h) {
    if (h.empty()) {
        throw Error("history must contain at least one outcome");
    }
    HistoryStats stats;
    stats.counts.assign(spec.size(), 0);
    stats.length = h.size();
    for (OutcomeIndex a : h) {
        if (a >= spec.size()) {
            throw Error("unknown outcome symbol in history");
        }
        ++stats.counts[a];
    }
    stats.measure = 1;
    for (OutcomeIndex a = 0; a < spec.size(); ++a) {
        stats.measure *= std::pow(spec.weight(a), static_cast<double>(stats.counts[a]));
    }
    if (spec.is_exact()) {
        Rational m = 1;
        for (OutcomeIndex a = 0; a < spec.size(); ++a) m *= pow(spec.exact_weight(a), stats.counts[a]);
        stats.exact_measure = m;
        stats.measure = to_double(m);
    }
    return stats;
}

Rational frequency_eigenvalue(const History &h, OutcomeIndex a) {
    if (h.empty()) {
        throw Error("history must contain at least one outcome");
    }
    std::uint64_t count = 0;
    for (OutcomeIndex x : h) count += (x == a);
    return Rational(count, h.size());
}

FrequencyExpectation frequency_expectation(const SystemSpec &spec, std::uint32_t n, OutcomeIndex a,
                                           const EnumerationLimits &limits) {
    check_outcome(spec, a);
    if (n == 0) {
        throw Error("repetition count must be positive");
    }
    FrequencyExpectation out;
    if (!within_cap(spec.size(), n, limits.cap)) {
        if (!limits.allow_closed_form) {
            throw Error("enumeration cap exceeded");
        }
        out.closed_form = true;
        out.value = spec.weight(a);
        if (spec.is_exact()) out.exact = spec.exact_weight(a);
        return out;
    }
    if (spec.is_exact()) {
        auto numerators = spec.common_numerators();
        auto buckets = kernels::history_buckets(numerators, n);
        BigInt weighted = 0;
        for (std::uint32_t k = 0; k <= n; ++k) weighted += buckets[a][k] * k;
        Rational e(weighted, boost::multiprecision::pow(spec.common_denominator(), n) * n);
        out.value = to_double(e);
        out.exact = std::move(e);
    } else {
        auto buckets = kernels::history_buckets(std::span<const double>(spec.weights()), n);
        double total = 0;
        double carry = 0;
        for (std::uint32_t k = 0; k <= n; ++k) {
            double term = buckets[a][k] * k / n;
            double t = total + term;
            carry += std::abs(total) >= std::abs(term) ? (total - t) + term : (term - t) + total;
            total = t;
        }
        out.value = total + carry;
    }
    return out;
}

MaverickMeasure maverick_measure(const SystemSpec &spec, std::uint32_t n, OutcomeIndex a, double epsilon,
                                 const EnumerationLimits &limits) {
    check_outcome(spec, a);
    if (!(epsilon > 0)) {
        throw Error("epsilon must be positive");
    }
    if (n == 0) {
        throw Error("repetition count must be positive");
    }
    MaverickMeasure out;
    const bool enumerate = within_cap(spec.size(), n, limits.cap);
    if (!enumerate && !limits.allow_closed_form) {
        throw Error("enumeration cap exceeded");
    }
    out.enumerated = enumerate;
    if (spec.is_exact()) {
        const Rational eps(epsilon);
        const Rational &w = spec.exact_weight(a);
        BigInt sum = 0;
        BigInt scale;
        if (enumerate) {
            auto buckets = kernels::history_buckets(spec.common_numerators(), n);
            for (std::uint32_t k = 0; k <= n; ++k) {
                if (deviates(k, n, w, eps)) sum += buckets[a][k];
            }
            scale = boost::multiprecision::pow(spec.common_denominator(), n);
        } else {
            const BigInt p = boost::multiprecision::numerator(w);
            const BigInt q = boost::multiprecision::denominator(w);
            for (std::uint32_t k = 0; k <= n; ++k) {
                if (!deviates(k, n, w, eps)) continue;
                sum += binomial(n, k) * boost::multiprecision::pow(p, k) * boost::multiprecision::pow(q - p, n - k);
            }
            scale = boost::multiprecision::pow(q, n);
        }
        out.exact = Rational(sum, scale);
        out.value = to_double(*out.exact);
        return out;
    }
    const double w = spec.weight(a);
    double total = 0;
    if (enumerate) {
        auto buckets = kernels::history_buckets(std::span<const double>(spec.weights()), n);
        for (std::uint32_t k = 0; k <= n; ++k) {
            if (deviates(k, n, w, epsilon)) total += buckets[a][k];
        }
    } else {
        for (std::uint32_t k = 0; k <= n; ++k) {
            if (deviates(k, n, w, epsilon)) total += std::exp(log_binomial_pmf(n, k, w));
        }
    }
    out.value = total;
    return out;
}

double typicality_error(const SystemSpec &spec, std::uint64_t n, OutcomeIndex a) {
    check_outcome(spec, a);
    if (n == 0) {
        throw Error("repetition count must be positive");
    }
    const double w = spec.weight(a);
    if (w == 0) {
        throw Error("degenerate outcome");
    }
    return std::sqrt((1.0 - w) / w) / std::sqrt(static_cast<double>(n));
}

double value_function(const std::vector<double> &payoffs, const SystemSpec &spec) {
    if (payoffs.size() != spec.size()) {
        throw Error("payoff list length does not match outcome alphabet");
    }
    double v = 0;
    for (OutcomeIndex a = 0; a < spec.size(); ++a) v += payoffs[a] * spec.weight(a);
    return v;
}

Rational value_function(const std::vector<Rational> &payoffs, const SystemSpec &spec) {
    if (payoffs.size() != spec.size()) {
        throw Error("payoff list length does not match outcome alphabet");
    }
    Rational v = 0;
    for (OutcomeIndex a = 0; a < spec.size(); ++a) v += payoffs[a] * spec.exact_weight(a);
    return v;
}

}  // namespace bornlab
