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

#include "bornlab/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "bornlab/parallel.hpp"

namespace bornlab::kernels {

namespace {

using u128 = unsigned __int128;

/// Neumaier-compensated running sum.
struct CompensatedSum {
    double sum = 0;
    double carry = 0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + carry; }
};

BigInt to_big(u128 v) {
    BigInt hi = static_cast<std::uint64_t>(v >> 64);
    return (hi << 64) + static_cast<std::uint64_t>(v);
}

template <class Scalar, class Cell>
void descend(std::span<const Scalar> weights, std::uint32_t remaining, const Scalar &prod,
             std::vector<std::uint32_t> &counts, std::vector<std::vector<Cell>> &buckets) {
    if (remaining == 0) {
        for (std::size_t a = 0; a < counts.size(); ++a) {
            if constexpr (std::is_same_v<Cell, CompensatedSum>) {
                buckets[a][counts[a]].add(prod);
            } else {
                buckets[a][counts[a]] += prod;
            }
        }
        return;
    }
    for (std::size_t b = 0; b < weights.size(); ++b) {
        ++counts[b];
        descend<Scalar, Cell>(weights, remaining - 1, prod * weights[b], counts, buckets);
        --counts[b];
    }
}

/// Splits the history tree at a fixed prefix depth; each prefix is one
/// independent chunk, reduced afterwards in prefix (lexicographic) order.
template <class Scalar, class Cell>
std::vector<std::vector<std::vector<Cell>>> chunked_buckets(std::span<const Scalar> weights, std::uint32_t n) {
    const std::size_t k = weights.size();
    std::uint32_t prefix = 0;
    std::uint64_t chunks = 1;
    if (k > 1) {
        while (prefix < n && chunks < 256) {
            chunks *= k;
            ++prefix;
        }
    }
    std::vector<std::vector<std::vector<Cell>>> partial(
        chunks, std::vector<std::vector<Cell>>(k, std::vector<Cell>(n + 1, Cell{})));
    const auto chunk_count = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
    for (std::int64_t c = 0; c < chunk_count; ++c) {
        std::vector<std::uint32_t> counts(k, 0);
        Scalar prod = Scalar(1);
        auto rest = static_cast<std::uint64_t>(c);
        std::vector<std::size_t> digits(prefix);
        for (std::uint32_t d = prefix; d-- > 0;) {
            digits[d] = static_cast<std::size_t>(rest % k);
            rest /= k;
        }
        for (std::size_t digit : digits) {
            ++counts[digit];
            prod = prod * weights[digit];
        }
        descend<Scalar, Cell>(weights, n - prefix, prod, counts, partial[static_cast<std::size_t>(c)]);
    }
    return partial;
}

std::vector<std::uint32_t> odometer_counts(const std::vector<std::size_t> &digits, std::size_t k) {
    std::vector<std::uint32_t> counts(k, 0);
    for (auto d : digits) ++counts[d];
    return counts;
}

bool advance(std::vector<std::size_t> &digits, std::size_t k) {
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (++digits[i] < k) return true;
        digits[i] = 0;
    }
    return false;
}

}  // namespace

ExactBuckets history_buckets(std::span<const BigInt> numerators, std::uint32_t n) {
    const std::size_t k = numerators.size();
    BigInt denom = 0;
    for (const auto &a : numerators) denom += a;
    const bool fits = denom < (BigInt(1) << 62) && boost::multiprecision::pow(denom, n) < (BigInt(1) << 126);
    ExactBuckets out(k, std::vector<BigInt>(n + 1, BigInt(0)));
    if (fits) {
        std::vector<u128> small;
        for (const auto &a : numerators) {
            small.push_back(static_cast<u128>(a.convert_to<std::uint64_t>()));
        }
        auto partial = chunked_buckets<u128, u128>(small, n);
        for (const auto &chunk : partial) {
            for (std::size_t a = 0; a < k; ++a) {
                for (std::uint32_t j = 0; j <= n; ++j) out[a][j] += to_big(chunk[a][j]);
            }
        }
    } else {
        auto partial = chunked_buckets<BigInt, BigInt>(numerators, n);
        for (const auto &chunk : partial) {
            for (std::size_t a = 0; a < k; ++a) {
                for (std::uint32_t j = 0; j <= n; ++j) out[a][j] += chunk[a][j];
            }
        }
    }
    return out;
}

ExactBuckets history_buckets_serial(std::span<const BigInt> numerators, std::uint32_t n) {
    const std::size_t k = numerators.size();
    ExactBuckets out(k, std::vector<BigInt>(n + 1, BigInt(0)));
    std::vector<std::size_t> digits(n, 0);
    do {
        auto counts = odometer_counts(digits, k);
        BigInt prod = 1;
        for (auto d : digits) prod *= numerators[d];
        for (std::size_t a = 0; a < k; ++a) out[a][counts[a]] += prod;
    } while (advance(digits, k));
    return out;
}

FloatBuckets history_buckets(std::span<const double> weights, std::uint32_t n) {
    const std::size_t k = weights.size();
    auto partial = chunked_buckets<double, CompensatedSum>(weights, n);
    FloatBuckets out(k, std::vector<double>(n + 1, 0.0));
    for (std::size_t a = 0; a < k; ++a) {
        for (std::uint32_t j = 0; j <= n; ++j) {
            CompensatedSum total;
            for (const auto &chunk : partial) {
                total.add(chunk[a][j].sum);
                total.add(chunk[a][j].carry);
            }
            out[a][j] = total.value();
        }
    }
    return out;
}

FloatBuckets history_buckets_serial(std::span<const double> weights, std::uint32_t n) {
    const std::size_t k = weights.size();
    std::vector<std::vector<CompensatedSum>> acc(k, std::vector<CompensatedSum>(n + 1));
    std::vector<std::size_t> digits(n, 0);
    do {
        auto counts = odometer_counts(digits, k);
        double prod = 1;
        for (auto d : digits) prod *= weights[d];
        for (std::size_t a = 0; a < k; ++a) acc[a][counts[a]].add(prod);
    } while (advance(digits, k));
    FloatBuckets out(k, std::vector<double>(n + 1, 0.0));
    for (std::size_t a = 0; a < k; ++a) {
        for (std::uint32_t j = 0; j <= n; ++j) out[a][j] = acc[a][j].value();
    }
    return out;
}

namespace {

MindTally draw_tally(const Categorical &dist, std::uint64_t minds, RandomStream stream) {
    MindTally t;
    t.counts.assign(dist.size(), 0);
    for (std::uint64_t i = 0; i < minds; ++i) ++t.counts[dist.draw(stream)];
    return t;
}

}  // namespace

std::vector<MindTally> sample_tallies(const Categorical &dist, std::uint64_t minds, std::uint64_t trials,
                                      const SeededRng &rng) {
    std::vector<MindTally> out(trials);
    const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (std::int64_t t = 0; t < count; ++t) {
        out[static_cast<std::size_t>(t)] = draw_tally(dist, minds, rng.stream(static_cast<std::uint64_t>(t)));
    }
    return out;
}

std::vector<MindTally> sample_tallies_serial(const Categorical &dist, std::uint64_t minds, std::uint64_t trials,
                                             const SeededRng &rng) {
    std::vector<MindTally> out;
    out.reserve(trials);
    for (std::uint64_t t = 0; t < trials; ++t) out.push_back(draw_tally(dist, minds, rng.stream(t)));
    return out;
}

std::vector<std::uint16_t> sample_gas_columns(std::uint32_t levels, std::uint64_t minds, std::uint64_t columns,
                                              const SeededRng &rng) {
    std::vector<std::uint16_t> out(minds * columns);
    const auto count = static_cast<std::int64_t>(columns);
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (std::int64_t k = 0; k < count; ++k) {
        auto stream = rng.stream(static_cast<std::uint64_t>(k));
        auto *col = out.data() + static_cast<std::uint64_t>(k) * minds;
        for (std::uint64_t i = 0; i < minds; ++i) col[i] = static_cast<std::uint16_t>(stream.below(levels));
    }
    return out;
}

std::vector<std::uint16_t> sample_gas_columns_serial(std::uint32_t levels, std::uint64_t minds,
                                                     std::uint64_t columns, const SeededRng &rng) {
    std::vector<std::uint16_t> out;
    out.reserve(minds * columns);
    for (std::uint64_t k = 0; k < columns; ++k) {
        auto stream = rng.stream(k);
        for (std::uint64_t i = 0; i < minds; ++i) out.push_back(static_cast<std::uint16_t>(stream.below(levels)));
    }
    return out;
}

std::map<MindTally, std::uint64_t> gas_tally_counts(std::span<const std::uint32_t> group_of, std::uint32_t groups,
                                                    std::uint32_t minds) {
    const std::uint64_t levels = group_of.size();
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < minds; ++i) total *= levels;
    std::map<MindTally, std::uint64_t> out;
    const auto count = static_cast<std::int64_t>(total);
#pragma omp parallel num_threads(thread_count())
    {
        std::map<MindTally, std::uint64_t> local;
        MindTally t;
#pragma omp for schedule(static)
        for (std::int64_t idx = 0; idx < count; ++idx) {
            t.counts.assign(groups, 0);
            auto rest = static_cast<std::uint64_t>(idx);
            for (std::uint32_t i = 0; i < minds; ++i) {
                ++t.counts[group_of[rest % levels]];
                rest /= levels;
            }
            ++local[t];
        }
#pragma omp critical
        for (const auto &[tally, c] : local) out[tally] += c;
    }
    return out;
}

std::map<MindTally, std::uint64_t> gas_tally_counts_serial(std::span<const std::uint32_t> group_of,
                                                           std::uint32_t groups, std::uint32_t minds) {
    std::map<MindTally, std::uint64_t> out;
    std::vector<std::size_t> digits(minds, 0);
    do {
        MindTally t;
        t.counts.assign(groups, 0);
        for (auto d : digits) ++t.counts[group_of[d]];
        ++out[t];
    } while (advance(digits, group_of.size()));
    return out;
}

}  // namespace bornlab::kernels
