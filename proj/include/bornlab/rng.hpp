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

#ifndef BORNLAB_RNG_HPP
#define BORNLAB_RNG_HPP

#include <cstdint>
#include <random>
#include <span>

namespace bornlab {

/// SplitMix64 finalizer; used to derive stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// One reproducible random stream. Bounded and unit-interval draws are done
/// here rather than through <random> distributions, whose output is
/// implementation-defined.
class RandomStream {
   public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound), bound > 0. Unbiased (Lemire rejection).
    std::uint64_t below(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Index i with probability cumulative[i] - cumulative[i-1]; the last
    /// entry must equal `total`.
    std::size_t categorical(std::span<const std::uint64_t> cumulative, std::uint64_t total);
    std::size_t categorical(std::span<const double> cumulative);

   private:
    std::mt19937_64 engine_;
};

/// Master seed plus the stream derivation rule stream_i = hash(master, i).
class SeededRng {
   public:
    explicit SeededRng(std::uint64_t master) : master_(master) {}

    std::uint64_t master() const { return master_; }
    std::uint64_t stream_seed(std::uint64_t i) const { return mix64(mix64(master_) ^ mix64(i + 0x632be59bd9b4e019ULL)); }
    RandomStream stream(std::uint64_t i) const { return RandomStream(stream_seed(i)); }

   private:
    std::uint64_t master_;
};

}  // namespace bornlab

#endif
