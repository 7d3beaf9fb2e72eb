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

#include "bornlab/rng.hpp"

#include <algorithm>

namespace bornlab {

std::uint64_t RandomStream::below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(engine_()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

std::size_t RandomStream::categorical(std::span<const std::uint64_t> cumulative, std::uint64_t total) {
    std::uint64_t r = below(total);
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
    return static_cast<std::size_t>(it - cumulative.begin());
}

std::size_t RandomStream::categorical(std::span<const double> cumulative) {
    double r = unit();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
    auto i = static_cast<std::size_t>(it - cumulative.begin());
    return std::min(i, cumulative.size() - 1);
}

}  // namespace bornlab
