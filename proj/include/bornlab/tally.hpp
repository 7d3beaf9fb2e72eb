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

#ifndef BORNLAB_TALLY_HPP
#define BORNLAB_TALLY_HPP

#include <compare>
#include <cstdint>
#include <numeric>
#include <vector>

namespace bornlab {

/// Number of minds per outcome. In both many-minds models every mind ends up
/// in exactly one branch, so the counts sum to the mind count.
struct MindTally {
    std::vector<std::uint64_t> counts;

    std::uint64_t total() const { return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}); }
    std::uint64_t operator[](std::size_t a) const { return counts.at(a); }

    auto operator<=>(const MindTally &) const = default;
};

}  // namespace bornlab

#endif
