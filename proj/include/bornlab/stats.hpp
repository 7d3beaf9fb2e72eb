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

#ifndef BORNLAB_STATS_HPP
#define BORNLAB_STATS_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace bornlab {

struct ChiSquare {
    double statistic = 0;
    std::uint64_t dof = 0;
    double p_value = 1;
};

/// Goodness of fit of observed counts against expected probabilities. Bins
/// with zero expected probability must be empty and carry no freedom.
ChiSquare chi_square_fit(std::span<const std::uint64_t> observed, std::span<const double> expected);

/// Independence test on a contingency table.
ChiSquare chi_square_independence(const std::vector<std::vector<std::uint64_t>> &table);

/// Upper tail of the chi-square distribution.
double chi_square_survival(double statistic, std::uint64_t dof);

struct SampleMoments {
    double mean = 0;
    double stddev = 0;
};

/// Mean and (n - 1)-normalized standard deviation.
SampleMoments moments(std::span<const double> values);

}  // namespace bornlab

#endif
