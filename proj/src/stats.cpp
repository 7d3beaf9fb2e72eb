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

#include "bornlab/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "bornlab/rational.hpp"

namespace bornlab {

double chi_square_survival(double statistic, std::uint64_t dof) {
    if (dof == 0) return statistic > 0 ? 0.0 : 1.0;
    if (statistic <= 0) return 1.0;
    return boost::math::gamma_q(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

ChiSquare chi_square_fit(std::span<const std::uint64_t> observed, std::span<const double> expected) {
    if (observed.size() != expected.size()) {
        throw Error("chi-square bins differ in length");
    }
    double n = 0;
    for (auto o : observed) n += static_cast<double>(o);
    ChiSquare out;
    std::uint64_t live = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = expected[i] * n;
        if (e <= 0) {
            if (observed[i] != 0) {
                out.statistic = INFINITY;
                out.p_value = 0;
            }
            continue;
        }
        ++live;
        const double d = static_cast<double>(observed[i]) - e;
        out.statistic += d * d / e;
    }
    out.dof = live > 0 ? live - 1 : 0;
    if (std::isfinite(out.statistic)) out.p_value = chi_square_survival(out.statistic, out.dof);
    return out;
}

ChiSquare chi_square_independence(const std::vector<std::vector<std::uint64_t>> &table) {
    const std::size_t rows = table.size();
    const std::size_t cols = rows ? table.front().size() : 0;
    std::vector<double> row_sum(rows, 0), col_sum(cols, 0);
    double n = 0;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            row_sum[i] += static_cast<double>(table[i][j]);
            col_sum[j] += static_cast<double>(table[i][j]);
            n += static_cast<double>(table[i][j]);
        }
    }
    ChiSquare out;
    std::size_t live_rows = 0, live_cols = 0;
    for (double r : row_sum) live_rows += r > 0;
    for (double c : col_sum) live_cols += c > 0;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double e = row_sum[i] * col_sum[j] / n;
            if (e <= 0) continue;
            const double d = static_cast<double>(table[i][j]) - e;
            out.statistic += d * d / e;
        }
    }
    out.dof = (live_rows > 0 && live_cols > 0) ? (live_rows - 1) * (live_cols - 1) : 0;
    out.p_value = chi_square_survival(out.statistic, out.dof);
    return out;
}

SampleMoments moments(std::span<const double> values) {
    SampleMoments m;
    if (values.empty()) return m;
    for (double v : values) m.mean += v;
    m.mean /= static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0;
        for (double v : values) ss += (v - m.mean) * (v - m.mean);
        m.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return m;
}

}  // namespace bornlab
