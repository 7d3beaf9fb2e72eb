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

#include <gtest/gtest.h>

#include "bornlab/parallel.hpp"
#include "bornlab/rng.hpp"

namespace bornlab {
namespace {

class ThreadCount : public ::testing::TestWithParam<int> {
   protected:
    void SetUp() override { set_thread_count(GetParam()); }
    void TearDown() override { set_thread_count(0); }
};

TEST_P(ThreadCount, ExactBucketsMatchSerial) {
    const std::vector<BigInt> nums{1, 2, 3};
    for (std::uint32_t n : {1u, 4u, 9u}) {
        EXPECT_EQ(kernels::history_buckets(nums, n), kernels::history_buckets_serial(nums, n));
    }
    const std::vector<BigInt> wide{BigInt(1) << 70, BigInt(3) << 69};
    EXPECT_EQ(kernels::history_buckets(wide, 6), kernels::history_buckets_serial(wide, 6));
}

TEST_P(ThreadCount, FloatBucketsMatchSerial) {
    const std::vector<double> w{0.2, 0.3, 0.5};
    auto par = kernels::history_buckets(std::span<const double>(w), 10);
    auto ser = kernels::history_buckets_serial(std::span<const double>(w), 10);
    ASSERT_EQ(par.size(), ser.size());
    for (std::size_t a = 0; a < par.size(); ++a) {
        for (std::size_t k = 0; k < par[a].size(); ++k) EXPECT_NEAR(par[a][k], ser[a][k], 1e-14);
    }
}

TEST_P(ThreadCount, SamplersMatchSerial) {
    kernels::Categorical exact{.exact = true, .cumulative_numerators = {1, 3}, .denominator = 3, .cumulative = {}};
    kernels::Categorical floating{.exact = false, .cumulative_numerators = {}, .denominator = 1,
                                  .cumulative = {0.25, 0.5, 1.0}};
    SeededRng rng(42);
    EXPECT_EQ(kernels::sample_tallies(exact, 50, 300, rng), kernels::sample_tallies_serial(exact, 50, 300, rng));
    EXPECT_EQ(kernels::sample_tallies(floating, 7, 300, rng), kernels::sample_tallies_serial(floating, 7, 300, rng));
    EXPECT_EQ(kernels::sample_gas_columns(3, 100, 40, rng), kernels::sample_gas_columns_serial(3, 100, 40, rng));
}

TEST_P(ThreadCount, GasEnumerationMatchesSerial) {
    const std::vector<std::uint32_t> group_of{0, 1, 1, 2};
    EXPECT_EQ(kernels::gas_tally_counts(group_of, 3, 5), kernels::gas_tally_counts_serial(group_of, 3, 5));
}

INSTANTIATE_TEST_SUITE_P(Threads, ThreadCount, ::testing::Values(1, 2, 4));

TEST(Buckets, SmallCaseByHand) {
    // Weights 1/3, 2/3 as numerators over 3, two repetitions.
    const std::vector<BigInt> nums{1, 2};
    auto b = kernels::history_buckets_serial(nums, 2);
    // Outcome 0 seen k times: k=0 -> 2*2, k=1 -> 2*(1*2), k=2 -> 1*1.
    EXPECT_EQ(b[0], (std::vector<BigInt>{4, 4, 1}));
    EXPECT_EQ(b[1], (std::vector<BigInt>{1, 4, 4}));
}

TEST(GasEnumeration, CountsSumToAllAssignments) {
    const std::vector<std::uint32_t> group_of{0, 1, 1};
    std::uint64_t total = 0;
    for (const auto &[t, c] : kernels::gas_tally_counts(group_of, 2, 4)) total += c;
    EXPECT_EQ(total, 81u);
}

TEST(Rng, StreamsAreDeterministicAndDistinct) {
    SeededRng a(7), b(7);
    EXPECT_EQ(a.stream_seed(3), b.stream_seed(3));
    EXPECT_NE(a.stream_seed(3), a.stream_seed(4));
    EXPECT_NE(SeededRng(8).stream_seed(3), a.stream_seed(3));
    auto s = a.stream(0);
    for (int i = 0; i < 1000; ++i) {
        EXPECT_LT(s.below(7), 7u);
        const double u = s.unit();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

}  // namespace
}  // namespace bornlab
