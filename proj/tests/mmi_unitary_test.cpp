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

#include "bornlab/mmi_unitary.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "bornlab/envariance.hpp"
#include "bornlab/kernels.hpp"
#include "bornlab/mmi_stochastic.hpp"
#include "bornlab/parallel.hpp"
#include "bornlab/stats.hpp"

namespace bornlab {
namespace {

const MindSlot kAware0 = MindSlot::aware(0);
const MindSlot kAware1 = MindSlot::aware(1);
const MindSlot kEmpty = MindSlot::empty();

TEST(Gas, SeedDeterminesGas) {
    EXPECT_EQ(sample_gas(3, 20, 10, 5), sample_gas(3, 20, 10, 5));
    EXPECT_NE(sample_gas(3, 20, 10, 5), sample_gas(3, 20, 10, 6));
    EXPECT_THROW(sample_gas(1, 20, 10, 5), Error);
}

TEST(Gas, SymbolFrequenciesWithinBands) {
    auto gas = sample_gas(3, 1000, 100, 99);
    const double total = 1000.0 * 100;
    const double band = 5 * std::sqrt((1.0 / 3) * (2.0 / 3) / total);
    for (auto c : gas.symbol_counts()) EXPECT_NEAR(c / total, 1.0 / 3, band);
    auto family = gas.family_counts(17);
    EXPECT_EQ(family[0] + family[1] + family[2], 100u);
}

TEST(Evolution, SingleMind) {
    auto spec = SystemSpec::parse("1/2,1/2");
    auto spade = evolve_single_mind(spec, kSpade);
    ASSERT_EQ(spade.size(), 2u);
    const auto &up = spade.branches()[0];
    const auto &down = spade.branches()[1];
    EXPECT_EQ(up.label.system, 0);
    EXPECT_EQ(up.label.minds, std::vector<MindSlot>{kAware0});
    EXPECT_EQ(down.label.minds, std::vector<MindSlot>{kEmpty});
    EXPECT_EQ(up.label.qubits, std::vector<QubitSymbol>{kSpade});
    EXPECT_NE(up.label.env, down.label.env);
    EXPECT_NEAR(up.amplitude.real(), std::sqrt(0.5), 1e-15);

    auto heart = evolve_single_mind(spec, kHeart);
    EXPECT_EQ(heart.branches()[0].label.minds, std::vector<MindSlot>{kEmpty});
    EXPECT_EQ(heart.branches()[1].label.minds, std::vector<MindSlot>{kAware1});
    EXPECT_THROW(evolve_single_mind(SystemSpec::parse("1/3,2/3"), kSpade), Error);
}

TEST(Evolution, TLevel) {
    auto s = evolve_t_level(3, 1);
    ASSERT_EQ(s.size(), 3u);
    for (const auto &b : s.branches()) {
        EXPECT_NEAR(std::norm(b.amplitude), 1.0 / 3, 1e-15);
        EXPECT_EQ(b.label.minds[0].is_aware(), b.label.system == 1);
    }
    EXPECT_THROW(evolve_t_level(3, 3), Error);
}

TEST(Evolution, TwoMinds) {
    const QubitSymbol sh[] = {kSpade, kHeart};
    auto s = evolve_many_minds(2, sh);
    EXPECT_EQ(s.branches()[0].label.minds, (std::vector<MindSlot>{kAware0, kEmpty}));
    EXPECT_EQ(s.branches()[1].label.minds, (std::vector<MindSlot>{kEmpty, kAware1}));

    const QubitSymbol hh[] = {kHeart, kHeart};
    auto t = evolve_many_minds(2, hh);
    EXPECT_EQ(t.branches()[0].label.minds, (std::vector<MindSlot>{kEmpty, kEmpty}));
    EXPECT_EQ(t.branches()[1].label.minds, (std::vector<MindSlot>{kAware1, kAware1}));
    EXPECT_EQ(aware_tally(t, 2, 2).counts, (std::vector<std::uint64_t>{0, 2}));
}

TEST(Evolution, SlotPermutationExchangesDisplays) {
    const QubitSymbol sh[] = {kSpade, kHeart};
    const QubitSymbol hs[] = {kHeart, kSpade};
    auto a = evolve_many_minds(2, sh);
    auto b = evolve_many_minds(2, hs);
    auto swapped = apply(LabelUnitary::swap_minds(0, 1, 2), a);
    // Only the slots move; the qubit record still tells the two displays apart.
    ASSERT_EQ(swapped.size(), b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        EXPECT_EQ(swapped.branches()[i].label.minds, b.branches()[i].label.minds);
    }
    EXPECT_FALSE(same_branches(a, b));
}

TEST(Evolution, UnitaryAndInjective) {
    std::map<std::vector<BranchLabel>, int> seen;
    std::vector<QubitSymbol> column(3, 0);
    for (int code = 0; code < 27; ++code) {
        column = {static_cast<QubitSymbol>(code % 3), static_cast<QubitSymbol>(code / 3 % 3),
                  static_cast<QubitSymbol>(code / 9)};
        auto s = evolve_many_minds(3, column);
        EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
        std::vector<BranchLabel> labels;
        for (const auto &b : s.branches()) labels.push_back(b.label);
        EXPECT_TRUE(seen.emplace(labels, code).second);
    }
}

TEST(Experiment, SerialAndParallelAgree) {
    ExperimentScenario sc{SystemSpec::parse("1/3,2/3"), 500, 64, std::nullopt, 31, RunMode::MonteCarlo};
    auto serial = run_experiment_serial(sc);
    for (int threads : {1, 3, 8}) {
        set_thread_count(threads);
        auto par = run_experiment(sc);
        EXPECT_EQ(par.tallies, serial.tallies);
        EXPECT_EQ(*par.gas, *serial.gas);
    }
    set_thread_count(0);
}

TEST(Experiment, TheoreticalTableIsCoarseProbability) {
    ExperimentScenario sc{SystemSpec::parse("1/4,1/4,1/2"), 100, 10, std::nullopt, 1, RunMode::MonteCarlo};
    auto r = run_experiment(sc);
    EXPECT_EQ(r.map.levels(), 4u);
    std::vector<Rational> fine(4, make_rational(1, 4));
    EXPECT_EQ(r.theoretical, coarse_probability(r.map, fine));
}

TEST(Experiment, SymmetricConvergence) {
    ExperimentScenario sc{SystemSpec::parse("1/2,1/2"), 10000, 100, std::nullopt, 20260101, RunMode::MonteCarlo};
    auto r = run_experiment(sc);
    EXPECT_NEAR(r.mean_fraction[0], 0.5, 0.015);
    EXPECT_EQ(r.hulk_events, 0u);
    EXPECT_NEAR(r.observed_fluctuation[0], r.predicted_fluctuation[0], 0.3 * r.predicted_fluctuation[0]);
}

TEST(Experiment, AutoLevelsFromDenominators) {
    ExperimentScenario sc{SystemSpec::parse("1,0"), 10, 2, std::nullopt, 1, RunMode::MonteCarlo};
    auto r = run_experiment(sc);
    EXPECT_EQ(r.map.levels(), 2u);
    EXPECT_EQ(r.mean_fraction[0], 1.0);
}

TEST(Experiment, HulksVanishAtLargeN) {
    ExperimentScenario sc{SystemSpec::parse("1/2,1/2"), 10000, 10000, std::nullopt, 8, RunMode::MonteCarlo};
    auto r = run_experiment(sc);
    EXPECT_EQ(r.hulk_events, 0u);
}

TEST(Experiment, SmallGasTalliesFollowMultinomial) {
    auto spec = SystemSpec::parse("1/4,3/4");
    ExperimentScenario sc{spec, 5, 100000, std::nullopt, 77, RunMode::MonteCarlo};
    auto r = run_experiment(sc);
    std::map<MindTally, std::uint64_t> hist;
    for (const auto &t : r.tallies) ++hist[t];
    std::vector<std::uint64_t> observed;
    std::vector<double> expected;
    for (const auto &t : all_tallies(2, 5)) {
        observed.push_back(hist[t]);
        expected.push_back(to_double(tally_pmf(spec, 5, t)));
    }
    EXPECT_GT(chi_square_fit(observed, expected).p_value, 0.001);
}

TEST(Experiment, TwoMindsAreIndependentAndFair) {
    ExperimentScenario sc{SystemSpec::parse("1/2,1/2"), 2, 40000, std::nullopt, 4, RunMode::MonteCarlo};
    auto r = run_experiment(sc);
    auto joint = joint_mind_table(r, 0, 1);
    EXPECT_GT(chi_square_independence(joint).p_value, 0.001);
    for (const auto &row : joint) {
        for (auto c : row) EXPECT_NEAR(c / 40000.0, 0.25, 5 * std::sqrt(0.25 * 0.75 / 40000));
    }
    for (const auto &p : mind_probability_table(r)) EXPECT_NEAR(p.empirical, 0.5, 0.01);
}

TEST(ExactMode, MatchesMultinomial) {
    for (const char *w : {"1/2,1/2", "1/3,2/3", "1/4,3/4", "1/4,1/4,1/2"}) {
        auto spec = SystemSpec::parse(w);
        for (std::uint32_t n = 1; n <= 6; ++n) {
            auto fg = fine_grain(spec);
            auto dist = exact_tally_distribution(fg.map, n);
            Rational total = 0;
            for (const auto &[t, p] : dist) {
                EXPECT_EQ(p, tally_pmf(spec, n, t)) << w << " n=" << n;
                total += p;
            }
            EXPECT_EQ(total, 1);
        }
    }
}

TEST(ExactMode, EvolutionPathMatchesKernel) {
    auto fg = fine_grain(SystemSpec::parse("1/4,1/4,1/2"));
    auto dist = exact_tally_distribution(fg.map, 5);
    auto counts = kernels::gas_tally_counts(fg.map.coarse_index(), 3, 5);
    ASSERT_EQ(dist.size(), counts.size());
    for (const auto &[t, c] : counts) EXPECT_EQ(dist.at(t), Rational(BigInt(c), BigInt(1024)));
}

TEST(ExactMode, RunExperimentReportsDistribution) {
    ExperimentScenario sc{SystemSpec::parse("1/3,2/3"), 4, 1, std::nullopt, 0, RunMode::Exact};
    auto r = run_experiment(sc);
    EXPECT_EQ(r.exact_distribution.size(), 5u);
    EXPECT_EQ(r.exact_hulk_probability[0], pow(make_rational(2, 3), 4));
    EXPECT_THROW(exact_tally_distribution(r.map, 20), Error);
}

}  // namespace
}  // namespace bornlab
