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

#include "bornlab/branch_state.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "bornlab/frequency.hpp"
#include "bornlab/mmi_unitary.hpp"
#include "bornlab/system_spec.hpp"

namespace bornlab {
namespace {

const LabelSchema kSystemEnv{Field::System, Field::Env};

BranchLabel sys(SystemSymbol s) {
    BranchLabel l;
    l.system = s;
    return l;
}

BranchLabel env(const std::string &tag) {
    BranchLabel l;
    l.env = tag;
    return l;
}

BranchState pair_state(SystemSymbol a, const std::string &ea, Amplitude aa, SystemSymbol b, const std::string &eb,
                       Amplitude ab) {
    BranchLabel la = sys(a), lb = sys(b);
    la.env = ea;
    lb.env = eb;
    return BranchState(kSystemEnv, {{la, aa, std::nullopt}, {lb, ab, std::nullopt}});
}

BranchState random_state(std::mt19937_64 &rng, int branches) {
    std::normal_distribution<double> g;
    std::vector<Branch> bs;
    double norm = 0;
    for (int i = 0; i < branches; ++i) {
        BranchLabel l = sys(i);
        l.env = "e" + std::to_string(i);
        Amplitude a(g(rng), g(rng));
        norm += std::norm(a);
        bs.push_back({l, a, std::nullopt});
    }
    for (auto &b : bs) b.amplitude /= std::sqrt(norm);
    return BranchState(kSystemEnv, bs);
}

TEST(Tensor, UnitStatesMultiply) {
    auto a = unit_state(LabelSchema{Field::System}, sys(1));
    auto b = unit_state(LabelSchema{Field::Env}, env("x"));
    auto t = tensor(a, b);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t.branches()[0].label.system, 1);
    EXPECT_EQ(t.branches()[0].label.env, "x");
    EXPECT_NEAR(std::abs(t.branches()[0].amplitude - Amplitude(1)), 0, 1e-15);
}

TEST(Tensor, Distributes) {
    const double h = std::sqrt(0.5);
    BranchState a(LabelSchema{Field::System}, {{sys(0), h, std::nullopt}, {sys(1), h, std::nullopt}});
    auto t = tensor(a, unit_state(LabelSchema{Field::Env}, env("e")));
    ASSERT_EQ(t.size(), 2u);
    for (const auto &b : t.branches()) {
        EXPECT_EQ(b.label.env, "e");
        EXPECT_NEAR(b.amplitude.real(), h, 1e-15);
    }
}

TEST(Tensor, PreMeasurementState) {
    auto spec = SystemSpec::parse("1/3,2/3");
    const QubitSymbol spade[] = {kSpade};
    auto t = tensor(system_superposition(spec), ready_observer(spade));
    ASSERT_EQ(t.size(), 2u);
    EXPECT_NEAR(t.branches()[0].amplitude.real(), std::sqrt(1.0 / 3), 1e-15);
    EXPECT_NEAR(t.branches()[1].amplitude.real(), std::sqrt(2.0 / 3), 1e-15);
    EXPECT_EQ(t.branches()[0].label.minds.size(), 1u);
    EXPECT_EQ(t.branches()[0].label.minds[0], MindSlot::ready());
}

TEST(Tensor, OverlappingSchemasRejected) {
    auto a = unit_state(LabelSchema{Field::System}, sys(0));
    try {
        tensor(a, a);
        FAIL();
    } catch (const Error &e) {
        EXPECT_STREQ(e.what(), "incompatible label schemas");
    }
}

TEST(Apply, SwapIsInvolution) {
    auto s = pair_state(0, "a", std::sqrt(1.0 / 3), 1, "b", std::sqrt(2.0 / 3));
    auto u = LabelUnitary::swap_system(0, 1);
    EXPECT_NEAR(fidelity(apply(u, apply(u, s)), s), 1.0, 1e-12);
}

TEST(Apply, SymmetricSuperpositionIsFixed) {
    const double h = std::sqrt(0.5);
    BranchState s(LabelSchema{Field::System}, {{sys(0), h, std::nullopt}, {sys(1), h, std::nullopt}});
    EXPECT_TRUE(same_branches(apply(LabelUnitary::swap_system(0, 1), s), s));
}

TEST(Apply, SystemSwapLeavesEnvironmentTags) {
    const double h = std::sqrt(0.5);
    auto s = pair_state(0, "ea", h, 1, "eb", h);
    auto swapped = apply(LabelUnitary::swap_system(0, 1), s);
    EXPECT_NEAR(std::abs(swapped.amplitude([] {
                    BranchLabel l;
                    l.system = 1;
                    l.env = "ea";
                    return l;
                }())),
                h, 1e-15);
    EXPECT_EQ(swapped.amplitude(s.branches()[0].label), Amplitude(0));
}

TEST(Apply, RejectsNonBijection) {
    LabelUnitary::SystemMap m;
    m.mapping = {{0, 1}, {1, 1}};
    EXPECT_THROW(LabelUnitary{m}, Error);
    LabelUnitary::SystemMap p;
    p.mapping = {{0, 1}, {1, 0}};
    p.phases = {{0, Amplitude(2, 0)}};
    EXPECT_THROW(LabelUnitary{p}, Error);
}

TEST(Erase, RecordsKeepBranchesApart) {
    const double h = std::sqrt(0.5);
    auto s = pair_state(0, "Alex_a", h, 1, "Alex_b", h);
    auto e = erase(s, {0, 1});
    ASSERT_EQ(e.size(), 2u);
    for (const auto &b : e.branches()) EXPECT_EQ(b.label.system, kErased);
    EXPECT_NE(e.branches()[0].label.env, e.branches()[1].label.env);
}

TEST(Erase, NoTargetsIsNoOp) {
    auto s = pair_state(0, "a", 0.6, 1, "b", 0.8);
    EXPECT_TRUE(same_branches(erase(s, {7}), s));
}

TEST(Erase, CollisionIsAnError) {
    const double h = std::sqrt(0.5);
    auto s = pair_state(0, "X", h, 1, "X", h);
    try {
        erase(s, {0, 1});
        FAIL();
    } catch (const Error &e) {
        EXPECT_STREQ(e.what(), "non-unitary collision");
    }
}

TEST(InnerProduct, Basics) {
    auto s = pair_state(0, "a", 0.6, 1, "b", 0.8);
    EXPECT_NEAR(std::abs(inner_product(s, s) - Amplitude(1)), 0, 1e-15);
    auto t = pair_state(2, "a", 0.6, 3, "b", 0.8);
    EXPECT_EQ(inner_product(s, t), Amplitude(0));
}

TEST(InnerProduct, SwapThenCounterswapRestoresSchmidtState) {
    const double h = std::sqrt(0.5);
    auto s = pair_state(0, "ea", h, 1, "eb", h);
    auto both = apply(LabelUnitary::swap_env("ea", "eb"), apply(LabelUnitary::swap_system(0, 1), s));
    EXPECT_NEAR(std::abs(inner_product(s, both) - Amplitude(1)), 0, 1e-12);
}

TEST(InnerProduct, SchemaMismatch) {
    auto a = unit_state(LabelSchema{Field::System}, sys(0));
    auto b = unit_state(LabelSchema{Field::Env}, env("x"));
    EXPECT_THROW(inner_product(a, b), Error);
}

TEST(Measure, BeamSplitter) {
    auto s = system_superposition(SystemSpec::parse("1/3,2/3"));
    EXPECT_NEAR(measure_of(s, [](const BranchLabel &) { return true; }), 1.0, 1e-12);
    EXPECT_NEAR(measure_of(s, [](const BranchLabel &l) { return l.system == 0; }), 1.0 / 3, 1e-12);
    EXPECT_NEAR(measure_of(s, [](const BranchLabel &l) { return l.system == 1; }), 2.0 / 3, 1e-12);
    auto exact = exact_measure_of(s, [](const BranchLabel &l) { return l.system == 1; });
    ASSERT_TRUE(exact);
    EXPECT_EQ(*exact, make_rational(2, 3));
}

TEST(Canonical, DuplicatesMergeAndTinyAmplitudesPrune) {
    BranchState s(LabelSchema{Field::System},
                  {{sys(0), 0.5, std::nullopt}, {sys(0), 0.5, std::nullopt}, {sys(1), 1e-14, std::nullopt}});
    ASSERT_EQ(s.size(), 1u);
    EXPECT_NEAR(s.branches()[0].amplitude.real(), 1.0, 1e-15);
}

class BranchProperties : public ::testing::TestWithParam<int> {};

TEST_P(BranchProperties, NormPreservedByEveryUnitaryKind) {
    std::mt19937_64 rng(GetParam());
    auto s = random_state(rng, 2 + GetParam() % 5);
    LabelUnitary::SystemMap phased;
    phased.mapping = {{0, 1}, {1, 0}};
    phased.phases = {{0, std::polar(1.0, 0.7)}, {1, std::polar(1.0, -2.1)}};
    for (const auto &u : {LabelUnitary::swap_system(0, 1), LabelUnitary::swap_env("e0", "e1"), LabelUnitary(phased)}) {
        EXPECT_LT(std::abs(1 - apply(u, s).norm_squared()), 1e-12);
    }
}

TEST_P(BranchProperties, SwapsAreInvolutions) {
    std::mt19937_64 rng(GetParam() + 50);
    auto s = random_state(rng, 2 + GetParam() % 5);
    for (const auto &u : {LabelUnitary::swap_system(0, 1), LabelUnitary::swap_env("e0", "e1")}) {
        EXPECT_GT(fidelity(apply(u, apply(u, s)), s), 1 - 1e-12);
    }
}

TEST_P(BranchProperties, MeasureIsAdditive) {
    std::mt19937_64 rng(GetParam() + 100);
    auto s = random_state(rng, 6);
    auto p1 = [](const BranchLabel &l) { return l.system % 3 == 0; };
    auto p2 = [](const BranchLabel &l) { return l.system % 3 == 1; };
    auto both = [&](const BranchLabel &l) { return p1(l) || p2(l); };
    EXPECT_NEAR(measure_of(s, p1) + measure_of(s, p2), measure_of(s, both), 1e-12);
}

TEST_P(BranchProperties, MergeOrderIsIrrelevant) {
    std::mt19937_64 rng(GetParam() + 200);
    std::normal_distribution<double> g;
    std::vector<Branch> bs;
    for (int i = 0; i < 12; ++i) bs.push_back({sys(i % 4), Amplitude(g(rng), g(rng)), std::nullopt});
    BranchState a(LabelSchema{Field::System}, bs);
    std::shuffle(bs.begin(), bs.end(), rng);
    BranchState b(LabelSchema{Field::System}, bs);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a.branches()[i].label, b.branches()[i].label);
        EXPECT_EQ(a.branches()[i].amplitude, b.branches()[i].amplitude);
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, BranchProperties, ::testing::Range(1, 21));

}  // namespace
}  // namespace bornlab
