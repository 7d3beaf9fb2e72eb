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

// Serial reference kernels against their OpenMP counterparts.
// Thread count follows BORN_LAB_THREADS.

#include <benchmark/benchmark.h>

#include "bornlab/kernels.hpp"
#include "bornlab/mmi_unitary.hpp"
#include "bornlab/system_spec.hpp"

namespace {

using namespace bornlab;

const std::vector<BigInt> kNumerators{1, 2, 3};
const std::vector<double> kWeights{1.0 / 6, 1.0 / 3, 1.0 / 2};

void BM_HistoryBucketsExact(benchmark::State &state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::history_buckets(kNumerators, n));
}

void BM_HistoryBucketsExactSerial(benchmark::State &state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::history_buckets_serial(kNumerators, n));
}

void BM_HistoryBucketsFloat(benchmark::State &state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::history_buckets(std::span<const double>(kWeights), n));
}

void BM_HistoryBucketsFloatSerial(benchmark::State &state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::history_buckets_serial(std::span<const double>(kWeights), n));
    }
}

kernels::Categorical third() {
    return kernels::Categorical{.exact = true, .cumulative_numerators = {1, 3}, .denominator = 3, .cumulative = {}};
}

void BM_SampleTallies(benchmark::State &state) {
    const auto dist = third();
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::sample_tallies(dist, static_cast<std::uint64_t>(state.range(0)), 1000,
                                                         SeededRng(1)));
    }
}

void BM_SampleTalliesSerial(benchmark::State &state) {
    const auto dist = third();
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::sample_tallies_serial(dist, static_cast<std::uint64_t>(state.range(0)),
                                                                1000, SeededRng(1)));
    }
}

void BM_SampleGas(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::sample_gas_columns(3, static_cast<std::uint64_t>(state.range(0)), 100,
                                                             SeededRng(1)));
    }
}

void BM_SampleGasSerial(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::sample_gas_columns_serial(3, static_cast<std::uint64_t>(state.range(0)),
                                                                    100, SeededRng(1)));
    }
}

const std::vector<std::uint32_t> kGroupOf{0, 1, 1, 2};

void BM_GasTallyCounts(benchmark::State &state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::gas_tally_counts(kGroupOf, 3, n));
}

void BM_GasTallyCountsSerial(benchmark::State &state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::gas_tally_counts_serial(kGroupOf, 3, n));
}

ExperimentScenario convergence_scenario(std::int64_t minds) {
    return ExperimentScenario{SystemSpec::parse("1/3,2/3"), static_cast<std::uint64_t>(minds), 100, std::nullopt, 7,
                              RunMode::MonteCarlo};
}

void BM_RunExperiment(benchmark::State &state) {
    const auto sc = convergence_scenario(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_experiment(sc));
}

void BM_RunExperimentSerial(benchmark::State &state) {
    const auto sc = convergence_scenario(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_experiment_serial(sc));
}

}  // namespace

BENCHMARK(BM_HistoryBucketsExact)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HistoryBucketsExactSerial)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HistoryBucketsFloat)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HistoryBucketsFloatSerial)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleTallies)->Arg(100)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleTalliesSerial)->Arg(100)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleGas)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleGasSerial)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GasTallyCounts)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GasTallyCountsSerial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunExperiment)->Arg(9000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunExperimentSerial)->Arg(9000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
