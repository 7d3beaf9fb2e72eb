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

// Acceptance run: one line per criterion, nonzero exit if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "bornlab/envariance.hpp"
#include "bornlab/frequency.hpp"
#include "bornlab/mmi_stochastic.hpp"
#include "bornlab/mmi_unitary.hpp"
#include "bornlab/stats.hpp"
#include "random_specs.hpp"

using namespace bornlab;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string &what) {
        if (!cond && ok) {
            ok = false;
            detail << "first failure: " << what << "; ";
        }
    }
};

int failures = 0;

void criterion(int id, const char *title, double budget_seconds, const std::function<void(Outcome &)> &body) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception &e) {
        out.ok = false;
        out.detail << "exception: " << e.what() << "; ";
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed < budget_seconds;
    const bool pass = out.ok && in_time;
    failures += !pass;
    std::printf("[%s] %2d %s (%.3f s of %.0f s)%s%s\n", pass ? "PASS" : "FAIL", id, title, elapsed, budget_seconds,
                in_time ? "" : " over budget;", out.detail.str().empty() ? "" : (" " + out.detail.str()).c_str());
}

// Binomial(n, 1/2) tail by repeated halving convolution; shares nothing with the library's code path.
double half_tail(std::uint32_t n, std::int64_t eps_num, std::int64_t eps_den) {
    std::vector<double> row{1.0};
    for (std::uint32_t i = 0; i < n; ++i) {
        std::vector<double> next(row.size() + 1, 0.0);
        for (std::size_t k = 0; k < row.size(); ++k) {
            next[k] += 0.5 * row[k];
            next[k + 1] += 0.5 * row[k];
        }
        row = std::move(next);
    }
    double tail = 0;
    for (std::uint32_t k = 0; k <= n; ++k) {
        // |k/n - 1/2| > eps, decided in integers so the boundary tally is not misjudged.
        if (std::abs(2 * static_cast<std::int64_t>(k) - n) * eps_den > 2 * eps_num * n) tail += row[k];
    }
    return tail;
}

BranchState record_state(const std::vector<Amplitude> &amps) {
    std::vector<Branch> bs;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        BranchLabel l;
        l.system = static_cast<SystemSymbol>(i);
        l.env = "Alex_" + std::to_string(i);
        bs.push_back({l, amps[i], std::nullopt});
    }
    return BranchState(LabelSchema{Field::System, Field::Env}, bs);
}

std::vector<Amplitude> normalized(std::vector<Amplitude> amps) {
    double norm = 0;
    for (auto a : amps) norm += std::norm(a);
    for (auto &a : amps) a /= std::sqrt(norm);
    return amps;
}

}  // namespace

int main() {
    criterion(1, "frequency-operator expectation equals the weight", 30, [](Outcome &o) {
        std::mt19937_64 rng(1);
        for (int i = 0; i < 100; ++i) {
            auto exact = testing::random_exact_spec(rng, 2 + i % 2, 30);
            auto floating = testing::to_floating(exact);
            for (std::uint32_t n = 1; n <= 12; ++n) {
                for (OutcomeIndex a = 0; a < exact.size(); ++a) {
                    auto e = frequency_expectation(exact, n, a);
                    o.require(e.exact && *e.exact == exact.exact_weight(a) && !e.closed_form, "rational mode");
                    auto f = frequency_expectation(floating, n, a);
                    o.require(!f.closed_form && std::abs(f.value - floating.weight(a)) < 1e-12, "float mode");
                }
            }
        }
        o.detail << "100 specs, N=1..12";
    });

    criterion(2, "maverick measure decays and matches the binomial tail", 5, [](Outcome &o) {
        auto spec = SystemSpec::parse("1/2,1/2");
        const double v20 = maverick_measure(spec, 20, 0, 0.05).value;
        const double v100 = maverick_measure(spec, 100, 0, 0.05).value;
        const double v1000 = maverick_measure(spec, 1000, 0, 0.05).value;
        const double oracle = half_tail(1000, 1, 20);
        o.require(v1000 < v100 && v100 < v20, "ordering");
        o.require(std::abs(v1000 - oracle) < 1e-12, "oracle agreement");
        o.detail << "v20=" << v20 << " v100=" << v100 << " v1000=" << v1000 << " |diff|=" << std::abs(v1000 - oracle);
    });

    criterion(3, "two-mind alternatives follow 1/9, 2/9, 2/9, 4/9", 5, [](Outcome &o) {
        auto spec = SystemSpec::parse("1/3,2/3");
        SeededRng rng(2026);
        std::vector<std::uint64_t> counts(4, 0);
        for (std::uint64_t t = 0; t < 100000; ++t) {
            auto h = sample_mind_outcomes(spec, 2, rng, t);
            ++counts[2 * h[0] + h[1]];
        }
        const std::vector<double> expected{1.0 / 9, 2.0 / 9, 2.0 / 9, 4.0 / 9};
        auto chi = chi_square_fit(counts, expected);
        o.require(chi.p_value > 0.001, "chi-square p-value");
        o.detail << "chi2=" << chi.statistic << " p=" << chi.p_value;
    });

    criterion(4, "relative fluctuation scales as 1/sqrt(N)", 30, [](Outcome &o) {
        auto spec = SystemSpec::parse("1/3,2/3");
        std::vector<double> observed;
        for (std::uint64_t n : {100u, 400u, 1600u}) {
            auto tallies = sample_minds_trials(spec, n, 10000, SeededRng(4000 + n));
            std::vector<double> ups;
            for (const auto &t : tallies) ups.push_back(static_cast<double>(t[0]));
            auto m = moments(ups);
            const double rel = m.stddev / m.mean;
            const double predicted = std::sqrt(2.0) / std::sqrt(static_cast<double>(n));
            o.require(std::abs(rel - predicted) / predicted < 0.10, "prediction at N=" + std::to_string(n));
            observed.push_back(rel);
            o.detail << "N=" << n << ":" << rel << " ";
        }
        for (std::size_t i = 0; i + 1 < observed.size(); ++i) {
            const double ratio = observed[i + 1] / observed[i];
            o.require(std::abs(ratio - 0.5) / 0.5 < 0.10, "quadrupling ratio");
        }
    });

    criterion(5, "Schmidt states are envariant, the asymmetric state is not", 1, [](Outcome &o) {
        for (std::uint32_t t = 2; t <= 8; ++t) {
            auto s = schmidt_state(t);
            for (SystemSymbol a = 0; a < static_cast<SystemSymbol>(t); ++a) {
                for (SystemSymbol b = a + 1; b < static_cast<SystemSymbol>(t); ++b) {
                    o.require(std::abs(verify_envariance(s, a, b).fidelity - 1) < 1e-12, "Schmidt fidelity");
                }
            }
        }
        const double f = verify_envariance(observer_record_state(SystemSpec::parse("1/3,2/3")), 0, 1).fidelity;
        o.require(f < 1 - 1e-6, "asymmetric fidelity below one");
        o.require(std::abs(f - 8.0 / 9) < 1e-12, "asymmetric fidelity is 8/9");
        o.detail << "asymmetric fidelity=" << f;
    });

    criterion(6, "fine-graining round trip returns the weights exactly", 5, [](Outcome &o) {
        std::mt19937_64 rng(6);
        for (int i = 0; i < 100; ++i) {
            auto spec = testing::random_exact_spec(rng, 2 + i % 4, 100);
            auto fg = fine_grain(spec);
            o.require(fg.map.levels() <= 100, "T <= 100");
            auto back = coarse_probability(fg.map, equiprobability_from_symmetry(fg.state));
            o.require(back == spec.exact_weights(), "round trip");
        }
        o.detail << "100 specs";
    });

    criterion(7, "erasure commutes with counterswap; equality verdict iff equal amplitudes", 1, [](Outcome &o) {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> mag(0.05, 1.0);
        std::uniform_real_distribution<double> phase(0, 2 * M_PI);
        for (int i = 0; i < 100; ++i) {
            const double pair = mag(rng);
            std::vector<Amplitude> amps{std::polar(pair, phase(rng)), std::polar(pair, phase(rng))};
            for (int k = 0; k < i % 4; ++k) amps.push_back(std::polar(mag(rng), phase(rng)));
            auto w = wallace_chain(record_state(normalized(amps)), 0, 1);
            o.require(same_branches(w.erased, w.erased_counterswapped, 1e-12), "erased states identical");
            o.require(w.equal_probabilities, "verdict on equal amplitudes");
        }
        for (int i = 0; i < 100; ++i) {
            double a = mag(rng), b = mag(rng);
            if (std::abs(a - b) < 1e-3) b += 0.01;
            auto w = wallace_chain(record_state(normalized({a, b})), 0, 1);
            o.require(!w.equal_probabilities, "verdict on unequal amplitudes");
        }
        o.detail << "100 equal-pair states, 100 unequal";
    });

    criterion(8, "unitary many-minds fractions converge to the weights", 60, [](Outcome &o) {
        ExperimentScenario sym{SystemSpec::parse("1/2,1/2"), 10000, 100, std::nullopt, 20260101, RunMode::MonteCarlo};
        auto r = run_experiment(sym);
        o.require(std::abs(r.mean_fraction[0] - 0.5) <= 0.015, "symmetric band");
        o.require(r.hulk_events == 0, "no hulks");
        o.detail << "symmetric mean=" << r.mean_fraction[0] << " hulks=" << r.hulk_events << "; ";

        ExperimentScenario asym{SystemSpec::parse("1/3,2/3"), 9000, 100, 3, 7, RunMode::MonteCarlo};
        auto q = run_experiment(asym);
        for (std::size_t a = 0; a < 2; ++a) {
            const double w = to_double(q.theoretical[a]);
            const double band = 3 * std::sqrt(w * (1 - w) / 9000);
            o.require(std::abs(q.mean_fraction[a] - w) <= band, "asymmetric band");
        }
        o.detail << "asymmetric means=(" << q.mean_fraction[0] << ", " << q.mean_fraction[1] << ")";
    });

    criterion(9, "unitary tally law equals the multinomial law", 5, [](Outcome &o) {
        int cases = 0;
        for (std::uint32_t t = 1; t <= 4; ++t) {
            // Every composition of T into positive group sizes.
            for (std::uint32_t mask = 0; mask < (1u << (t - 1)); ++mask) {
                std::vector<std::uint32_t> sizes{1};
                for (std::uint32_t bit = 0; bit + 1 < t; ++bit) {
                    if (mask >> bit & 1) {
                        sizes.push_back(1);
                    } else {
                        ++sizes.back();
                    }
                }
                auto map = FineGrainMap::from_sizes(sizes);
                std::vector<Rational> weights;
                for (auto s : sizes) weights.push_back(make_rational(s, t));
                auto spec = SystemSpec::exact({}, weights);
                for (std::uint32_t n = 1; n <= 6; ++n) {
                    for (const auto &[tally, p] : exact_tally_distribution(map, n)) {
                        o.require(p == tally_pmf(spec, n, tally), "pmf equality");
                    }
                    ++cases;
                }
            }
        }
        o.detail << cases << " (partition, N) cases";
    });

    criterion(10, "history support bound is 2^10 for ten fair repetitions", 1, [](Outcome &o) {
        auto bound = history_support_bound(SystemSpec::parse("1/2,1/2"), History{0, 1, 1, 0, 0, 1, 0, 1, 1, 1});
        o.require(bound == 1024, "bound");
        o.detail << "bound=" << bound;
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
