// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The fdwfl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Serial reference kernels against their OpenMP counterparts.

#include <vector>

#include <benchmark/benchmark.h>

#include "fdwfl/bench.hpp"
#include "fdwfl/frfeval.hpp"
#include "fdwfl/spectra.hpp"

namespace {

fdwfl::ExperimentConfig record_config(int periods) {
    fdwfl::ExperimentConfig c = fdwfl::ExperimentConfig::case_study(true, 11);
    c.periods = periods;
    return c;
}

Eigen::MatrixXd record_signal(int periods) {
    return fdwfl::multisine(record_config(periods));
}

void BM_DftRecordSerial(benchmark::State& state) {
    const Eigen::MatrixXd s = record_signal(static_cast<int>(state.range(0)));
    const fdwfl::FrequencyGrid grid(20);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fdwfl::dft_record_serial(s, grid));
    }
}

void BM_DftRecordParallel(benchmark::State& state) {
    const Eigen::MatrixXd s = record_signal(static_cast<int>(state.range(0)));
    const fdwfl::FrequencyGrid grid(20);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fdwfl::dft_record(s, grid));
    }
}

struct SweepFixture {
    SweepFixture()
        : rec(fdwfl::run_experiment(fdwfl::benchmark_model(), fdwfl::ExperimentConfig::case_study(false, 3))),
          eval(rec.data, 4),
          uz(Eigen::VectorXcd::Ones(1)) {}
    fdwfl::RecordedExperiment rec;
    fdwfl::FrfEvaluator eval;
    Eigen::VectorXcd uz;
};

void BM_SweepSerial(benchmark::State& state) {
    const SweepFixture f;
    const auto zs = fdwfl::unit_circle_sweep(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fdwfl::sweep_serial(f.eval, zs, f.uz));
    }
}

void BM_SweepParallel(benchmark::State& state) {
    const SweepFixture f;
    const auto zs = fdwfl::unit_circle_sweep(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fdwfl::sweep(f.eval, zs, f.uz));
    }
}

void BM_MonteCarloSerial(benchmark::State& state) {
    const auto cfg = fdwfl::ExperimentConfig::case_study(true, 0);
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(state.range(0)));
    for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = i;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fdwfl::run_noisy_monte_carlo_serial(cfg, seeds));
    }
}

void BM_MonteCarloParallel(benchmark::State& state) {
    const auto cfg = fdwfl::ExperimentConfig::case_study(true, 0);
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(state.range(0)));
    for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = i;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fdwfl::run_noisy_monte_carlo(cfg, seeds));
    }
}

}  // namespace

BENCHMARK(BM_DftRecordSerial)->Arg(1)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DftRecordParallel)->Arg(1)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SweepSerial)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloSerial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
