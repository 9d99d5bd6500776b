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

// OpenMP kernels against their serial references.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <stdexcept>

#include "fdwfl/bench.hpp"
#include "fdwfl/frfeval.hpp"
#include "fdwfl/parallel.hpp"
#include "test_support.hpp"

using namespace fdwfl;
namespace ft = fdwfl::testing;

TEST_CASE("parallel_for visits every index once and forwards exceptions") {
    std::vector<std::atomic<int>> hits(257);
    parallel_for(257, [&](long i) { hits[static_cast<std::size_t>(i)]++; });
    for (const auto& h : hits) {
        CHECK(h.load() == 1);
    }
    CHECK_THROWS_AS(parallel_for(50, [](long i) {
                        if (i == 17) {
                            throw std::runtime_error("boom");
                        }
                    }),
                    std::runtime_error);
    CHECK(max_threads() >= 1);
}

TEST_CASE("record DFT: parallel equals serial") {
    std::mt19937_64 rng(51);
    for (const int periods : {1, 4, 25}) {
        const Eigen::MatrixXd s = ft::gauss_matrix(rng, 3, 2 * 9 * periods);
        const FrequencyGrid grid(9);
        CHECK((dft_record(s, grid).values() - dft_record_serial(s, grid).values()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("z-sweep: parallel equals serial") {
    const RecordedExperiment rec = run_experiment(benchmark_model(), ExperimentConfig::case_study(false, 4));
    const FrfEvaluator eval(rec.data, 4);
    const auto zs = unit_circle_sweep(64);
    const Eigen::VectorXcd uz = Eigen::VectorXcd::Ones(1);
    const auto par = sweep(eval, zs, uz);
    const auto ser = sweep_serial(eval, zs, uz);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].Yz == ser[i].Yz);
        CHECK(par[i].Tz == ser[i].Tz);
        CHECK(par[i].condition == ser[i].condition);
    }

    const RecordedExperiment noisy = run_experiment(benchmark_model(), ExperimentConfig::case_study(true, 4));
    const NoisyEstimator est(noisy.data, 4);
    const auto npar = sweep(est, zs, uz);
    const auto nser = sweep_serial(est, zs, uz);
    for (std::size_t i = 0; i < npar.size(); ++i) {
        CHECK(npar[i].Yz == nser[i].Yz);
        CHECK(npar[i].Tz == nser[i].Tz);
    }
}

TEST_CASE("Monte Carlo: parallel equals serial") {
    ExperimentConfig c = ExperimentConfig::case_study(true, 0);
    c.sweep_points = 40;
    const std::vector<std::uint64_t> seeds{3, 1, 4, 1, 5, 9};
    const auto par = run_noisy_monte_carlo(c, seeds);
    const auto ser = run_noisy_monte_carlo_serial(c, seeds);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].max_frf_error == ser[i].max_frf_error);
        CHECK(par[i].max_transient_error == ser[i].max_transient_error);
        CHECK(par[i].noise_std == ser[i].noise_std);
    }
    CHECK(par[1].max_frf_error == par[3].max_frf_error);
}
