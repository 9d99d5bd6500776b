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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "fdwfl/bench.hpp"
#include "fdwfl/errors.hpp"
#include "fdwfl/frfeval.hpp"
#include "test_support.hpp"

using namespace fdwfl;
namespace ft = fdwfl::testing;

namespace {

constexpr double kPi = std::numbers::pi;
const Eigen::VectorXcd kOne = Eigen::VectorXcd::Ones(1);

Eigen::MatrixXcd full_matrix(const Eigen::MatrixXd& a0, const Eigen::MatrixXcd& a1) {
    Eigen::MatrixXcd a(a0.rows(), a0.cols() + 2 * a1.cols());
    a << a0.cast<cplx>(), a1, a1.conjugate();
    return a;
}

void check_svd_invariants(const Eigen::MatrixXd& a0, const Eigen::MatrixXcd& a1) {
    const StructuredSvd f = structured_svd(a0, a1);
    const Eigen::MatrixXcd a = full_matrix(a0, a1);
    const auto n = a.rows();
    const int r = f.rank;
    CHECK((f.U.transpose() * f.U - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
    const Eigen::MatrixXcd v = f.V();
    CHECK((v.adjoint() * v - Eigen::MatrixXcd::Identity(r, r)).cwiseAbs().maxCoeff() < 1e-10);
    const Eigen::MatrixXcd rec = f.U.cast<cplx>() * f.S().leftCols(r).cast<cplx>() * v.adjoint();
    CHECK((rec - a).norm() <= 1e-9 * std::max(1.0, a.norm()));
    // [V0 | V1 | conj(V1)] structure of V^H.
    const Eigen::MatrixXcd vh = v.adjoint();
    CHECK(vh.leftCols(a0.cols()).imag().norm() == 0.0);
    CHECK((vh.rightCols(a1.cols()) - vh.middleCols(a0.cols(), a1.cols()).conjugate()).norm() == 0.0);
    const Eigen::VectorXd ref = singular_values(a);
    const Eigen::Index common = std::min(ref.size(), f.singular_values.size());
    CHECK((f.singular_values.head(common) - ref.head(common)).cwiseAbs().maxCoeff() <
          1e-10 * std::max(1.0, ref(0)));
    for (int i = 1; i < r; ++i) {
        CHECK(f.singular_values(i) <= f.singular_values(i - 1));
    }
    if (r < n) {
        CHECK(f.singular_values.tail(n - r).cwiseAbs().maxCoeff() == 0.0);
    }
}

RecordedExperiment benchmark_record(std::uint64_t seed, bool noisy = false) {
    return run_experiment(benchmark_model(), ExperimentConfig::case_study(noisy, seed));
}

IoSpectrumData io_only(const IoSpectrumData& d) { return {d.U, d.Y}; }

cplx random_offcircle(std::mt19937_64& rng, const Eigen::MatrixXd& a) {
    const Eigen::VectorXcd eig = Eigen::EigenSolver<Eigen::MatrixXd>(a, false).eigenvalues();
    for (;;) {
        const cplx z = std::polar(ft::uniform(rng, 0.5, 2.0), ft::uniform(rng, -kPi, kPi));
        if ((eig.array() - z).abs().minCoeff() > 0.05) {
            return z;
        }
    }
}

}  // namespace

TEST_CASE("structured SVD") {
    std::mt19937_64 rng(21);

    SUBCASE("real specialization") {
        const Eigen::MatrixXd a0 = ft::gauss_matrix(rng, 5, 7);
        const StructuredSvd f = structured_svd(a0, Eigen::MatrixXcd(5, 0));
        const Eigen::VectorXd ref = Eigen::JacobiSVD<Eigen::MatrixXd>(a0).singularValues();
        CHECK((f.singular_values - ref).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(f.rank == 5);
        check_svd_invariants(a0, Eigen::MatrixXcd(5, 0));
    }
    SUBCASE("zero matrix") {
        const StructuredSvd f = structured_svd(Eigen::MatrixXd::Zero(4, 2), Eigen::MatrixXcd::Zero(4, 3));
        CHECK(f.rank == 0);
        CHECK(f.singular_values.cwiseAbs().maxCoeff() == 0.0);
        CHECK((f.U.transpose() * f.U - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-12);
    }
    SUBCASE("random instances") {
        for (int trial = 0; trial < 100; ++trial) {
            check_svd_invariants(ft::gauss_matrix(rng, 6, 3), ft::gauss_cmatrix(rng, 6, 4));
        }
    }
    SUBCASE("rank-deficient instances") {
        for (int trial = 0; trial < 20; ++trial) {
            // Rank 3 block built from a real left factor of width 3.
            const Eigen::MatrixXd l = ft::gauss_matrix(rng, 7, 3);
            const Eigen::MatrixXd a0 = l * ft::gauss_matrix(rng, 3, 2);
            const Eigen::MatrixXcd a1 = l.cast<cplx>() * ft::gauss_cmatrix(rng, 3, 5);
            CHECK(structured_svd(a0, a1).rank == 3);
            check_svd_invariants(a0, a1);
        }
    }
    SUBCASE("row mismatch") {
        CHECK_THROWS_AS(structured_svd(Eigen::MatrixXd::Zero(3, 1), Eigen::MatrixXcd::Zero(4, 1)),
                        DimensionError);
    }
}

TEST_CASE("exact FRF and transient evaluation") {
    std::mt19937_64 rng(22);

    SUBCASE("zero input direction") {
        const RecordedExperiment rec = benchmark_record(1);
        CHECK(evaluate_frf(rec.data, cplx(0.3, 0.8), Eigen::VectorXcd::Zero(1), 4).norm() < 1e-12);
    }
    SUBCASE("benchmark sweep on the unit circle") {
        const RecordedExperiment rec = benchmark_record(2);
        const FrfEvaluator eval(io_only(rec.data), 4, EvalOptions{.nx_hint = 4});
        const StateSpaceModel bm = benchmark_model();
        double worst = 0.0;
        for (const cplx z : unit_circle_sweep(200)) {
            const EvalResult r = eval.evaluate_joint(z, kOne);
            worst = std::max(worst, std::abs(r.Yz(0) - transfer_function(bm, z)(0, 0)));
            worst = std::max(worst, std::abs(r.Tz(0) - transient(bm, rec.dx, z)(0)));
        }
        CHECK(worst < 1e-9);
    }
    SUBCASE("random systems off the unit circle") {
        for (int trial = 0; trial < 10; ++trial) {
            const int nx = 1 + trial % 3;
            const ft::RandomExperiment ex = ft::random_experiment(rng, nx, 12);
            const IoSpectrumData io = io_only(ex.spectra.data);
            const EvalOptions opts{.nx_hint = nx};
            const Eigen::VectorXcd uz = ft::gauss_cmatrix(rng, 1, 1);
            for (const cplx z : {cplx(1.5), cplx(2.0, 1.0), random_offcircle(rng, ex.model.A())}) {
                const Eigen::VectorXcd h = ft::tf_oracle(ex.model, z) * uz;
                const Eigen::VectorXcd t = ft::transient_oracle(ex.model, ex.spectra.dx, z);
                CHECK((evaluate_frf(io, z, uz, nx, opts) - h).norm() < 1e-8 * std::max(1.0, h.norm()));
                CHECK((evaluate_transient(io, z, nx, opts) - t).norm() < 1e-8 * std::max(1.0, t.norm()));
                const EvalResult j = evaluate_joint(io, z, uz, nx, opts);
                CHECK((j.Yz - evaluate_frf(io, z, uz, nx, opts)).norm() < 1e-12 * std::max(1.0, h.norm()));
                CHECK((j.Tz - evaluate_transient(io, z, nx, opts)).norm() < 1e-12 * std::max(1.0, t.norm()));
                CHECK(j.L0 == nx);
                CHECK(j.condition >= 1.0);
            }
        }
    }
    SUBCASE("L0 above the model order still interpolates") {
        const ft::RandomExperiment ex = ft::random_experiment(rng, 2, 14);
        const IoSpectrumData io = io_only(ex.spectra.data);
        const cplx z(0.4, -1.1);
        const Eigen::VectorXcd h = ft::tf_oracle(ex.model, z) * kOne;
        CHECK((evaluate_frf(io, z, kOne, 4, EvalOptions{.nx_hint = 2}) - h).norm() < 1e-8 * std::max(1.0, h.norm()));
    }
    SUBCASE("multi-output model") {
        const ft::RandomExperiment ex = ft::random_experiment(rng, 2, 10, 2);
        const IoSpectrumData io = io_only(ex.spectra.data);
        const cplx z(1.2, 0.3);
        const EvalResult r = evaluate_joint(io, z, kOne, 2, EvalOptions{.nx_hint = 2});
        CHECK((r.Yz - ft::tf_oracle(ex.model, z) * kOne).norm() < 1e-8);
        CHECK((r.Tz - ft::transient_oracle(ex.model, ex.spectra.dx, z)).norm() < 1e-8);
    }
    SUBCASE("periodic data has no transient") {
        const StateSpaceModel model = ft::random_model(rng, 3);
        const Eigen::MatrixXd u = ft::synth_period(ft::random_amplitudes(rng, 12));
        const ExperimentSpectra e =
            experiment_to_spectrum(model, u, periodic_initial_state(model, u), FrequencyGrid(12));
        // Without a transient the phasor channel is not identifiable, so only
        // the FRF path is expected to behave; the transient estimate is zero.
        for (const cplx z : {cplx(1.3), std::polar(1.0, 0.7)}) {
            CHECK(evaluate_transient(io_only(e.data), z, 3, EvalOptions{.nx_hint = 3}).norm() < 1e-9);
        }
    }
}

TEST_CASE("evaluation properties") {
    std::mt19937_64 rng(23);
    const ft::RandomExperiment ex = ft::random_experiment(rng, 3, 12);
    const IoSpectrumData io = io_only(ex.spectra.data);
    const EvalOptions opts{.nx_hint = 3};

    SUBCASE("uniqueness: perturbing Y_z raises the residual") {
        const FrfEvaluator eval(io, 3, opts);
        for (const cplx z : {cplx(1.4, 0.2), std::polar(1.0, 2.0)}) {
            const Eigen::VectorXcd rhs = eval.system().frf_rhs(z, kOne);
            const Eigen::VectorXcd y = eval.evaluate_frf(z, kOne);
            const double base = eval.system().residual(z, rhs, y);
            CHECK(base < 1e-9);
            for (int trial = 0; trial < 5; ++trial) {
                const Eigen::VectorXcd dy = 1e-3 * ft::gauss_cmatrix(rng, 1, 1);
                CHECK(eval.system().residual(z, rhs, y + dy) > base + 1e-6);
            }
        }
    }
    SUBCASE("transient elimination") {
        const Eigen::MatrixXd u = ft::synth_period(ft::random_amplitudes(rng, 12));
        const FrequencyGrid grid(12);
        const ExperimentSpectra e1 = experiment_to_spectrum(ex.model, u, ft::gauss_vector(rng, 3), grid);
        const ExperimentSpectra e2 = experiment_to_spectrum(ex.model, u, 3.0 * ft::gauss_vector(rng, 3), grid);
        for (int i = 0; i < 10; ++i) {
            const cplx z = random_offcircle(rng, ex.model.A());
            const Eigen::VectorXcd a = evaluate_frf(io_only(e1.data), z, kOne, 3, opts);
            const Eigen::VectorXcd b = evaluate_frf(io_only(e2.data), z, kOne, 3, opts);
            CHECK((a - b).norm() < 1e-8 * std::max(1.0, a.norm()));
        }
    }
    SUBCASE("conjugate consistency") {
        for (const cplx z : {cplx(0.7, 0.9), cplx(1.8, -0.4)}) {
            const Eigen::VectorXcd a = evaluate_frf(io, z, kOne, 3, opts);
            const Eigen::VectorXcd b = evaluate_frf(io, std::conj(z), kOne, 3, opts);
            CHECK((a - b.conjugate()).norm() < 1e-9 * std::max(1.0, a.norm()));
        }
    }
    SUBCASE("PE shortfall is reported") {
        const ft::RandomExperiment poor = ft::random_experiment(rng, 3, 6);
        CHECK_THROWS_AS(evaluate_frf(io_only(poor.spectra.data), 1.5, kOne, 3, opts), PeShortfallError);
    }
    SUBCASE("evaluation at a pole is ill-conditioned") {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
        a(0, 0) = 0.5;
        a(1, 1) = -0.3;
        const StateSpaceModel model(a, Eigen::MatrixXd::Ones(2, 1), Eigen::MatrixXd::Ones(1, 2),
                                    Eigen::MatrixXd::Zero(1, 1));
        const Eigen::MatrixXd u = ft::synth_period(ft::random_amplitudes(rng, 10));
        const ExperimentSpectra e = experiment_to_spectrum(model, u, ft::gauss_vector(rng, 2), FrequencyGrid(10));
        CHECK_THROWS_AS(evaluate_frf(io_only(e.data), 0.5, kOne, 2, EvalOptions{.nx_hint = 2}),
                        IllConditionedError);
    }
    SUBCASE("dimension checks") {
        CHECK_THROWS_AS(evaluate_frf(io, 1.5, Eigen::VectorXcd::Ones(2), 3, opts), DimensionError);
    }
}

TEST_CASE("noise-robust estimator") {
    std::mt19937_64 rng(24);

    SUBCASE("reduces to exact evaluation on noise-free data") {
        const RecordedExperiment rec = benchmark_record(3);
        const IoSpectrumData io = io_only(rec.data);
        for (const cplx z : {cplx(1.0), std::polar(1.0, 1.1), cplx(1.6, -0.3), cplx(0.2, 0.5)}) {
            const EvalResult a = estimate_noisy(io, z, kOne, 4);
            const EvalResult b = evaluate_joint(io, z, kOne, 4);
            CHECK((a.Yz - b.Yz).norm() < 1e-8);
            CHECK((a.Tz - b.Tz).norm() < 1e-8);
        }
        for (int trial = 0; trial < 5; ++trial) {
            const ft::RandomExperiment ex = ft::random_experiment(rng, 2, 12);
            const IoSpectrumData d = io_only(ex.spectra.data);
            const cplx z = random_offcircle(rng, ex.model.A());
            const EvalResult a = estimate_noisy(d, z, kOne, 2);
            const EvalResult b = evaluate_joint(d, z, kOne, 2, EvalOptions{.nx_hint = 2});
            CHECK((a.Yz - b.Yz).norm() < 1e-8 * std::max(1.0, b.Yz.norm()));
            CHECK((a.Tz - b.Tz).norm() < 1e-8 * std::max(1.0, b.Tz.norm()));
        }
    }
    SUBCASE("noisy benchmark run stays within the bound") {
        const RecordedExperiment rec = benchmark_record(4, true);
        const NoisyEstimator est(rec.data, 4);
        const StateSpaceModel bm = benchmark_model();
        for (const cplx z : unit_circle_sweep(100)) {
            const EvalResult r = est.evaluate_joint(z, kOne);
            CHECK(std::abs(r.Yz(0) - transfer_function(bm, z)(0, 0)) < kNoisyErrorBound);
            CHECK(std::abs(r.Tz(0) - transient(bm, rec.dx, z)(0)) < kNoisyErrorBound);
        }
    }
    SUBCASE("rank deficiency is flagged") {
        const FrequencyGrid g(12);
        const IoSpectrumData zero(Spectrum::zeros(g, 1), Spectrum::zeros(g, 1));
        CHECK_THROWS_AS(NoisyEstimator(zero, 3), RankDeficiencyError);
        CHECK_THROWS_AS(NoisyEstimator(zero, 0), DimensionError);
    }
}

TEST_CASE("rank heuristic") {
    SUBCASE("benchmark noise-free data") {
        const HeuristicRank h = rank_heuristic_check(benchmark_record(5).data, 4, 4);
        CHECK(h.expected == 14);
        CHECK(h.observed == 14);
        CHECK(h.gap < 1e-9);
    }
    SUBCASE("zero input and output") {
        const FrequencyGrid g(20);
        const IoSpectrumData zero(Spectrum::zeros(g, 1), Spectrum::zeros(g, 1));
        const HeuristicRank h = rank_heuristic_check(zero, 4, 4);
        // Only the phasor channel, which is part of the construction and not
        // of the data, contributes.
        CHECK(h.observed == 5);
    }
    SUBCASE("noisy data shows a gap after the expected rank") {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const HeuristicRank h = rank_heuristic_check(benchmark_record(seed, true).data, 4, 4);
            CHECK(h.observed == 15);
            CHECK(h.gap < 0.2);
            // The noise floor itself is flat: no comparable drop further down.
            const auto& s = h.singular_values;
            CHECK(s(13) / s(12) > h.gap);
        }
    }
}
