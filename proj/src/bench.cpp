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

#include "fdwfl/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "fdwfl/errors.hpp"
#include "fdwfl/io.hpp"
#include "fdwfl/parallel.hpp"

namespace fdwfl {

StateSpaceModel benchmark_model() {
    const auto& b = kBenchmarkNumerator;
    const auto& a = kBenchmarkDenominator;
    constexpr int n = 4;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, 1);
    Eigen::MatrixXd C(1, n);
    Eigen::MatrixXd D(1, 1);
    for (int i = 0; i < n; ++i) {
        A(0, i) = -a[static_cast<std::size_t>(i + 1)];
        // Strictly proper remainder after removing the feedthrough b0.
        C(0, i) = b[static_cast<std::size_t>(i + 1)] - b[0] * a[static_cast<std::size_t>(i + 1)];
    }
    for (int i = 1; i < n; ++i) {
        A(i, i - 1) = 1.0;
    }
    B(0, 0) = 1.0;
    D(0, 0) = b[0];
    return {A, B, C, D};
}

ExperimentConfig ExperimentConfig::case_study(bool noisy, std::uint64_t seed) {
    ExperimentConfig c;
    c.seed = seed;
    if (noisy) {
        c.periods = 100;
        c.snr = kCaseStudySnr;
    }
    return c;
}

std::vector<int> ExperimentConfig::bins() const {
    if (excited_bins) {
        return *excited_bins;
    }
    std::vector<int> odd;
    for (int k = 1; k < M; k += 2) {
        odd.push_back(k);
    }
    return odd;
}

std::vector<cplx> ExperimentConfig::bin_amplitudes() const {
    if (!amplitudes.empty()) {
        return amplitudes;
    }
    return std::vector<cplx>(bins().size(), cplx(1.0, 0.0));
}

void ExperimentConfig::validate() const {
    if (M < 1) {
        throw DimensionError("config: M must be >= 1");
    }
    if (periods < 1) {
        throw DimensionError("config: periods must be >= 1");
    }
    if (L0 < 1) {
        throw DimensionError("config: L0 must be >= 1");
    }
    if (sweep_points < 1) {
        throw DimensionError("config: sweep_points must be >= 1");
    }
    if (snr && !(*snr > 0.0)) {
        throw DimensionError("config: snr must be positive");
    }
    for (const int k : bins()) {
        if (k < 0 || k >= M) {
            throw DimensionError("config: excited bin " + std::to_string(k) + " outside [0, " +
                                 std::to_string(M - 1) + "]");
        }
    }
    if (!amplitudes.empty() && amplitudes.size() != bins().size()) {
        throw DimensionError("config: need one amplitude per excited bin");
    }
}

Eigen::MatrixXd multisine(const ExperimentConfig& config) {
    config.validate();
    const FrequencyGrid grid(config.M);
    Eigen::MatrixXcd values = Eigen::MatrixXcd::Zero(1, config.M);
    const auto bins = config.bins();
    const auto amps = config.bin_amplitudes();
    for (std::size_t i = 0; i < bins.size(); ++i) {
        values(0, bins[i]) = amps[i];
    }
    const Eigen::MatrixXd period = inverse_dft(Spectrum(grid, std::move(values)));
    Eigen::MatrixXd out(1, period.cols() * config.periods);
    for (int p = 0; p < config.periods; ++p) {
        out.middleCols(p * period.cols(), period.cols()) = period;
    }
    return out;
}

Eigen::VectorXd draw_initial_state(int nx, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd x0(nx);
    for (int i = 0; i < nx; ++i) {
        x0(i) = normal(rng);
    }
    return x0;
}

RecordedExperiment run_experiment(const StateSpaceModel& model, const ExperimentConfig& config,
                                  const Eigen::VectorXd& x0, std::mt19937_64& rng) {
    if (model.nu() != 1) {
        throw DimensionError("multisine experiments drive single-input models only");
    }
    const FrequencyGrid grid(config.M);
    const Eigen::MatrixXd u = multisine(config);
    const SimulationResult sim = simulate(model, u, x0);
    const auto n = u.cols();

    Eigen::MatrixXd y = sim.outputs;
    double noise_std = 0.0;
    if (config.snr && std::isfinite(*config.snr)) {
        const double rms = std::sqrt(sim.outputs.squaredNorm() / static_cast<double>(y.size()));
        noise_std = rms / *config.snr;
        std::normal_distribution<double> normal(0.0, noise_std);
        for (Eigen::Index j = 0; j < y.cols(); ++j) {
            for (Eigen::Index i = 0; i < y.rows(); ++i) {
                y(i, j) += normal(rng);
            }
        }
    }

    // Whole-record transform at the grid bins, divided by the period count so
    // the input spectrum equals the per-period multisine amplitudes. The
    // scaling is linear, so the data satisfies the transient relations with
    // the boundary term (x_0 - x_{2MP}) / P.
    const double scale = 1.0 / static_cast<double>(config.periods);
    auto transform = [&](const Eigen::MatrixXd& s) {
        const Spectrum raw = dft_record(s, grid);
        return Spectrum(grid, raw.values() * scale);
    };
    Spectrum uu = transform(u);
    Spectrum xx = transform(sim.states.leftCols(n));
    Spectrum yc = transform(sim.outputs);
    Spectrum ym = noise_std > 0.0 ? transform(y) : yc;
    IoSpectrumData clean(uu, std::move(yc), xx);
    IoSpectrumData measured(std::move(uu), std::move(ym), std::move(xx));
    Eigen::VectorXd dx = (x0 - sim.states.col(n)) * scale;
    return {std::move(measured), std::move(clean), x0, std::move(dx), noise_std};
}

RecordedExperiment run_experiment(const StateSpaceModel& model, const ExperimentConfig& config) {
    std::mt19937_64 rng(config.seed);
    const Eigen::VectorXd x0 = draw_initial_state(model.nx(), rng);
    return run_experiment(model, config, x0, rng);
}

std::vector<cplx> unit_circle_sweep(int count) {
    std::vector<cplx> zs(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        zs[static_cast<std::size_t>(i)] = std::polar(1.0, std::numbers::pi * i / count);
    }
    return zs;
}

StateSpaceModel load_configured_model(const ExperimentConfig& config) {
    if (config.model_path.empty()) {
        return benchmark_model();
    }
    return load_model_json(config.model_path);
}

namespace {

template <typename Evaluator>
void fill_sweep(CaseStudyReport& report, const StateSpaceModel& model, const Evaluator& eval,
                const Eigen::VectorXd& dx, int points) {
    const std::vector<cplx> zs = unit_circle_sweep(points);
    const Eigen::VectorXcd uz = Eigen::VectorXcd::Ones(1);
    const std::vector<EvalResult> results = sweep(eval, zs, uz);
    report.sweep.resize(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) {
        SweepPoint& p = report.sweep[i];
        p.omega = std::numbers::pi * static_cast<double>(i) / points;
        p.H = transfer_function(model, zs[i])(0, 0);
        p.T = transient(model, dx, zs[i])(0);
        p.Yz = results[i].Yz(0);
        p.Tz = results[i].Tz(0);
        p.frf_error = std::abs(p.H - p.Yz);
        p.transient_error = std::abs(p.T - p.Tz);
        if (p.frf_error > report.max_frf_error || i == 0) {
            report.max_frf_error = p.frf_error;
            report.worst_frf_omega = p.omega;
        }
        if (p.transient_error > report.max_transient_error || i == 0) {
            report.max_transient_error = p.transient_error;
            report.worst_transient_omega = p.omega;
        }
    }
}

void write_outputs(const std::filesystem::path& dir, const RecordedExperiment& rec,
                   const CaseStudyReport& report) {
    std::filesystem::create_directories(dir);
    save_spectrum_csv(dir / "U.csv", rec.data.U);
    save_spectrum_csv(dir / "Y.csv", rec.data.Y);
    if (rec.clean.X) {
        save_spectrum_csv(dir / "X.csv", *rec.clean.X);
    }
    {
        std::ofstream os(dir / "errors.csv");
        write_sweep_csv(os, report.sweep);
    }
    std::ofstream os(dir / "report.json");
    os << to_json(report).dump(2) << '\n';
}

std::string at_omega(const std::string& what, double err, double omega) {
    std::ostringstream os;
    os << what << " " << format_double(err) << " at omega = " << format_double(omega);
    return os.str();
}

}  // namespace

CaseStudyReport run_noisefree_case_study(const ExperimentConfig& config,
                                         const std::optional<std::filesystem::path>& out_dir) {
    ExperimentConfig cfg = config;
    cfg.snr.reset();
    cfg.validate();
    const StateSpaceModel model = load_configured_model(cfg);
    const RecordedExperiment rec = run_experiment(model, cfg);

    CaseStudyReport report;
    report.error_bound = kNoiseFreeErrorBound;
    const FrfEvaluator eval(rec.data, cfg.L0);
    fill_sweep(report, model, eval, rec.dx, cfg.sweep_points);

    // Measured output at bin k is H U_k + T: pure transient where U_k = 0.
    const auto& grid = rec.data.grid();
    for (int k = 0; k < grid.size(); ++k) {
        const cplx z = grid.phasor(k);
        const cplx uk = rec.data.U.values()(0, k);
        const cplx yk = rec.data.Y.values()(0, k);
        const cplx expected = transfer_function(model, z)(0, 0) * uk + transient(model, rec.dx, z)(0);
        const double err = std::abs(yk - expected) / std::max(1.0, std::abs(yk));
        double& slot = std::abs(uk) > 0.0 ? report.odd_bin_error : report.even_bin_error;
        slot = std::max(slot, err);
    }

    report.passed = true;
    if (!(report.max_frf_error < kNoiseFreeErrorBound)) {
        report.passed = false;
        report.failure = at_omega("FRF error", report.max_frf_error, report.worst_frf_omega);
    } else if (!(report.max_transient_error < kNoiseFreeErrorBound)) {
        report.passed = false;
        report.failure =
            at_omega("transient error", report.max_transient_error, report.worst_transient_omega);
    } else if (!(report.even_bin_error < kBinDecompositionTol) ||
               !(report.odd_bin_error < kBinDecompositionTol)) {
        report.passed = false;
        report.failure = "measured output does not decompose into H U_k + T at the grid bins";
    }
    if (out_dir) {
        write_outputs(*out_dir, rec, report);
    }
    return report;
}

CaseStudyReport run_noisy_case_study(const ExperimentConfig& config,
                                     const std::optional<std::filesystem::path>& out_dir) {
    config.validate();
    const StateSpaceModel model = load_configured_model(config);
    const RecordedExperiment rec = run_experiment(model, config);

    CaseStudyReport report;
    report.error_bound = kNoisyErrorBound;
    report.noise_std = rec.noise_std;
    const NoisyEstimator est(rec.data, config.L0);
    fill_sweep(report, model, est, rec.dx, config.sweep_points);

    report.passed = true;
    if (!(report.max_frf_error < kNoisyErrorBound)) {
        report.passed = false;
        report.failure = at_omega("FRF error", report.max_frf_error, report.worst_frf_omega);
    } else if (!(report.max_transient_error < kNoisyErrorBound)) {
        report.passed = false;
        report.failure =
            at_omega("transient error", report.max_transient_error, report.worst_transient_omega);
    }
    if (out_dir) {
        write_outputs(*out_dir, rec, report);
    }
    return report;
}

std::vector<CaseStudyReport> run_noisy_monte_carlo(const ExperimentConfig& config,
                                                   const std::vector<std::uint64_t>& seeds) {
    std::vector<CaseStudyReport> reports(seeds.size());
    parallel_for(static_cast<long>(seeds.size()), [&](long i) {
        ExperimentConfig c = config;
        c.seed = seeds[static_cast<std::size_t>(i)];
        reports[static_cast<std::size_t>(i)] = run_noisy_case_study(c);
    });
    return reports;
}

std::vector<CaseStudyReport> run_noisy_monte_carlo_serial(const ExperimentConfig& config,
                                                          const std::vector<std::uint64_t>& seeds) {
    std::vector<CaseStudyReport> reports;
    reports.reserve(seeds.size());
    for (const std::uint64_t seed : seeds) {
        ExperimentConfig c = config;
        c.seed = seed;
        reports.push_back(run_noisy_case_study(c));
    }
    return reports;
}

}  // namespace fdwfl
