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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fdwfl/frfeval.hpp"
#include "fdwfl/lti.hpp"

namespace fdwfl {

/// Fourth-order SISO benchmark, coefficients in descending powers of z.
inline constexpr std::array<double, 5> kBenchmarkNumerator{0.9626, 0.4095, -0.9718, 0.26, 0.8618};
inline constexpr std::array<double, 5> kBenchmarkDenominator{1.0, -0.3306, -0.5025, -0.2347,
                                                             0.7925};

/// Controllable canonical realization of the benchmark transfer function.
StateSpaceModel benchmark_model();

/// Amplitude ratio 20 (26.02 dB) on the output channel.
inline constexpr double kCaseStudySnr = 20.0;
/// -10 dB error bound for the noisy reproduction.
inline constexpr double kNoisyErrorBound = 0.31622776601683794;
inline constexpr double kNoiseFreeErrorBound = 1e-6;
inline constexpr double kBinDecompositionTol = 1e-9;

struct ExperimentConfig {
    int M = 20;
    /// Excited bins; unset means every odd k, an empty list excites nothing.
    std::optional<std::vector<int>> excited_bins;
    /// One amplitude per excited bin; empty means 1 at each.
    std::vector<cplx> amplitudes;
    int periods = 1;
    /// Output amplitude SNR; unset or infinite disables noise.
    std::optional<double> snr;
    std::uint64_t seed = 0;
    /// Model JSON file; empty selects the benchmark model.
    std::string model_path;
    /// Window parameter L0 and the model-order guess used by the noisy estimator.
    int L0 = 4;
    int sweep_points = 400;

    /// Noise-free (one period) or noisy (100 periods, SNR 20) reproduction setup.
    static ExperimentConfig case_study(bool noisy, std::uint64_t seed);

    [[nodiscard]] std::vector<int> bins() const;
    [[nodiscard]] std::vector<cplx> bin_amplitudes() const;
    void validate() const;
};

/// One 2M-sample multisine period from the configured bins, repeated P times (1 x 2MP).
Eigen::MatrixXd multisine(const ExperimentConfig& config);

/// Initial state from a seeded standard normal.
Eigen::VectorXd draw_initial_state(int nx, std::mt19937_64& rng);

struct RecordedExperiment {
    IoSpectrumData data;    // measured spectra; Y carries the noise
    IoSpectrumData clean;   // noise-free spectra including X
    Eigen::VectorXd x0;
    Eigen::VectorXd dx;     // (x_0 - x_{2MP}) / P, the boundary term of the scaled data
    double noise_std = 0.0;
};

/// Simulates the full record from x0, adds Gaussian output noise when an SNR
/// is configured and transforms the whole record at the grid bins, scaled
/// by 1/P so that U_k matches the configured amplitudes.
RecordedExperiment run_experiment(const StateSpaceModel& model, const ExperimentConfig& config,
                                  const Eigen::VectorXd& x0, std::mt19937_64& rng);

/// Draws x0 and the noise from config.seed.
RecordedExperiment run_experiment(const StateSpaceModel& model, const ExperimentConfig& config);

/// z = e^{j pi i / count}, i = 0 ... count-1.
std::vector<cplx> unit_circle_sweep(int count);

struct SweepPoint {
    double omega = 0.0;
    cplx H;
    cplx Yz;
    cplx T;
    cplx Tz;
    double frf_error = 0.0;
    double transient_error = 0.0;
};

struct CaseStudyReport {
    std::vector<SweepPoint> sweep;
    double max_frf_error = 0.0;
    double max_transient_error = 0.0;
    double worst_frf_omega = 0.0;
    double worst_transient_omega = 0.0;
    /// Largest |Y_k - H U_k - T| / max(1, |Y_k|) at unexcited and excited bins (noise-free only).
    double even_bin_error = 0.0;
    double odd_bin_error = 0.0;
    double error_bound = 0.0;
    double noise_std = 0.0;
    bool passed = false;
    std::string failure;
};

CaseStudyReport run_noisefree_case_study(const ExperimentConfig& config,
                                         const std::optional<std::filesystem::path>& out_dir = {});
CaseStudyReport run_noisy_case_study(const ExperimentConfig& config,
                                     const std::optional<std::filesystem::path>& out_dir = {});

/// Noisy reproduction over many seeds, one seed per OpenMP iteration.
std::vector<CaseStudyReport> run_noisy_monte_carlo(const ExperimentConfig& config,
                                                   const std::vector<std::uint64_t>& seeds);
std::vector<CaseStudyReport> run_noisy_monte_carlo_serial(const ExperimentConfig& config,
                                                          const std::vector<std::uint64_t>& seeds);

/// Loads config.model_path, or the benchmark model when the path is empty.
StateSpaceModel load_configured_model(const ExperimentConfig& config);

}  // namespace fdwfl
