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

#include <optional>

#include <Eigen/Dense>

#include "fdwfl/linalg.hpp"
#include "fdwfl/spectra.hpp"

namespace fdwfl {

/**
 * @brief Discrete-time LTI system x_{k+1} = A x_k + B u_k, y_k = C x_k + D u_k.
 *
 * Only dimension consistency is enforced; stability, controllability and
 * observability are properties queried through the free functions below.
 */
class StateSpaceModel {
public:
    StateSpaceModel(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd c, Eigen::MatrixXd d);

    [[nodiscard]] const Eigen::MatrixXd& A() const noexcept { return a_; }
    [[nodiscard]] const Eigen::MatrixXd& B() const noexcept { return b_; }
    [[nodiscard]] const Eigen::MatrixXd& C() const noexcept { return c_; }
    [[nodiscard]] const Eigen::MatrixXd& D() const noexcept { return d_; }

    [[nodiscard]] int nx() const noexcept { return static_cast<int>(a_.rows()); }
    [[nodiscard]] int nu() const noexcept { return static_cast<int>(b_.cols()); }
    [[nodiscard]] int ny() const noexcept { return static_cast<int>(c_.rows()); }

private:
    Eigen::MatrixXd a_;
    Eigen::MatrixXd b_;
    Eigen::MatrixXd c_;
    Eigen::MatrixXd d_;
};

/// Finite input-output trajectory, samples stored column-wise.
struct Trajectory {
    Eigen::MatrixXd u;  // n_u x L
    Eigen::MatrixXd y;  // n_y x L

    Trajectory(Eigen::MatrixXd u_in, Eigen::MatrixXd y_in);
    [[nodiscard]] int length() const noexcept { return static_cast<int>(u.cols()); }
    /// Largest absolute sample over both channels.
    [[nodiscard]] double max_abs() const;
};

/// Input and output spectra on a shared grid; the state spectrum is optional
/// and only ever read by rank certificates and tests.
struct IoSpectrumData {
    Spectrum U;
    Spectrum Y;
    std::optional<Spectrum> X;

    IoSpectrumData(Spectrum u, Spectrum y, std::optional<Spectrum> x = std::nullopt);

    [[nodiscard]] const FrequencyGrid& grid() const noexcept { return U.grid(); }
    [[nodiscard]] int nu() const noexcept { return U.dim(); }
    [[nodiscard]] int ny() const noexcept { return Y.dim(); }
    /// (U_k, Omega_k), the input of the transient-embedding augmented system.
    [[nodiscard]] Spectrum augmented_input() const;
};

struct SimulationResult {
    Eigen::MatrixXd states;   // n_x x (N + 1), includes x_N
    Eigen::MatrixXd outputs;  // n_y x N
};

SimulationResult simulate(const StateSpaceModel& model, const Eigen::MatrixXd& u,
                          const Eigen::VectorXd& x0);

/// H(z) = C (zI - A)^{-1} B + D. Throws EigenvalueError when zI - A is
/// numerically singular (reciprocal condition below tol_rel).
Eigen::MatrixXcd transfer_function(const StateSpaceModel& model, cplx z,
                                   double tol_rel = kDefaultRankTol);

/// T(z) = C (zI - A)^{-1} z dx with dx = x_0 - x_{2M}.
Eigen::VectorXcd transient(const StateSpaceModel& model, const Eigen::VectorXd& dx, cplx z,
                           double tol_rel = kDefaultRankTol);

/// Rows C, CA, ..., CA^{k-1}.
Eigen::MatrixXd observability_matrix(const StateSpaceModel& model, int k);

/// Smallest k in [1, n_x] at which rank O_k is maximal.
int observability_index(const StateSpaceModel& model, double tol_rel = kDefaultRankTol);

/// [B, AB, ..., A^{n_x-1} B]
Eigen::MatrixXd controllability_matrix(const StateSpaceModel& model);
bool is_controllable(const StateSpaceModel& model, double tol_rel = kDefaultRankTol);

/// (A, [B | dx], C, [D | 0]): the boundary term becomes one extra input column.
StateSpaceModel augment(const StateSpaceModel& model, const Eigen::VectorXd& dx);

/// Initial state for which a 2M-periodic input yields a 2M-periodic state,
/// i.e. x_0 = x_{2M}. Requires I - A^{2M} invertible.
Eigen::VectorXd periodic_initial_state(const StateSpaceModel& model, const Eigen::MatrixXd& u);

struct ExperimentSpectra {
    IoSpectrumData data;      // X is always present
    Eigen::VectorXd dx;       // x_0 - x_end; oracle use only
    SimulationResult record;  // the underlying time-domain record
};

/// Simulates 2M steps from x0 and transforms u, x_[0,2M-1] and y.
ExperimentSpectra experiment_to_spectrum(const StateSpaceModel& model, const Eigen::MatrixXd& u,
                                         const Eigen::VectorXd& x0, const FrequencyGrid& grid);

/// Same for a record of P whole periods (2MP samples), transformed at the grid bins.
ExperimentSpectra record_to_spectrum(const StateSpaceModel& model, const Eigen::MatrixXd& u,
                                     const Eigen::VectorXd& x0, const FrequencyGrid& grid);

/// Largest relative defect over k of
///   e^{jw}X = AX + BU + e^{jw} dx,  Y = CX + DU.
/// Requires data.X.
double transient_relation_residual(const StateSpaceModel& model, const IoSpectrumData& data,
                                   const Eigen::VectorXd& dx);

/// Largest relative defect of the steady-state relations e^{jw}X = AX + BU,
/// Y = CX + DU for an arbitrary input spectrum (n_u columns of B).
double steady_relation_residual(const StateSpaceModel& model, const Spectrum& u,
                                const Spectrum& x, const Spectrum& y);

}  // namespace fdwfl
