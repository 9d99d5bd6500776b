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

#include <vector>

#include <Eigen/Dense>

#include "fdwfl/linalg.hpp"

namespace fdwfl {

/**
 * @brief Equidistant grid omega_k = pi k / M, k = 0 ... M-1.
 *
 * The grid covers [0, pi) and never contains the Nyquist frequency. A spectrum
 * on this grid implicitly represents the full circle through conjugate symmetry.
 */
class FrequencyGrid {
public:
    explicit FrequencyGrid(int m);

    [[nodiscard]] int size() const noexcept { return m_; }
    [[nodiscard]] double omega(int k) const { return omega_.at(static_cast<std::size_t>(k)); }
    [[nodiscard]] const std::vector<double>& omegas() const noexcept { return omega_; }
    /// e^{j omega_k}
    [[nodiscard]] cplx phasor(int k) const;

    bool operator==(const FrequencyGrid& other) const noexcept { return m_ == other.m_; }

private:
    int m_;
    std::vector<double> omega_;
};

FrequencyGrid make_grid(int m);

/// M complex n_s-vectors on a grid, stored column-wise (n_s x M).
class Spectrum {
public:
    Spectrum(FrequencyGrid grid, Eigen::MatrixXcd values);

    static Spectrum zeros(const FrequencyGrid& grid, int dim);

    [[nodiscard]] const FrequencyGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] const Eigen::MatrixXcd& values() const noexcept { return values_; }
    [[nodiscard]] int dim() const noexcept { return static_cast<int>(values_.rows()); }
    [[nodiscard]] int size() const noexcept { return grid_.size(); }
    [[nodiscard]] Eigen::VectorXcd at(int k) const { return values_.col(k); }

private:
    FrequencyGrid grid_;
    Eigen::MatrixXcd values_;
};

/// Omega_k = e^{j omega_k}, the phasor channel that carries the transient.
Spectrum phasor_spectrum(const FrequencyGrid& grid);

/// Channel-wise concatenation (a_k; b_k) of two spectra on the same grid.
Spectrum concat_channels(const Spectrum& a, const Spectrum& b);

/// S_k = sum_{n=0}^{2M-1} s_n e^{-j omega_k n}, no normalization.
/// signal is n_s x 2M, one sample per column.
Spectrum dft(const Eigen::MatrixXd& signal, const FrequencyGrid& grid);
Spectrum dft(const std::vector<Eigen::VectorXd>& samples, const FrequencyGrid& grid);

/// Same sum over a record of P whole periods (n_s x 2MP), evaluated at the grid
/// frequencies, which are exact bins of the long record.
Spectrum dft_record(const Eigen::MatrixXd& signal, const FrequencyGrid& grid);

/// Single-threaded reference for dft_record.
Spectrum dft_record_serial(const Eigen::MatrixXd& signal, const FrequencyGrid& grid);

/// Real 2M-sample signal whose dft equals S at k >= 1 and Re(S_0) at k = 0.
/// Bin M is zero, the upper half is the conjugate mirror, scale 1/(2M).
Eigen::MatrixXd inverse_dft(const Spectrum& s);

/// [1, z, ..., z^{L-1}]^T
Eigen::VectorXcd window_vector(cplx z, int length);

/// Columns W_L(e^{j omega_k}) (x) S_k for k = first ... last.
Eigen::MatrixXcd build_F(const Spectrum& s, int first, int last, int order);

/// [F_L(S_[0,M-1]) | conj(F_L(S_[1,M-1]))], n_s L x (2M - 1).
Eigen::MatrixXcd build_Psi(const Spectrum& s, int order);

/// [Re F_L(S_[0,M-1]) | Im F_L(S_[1,M-1])]. Column space matches build_Psi
/// whenever S_0 is real, which holds for the DFT of any real signal.
Eigen::MatrixXd realify_Psi(const Spectrum& s, int order);

struct PeReport {
    int order = 0;
    int rank = 0;
    int required_rank = 0;
    Eigen::VectorXd singular_values;
    bool is_pe = false;
};

/// Persistence of excitation of the given order: full row rank of Psi_L(S).
PeReport check_pe(const Spectrum& s, int order, double tol_rel = kDefaultRankTol);

}  // namespace fdwfl
