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
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fdwfl/linalg.hpp"
#include "fdwfl/lti.hpp"
#include "fdwfl/parallel.hpp"

namespace fdwfl {

struct EvalResult {
    Eigen::VectorXcd Yz;  // H(z) U_z
    Eigen::VectorXcd Tz;  // T(z)
    double condition = 0.0;
    int L0 = 0;
};

/**
 * @brief Singular value decomposition of [A0 | A1 | conj(A1)] with a real left factor.
 *
 * U (n x n) is real orthogonal, singular values are descending with zeros past
 * the rank. The right factor is kept thin (m x r) and structured:
 * V^H = [V0 | V1 | conj(V1)] with V0 real (r x m0) and V1 complex (r x m1).
 */
struct StructuredSvd {
    Eigen::MatrixXd U;
    Eigen::VectorXd singular_values;
    Eigen::MatrixXd V0;
    Eigen::MatrixXcd V1;
    int rank = 0;

    /// n x m matrix with the leading r singular values on the diagonal.
    [[nodiscard]] Eigen::MatrixXd S() const;
    /// m x r right factor, [V0 | V1 | conj(V1)]^H.
    [[nodiscard]] Eigen::MatrixXcd V() const;
};

/// Built from the eigendecomposition of the real symmetric A A^H:
/// U and S^2 from its eigenpairs, then V^H = S1^{-1} U1^T A.
StructuredSvd structured_svd(const Eigen::MatrixXd& a0, const Eigen::MatrixXcd& a1,
                             double tol_rel = kDefaultRankTol);

struct EvalOptions {
    double tol_rel = kDefaultRankTol;
    /// State dimension used in the persistence-of-excitation precheck. Defaults
    /// to the state spectrum dimension when present, otherwise to L0.
    std::optional<int> nx_hint;
    bool check_pe = true;
};

/**
 * Solves the separation system
 *
 *   [ 0                 | basis ]   [ Y ]   [ rhs_u     ]
 *   [ 0                 |       ] * [   ] = [ rhs_omega ]
 *   [ -W_{L0+1}(z) (x) I |       ]   [ G ]   [ 0         ]
 *
 * for Y by projecting out the column space of the real basis. G is complex and
 * free, so only the projected Y-columns have to be full rank.
 */
class SeparationSystem {
public:
    SeparationSystem(Eigen::MatrixXd orthonormal_basis, int l0, int nu, int ny,
                     double tol_rel = kDefaultRankTol);

    /// Unknown blocks for each right-hand-side column; writes the condition estimate.
    Eigen::MatrixXcd solve(cplx z, const Eigen::MatrixXcd& rhs, double* condition) const;

    /// Least-squares defect (minimized over G) of the system with a given Y.
    double residual(cplx z, const Eigen::VectorXcd& rhs, const Eigen::VectorXcd& y) const;

    [[nodiscard]] Eigen::VectorXcd frf_rhs(cplx z, const Eigen::VectorXcd& uz) const;
    [[nodiscard]] Eigen::VectorXcd transient_rhs(cplx z) const;

    [[nodiscard]] int rows() const noexcept { return rows_; }
    [[nodiscard]] int L0() const noexcept { return l0_; }
    [[nodiscard]] const Eigen::MatrixXd& basis() const noexcept { return basis_; }

private:
    Eigen::MatrixXcd y_columns(cplx z) const;
    Eigen::MatrixXcd project(const Eigen::MatrixXcd& v) const;

    Eigen::MatrixXd basis_;
    int l0_;
    int nu_;
    int ny_;
    int rows_;
    double tol_rel_;
};

/// Exact evaluation from noise-free data: the system is built from the
/// stacked Psi_{L0+1} of U, Omega and Y in real-valued form.
class FrfEvaluator {
public:
    FrfEvaluator(const IoSpectrumData& data, int l0, const EvalOptions& opts = {});

    [[nodiscard]] Eigen::VectorXcd evaluate_frf(cplx z, const Eigen::VectorXcd& uz) const;
    [[nodiscard]] Eigen::VectorXcd evaluate_transient(cplx z) const;
    [[nodiscard]] EvalResult evaluate_joint(cplx z, const Eigen::VectorXcd& uz) const;

    [[nodiscard]] const SeparationSystem& system() const noexcept { return system_; }

private:
    int nu_;
    SeparationSystem system_;
};

/// Noise-robust variant: the data matrix is replaced by its leading
/// (n_u + 1)(L0 + 1) + n_x left singular vectors, L0 = n_x.
class NoisyEstimator {
public:
    NoisyEstimator(const IoSpectrumData& data, int nx_guess, const EvalOptions& opts = {});

    [[nodiscard]] EvalResult evaluate_joint(cplx z, const Eigen::VectorXcd& uz) const;
    [[nodiscard]] const StructuredSvd& svd() const noexcept { return svd_; }
    [[nodiscard]] const SeparationSystem& system() const noexcept { return *system_; }

private:
    int nu_;
    StructuredSvd svd_;
    std::optional<SeparationSystem> system_;
};

Eigen::VectorXcd evaluate_frf(const IoSpectrumData& data, cplx z, const Eigen::VectorXcd& uz,
                              int l0, const EvalOptions& opts = {});
Eigen::VectorXcd evaluate_transient(const IoSpectrumData& data, cplx z, int l0,
                                    const EvalOptions& opts = {});
EvalResult evaluate_joint(const IoSpectrumData& data, cplx z, const Eigen::VectorXcd& uz, int l0,
                          const EvalOptions& opts = {});
EvalResult estimate_noisy(const IoSpectrumData& data, cplx z, const Eigen::VectorXcd& uz,
                          int nx_guess, const EvalOptions& opts = {});

/// Stacked Psi_{L0+1} of U, Omega, Y split into the real k = 0 column and the
/// complex k >= 1 columns; Psi = [a0 | a1 | conj(a1)].
struct StackedData {
    Eigen::MatrixXd a0;
    Eigen::MatrixXcd a1;
};
StackedData stacked_data_matrix(const IoSpectrumData& data, int order);

struct HeuristicRank {
    int observed = 0;
    int expected = 0;
    /// sigma_{expected+1} / sigma_expected; zero when undefined.
    double gap = 0.0;
    Eigen::VectorXd singular_values;
};

HeuristicRank rank_heuristic_check(const IoSpectrumData& data, int l0, int nx_guess,
                                   double tol_rel = kDefaultRankTol);

/// Joint evaluation over many z, spread across OpenMP threads.
template <typename Evaluator>
std::vector<EvalResult> sweep(const Evaluator& eval, std::span<const cplx> zs,
                              const Eigen::VectorXcd& uz) {
    std::vector<EvalResult> out(zs.size());
    parallel_for(static_cast<long>(zs.size()), [&](long i) {
        out[static_cast<std::size_t>(i)] = eval.evaluate_joint(zs[static_cast<std::size_t>(i)], uz);
    });
    return out;
}

/// Single-threaded reference for sweep.
template <typename Evaluator>
std::vector<EvalResult> sweep_serial(const Evaluator& eval, std::span<const cplx> zs,
                                     const Eigen::VectorXcd& uz) {
    std::vector<EvalResult> out;
    out.reserve(zs.size());
    for (const cplx z : zs) {
        out.push_back(eval.evaluate_joint(z, uz));
    }
    return out;
}

}  // namespace fdwfl
