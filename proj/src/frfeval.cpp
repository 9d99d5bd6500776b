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

#include "fdwfl/frfeval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "fdwfl/errors.hpp"
#include "fdwfl/spectra.hpp"

namespace fdwfl {

Eigen::MatrixXd StructuredSvd::S() const {
    const auto n = U.rows();
    const auto m = V0.cols() + 2 * V1.cols();
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, m);
    for (int i = 0; i < rank; ++i) {
        s(i, i) = singular_values(i);
    }
    return s;
}

Eigen::MatrixXcd StructuredSvd::V() const {
    const auto m0 = V0.cols();
    const auto m1 = V1.cols();
    Eigen::MatrixXcd vh(rank, m0 + 2 * m1);
    vh << V0.cast<cplx>(), V1, V1.conjugate();
    return vh.adjoint();
}

StructuredSvd structured_svd(const Eigen::MatrixXd& a0, const Eigen::MatrixXcd& a1,
                             double tol_rel) {
    if (a0.rows() != a1.rows()) {
        throw DimensionError("structured_svd: A0 has " + std::to_string(a0.rows()) +
                             " rows, A1 has " + std::to_string(a1.rows()));
    }
    const auto n = a0.rows();
    // A A^H = A0 A0^T + A1 A1^H + conj(A1 A1^H) is real symmetric.
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    if (a0.cols() > 0) {
        gram += a0 * a0.transpose();
    }
    if (a1.cols() > 0) {
        gram += 2.0 * (a1 * a1.adjoint()).real();
    }
    gram = 0.5 * (gram + gram.transpose());

    StructuredSvd out;
    out.U = Eigen::MatrixXd::Identity(n, n);
    out.singular_values = Eigen::VectorXd::Zero(n);
    if (n > 0) {
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
        // Eigen returns ascending eigenvalues.
        out.U = eig.eigenvectors().rowwise().reverse();
        const Eigen::VectorXd lambda = eig.eigenvalues().reverse();
        out.singular_values = lambda.cwiseMax(0.0).cwiseSqrt();
        // Eigenvalues of the Gram matrix carry an absolute error of about
        // n * eps * lambda_max; singular values under its square root are noise.
        const double smax = out.singular_values.size() ? out.singular_values(0) : 0.0;
        const double floor = std::max(
            tol_rel, std::sqrt(static_cast<double>(n) * std::numeric_limits<double>::epsilon()));
        int r = 0;
        while (r < n && smax > 0.0 && out.singular_values(r) > floor * smax) {
            ++r;
        }
        out.rank = r;
        out.singular_values.tail(n - r).setZero();
    }
    const int r = out.rank;
    const Eigen::MatrixXd u1 = out.U.leftCols(r);
    const Eigen::VectorXd inv_s = out.singular_values.head(r).cwiseInverse();
    out.V0 = inv_s.asDiagonal() * (u1.transpose() * a0);
    out.V1 = inv_s.cast<cplx>().asDiagonal() * (u1.transpose().cast<cplx>() * a1);
    return out;
}

SeparationSystem::SeparationSystem(Eigen::MatrixXd orthonormal_basis, int l0, int nu, int ny,
                                   double tol_rel)
    : basis_(std::move(orthonormal_basis)),
      l0_(l0),
      nu_(nu),
      ny_(ny),
      rows_((l0 + 1) * (nu + 1 + ny)),
      tol_rel_(tol_rel) {
    if (l0 < 0) {
        throw DimensionError("L0 must be >= 0");
    }
    if (basis_.rows() != rows_) {
        throw DimensionError("separation basis has " + std::to_string(basis_.rows()) +
                             " rows, expected (L0 + 1)(n_u + 1 + n_y) = " + std::to_string(rows_));
    }
}

Eigen::MatrixXcd SeparationSystem::y_columns(cplx z) const {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(rows_, ny_);
    const Eigen::VectorXcd w = window_vector(z, l0_ + 1);
    const int offset = (l0_ + 1) * (nu_ + 1);
    for (int i = 0; i <= l0_; ++i) {
        for (int c = 0; c < ny_; ++c) {
            e(offset + i * ny_ + c, c) = -w(i);
        }
    }
    return e;
}

Eigen::MatrixXcd SeparationSystem::project(const Eigen::MatrixXcd& v) const {
    if (basis_.cols() == 0) {
        return v;
    }
    const Eigen::MatrixXcd q = basis_.cast<cplx>();
    return v - q * (q.transpose() * v);
}

Eigen::VectorXcd SeparationSystem::frf_rhs(cplx z, const Eigen::VectorXcd& uz) const {
    if (uz.size() != nu_) {
        throw DimensionError("U_z has " + std::to_string(uz.size()) + " entries, expected n_u = " +
                             std::to_string(nu_));
    }
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(rows_);
    const Eigen::VectorXcd w = window_vector(z, l0_ + 1);
    for (int i = 0; i <= l0_; ++i) {
        rhs.segment(static_cast<Eigen::Index>(i) * nu_, nu_) = w(i) * uz;
    }
    return rhs;
}

Eigen::VectorXcd SeparationSystem::transient_rhs(cplx z) const {
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(rows_);
    const Eigen::VectorXcd w = window_vector(z, l0_ + 1);
    rhs.segment((l0_ + 1) * nu_, l0_ + 1) = w * z;
    return rhs;
}

Eigen::MatrixXcd SeparationSystem::solve(cplx z, const Eigen::MatrixXcd& rhs,
                                         double* condition) const {
    if (rhs.rows() != rows_) {
        throw DimensionError("right-hand side has the wrong number of rows");
    }
    const Eigen::MatrixXcd e = y_columns(z);
    // Real/imaginary row pairs of the projected Y-columns.
    const Eigen::MatrixXd a = realify_operator(project(e));
    const Eigen::MatrixXd b = realify_rows(project(rhs));
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& s = svd.singularValues();
    const double scale = window_vector(z, l0_ + 1).norm();
    const double smin = s.size() ? s(s.size() - 1) : 0.0;
    const double cond = smin > 0.0 ? scale / smin : std::numeric_limits<double>::infinity();
    if (condition != nullptr) {
        *condition = cond;
    }
    if (!(smin > tol_rel_ * scale)) {
        throw IllConditionedError("separation system does not determine the output at z = (" +
                                      std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                                      "), condition estimate " + std::to_string(cond),
                                  cond);
    }
    return complexify_rows(svd.solve(b));
}

double SeparationSystem::residual(cplx z, const Eigen::VectorXcd& rhs,
                                  const Eigen::VectorXcd& y) const {
    return project(y_columns(z) * y - rhs).norm();
}

namespace {

void check_pe_or_throw(const IoSpectrumData& data, int l0, const EvalOptions& opts) {
    if (!opts.check_pe) {
        return;
    }
    const int nx = opts.nx_hint.value_or(data.X ? data.X->dim() : l0);
    const int order = l0 + 1 + nx;
    if (!check_pe(data.augmented_input(), order, opts.tol_rel).is_pe) {
        throw PeShortfallError("augmented input (U, Omega) is not persistently exciting of order " +
                                   std::to_string(order),
                               order);
    }
}

Eigen::MatrixXd realified(const StackedData& d) {
    Eigen::MatrixXd r(d.a0.rows(), d.a0.cols() + 2 * d.a1.cols());
    r << d.a0, d.a1.real(), d.a1.imag();
    return r;
}

}  // namespace

StackedData stacked_data_matrix(const IoSpectrumData& data, int order) {
    const int m = data.grid().size();
    const Spectrum omega = phasor_spectrum(data.grid());
    const Eigen::MatrixXcd fu = build_F(data.U, 0, m - 1, order);
    const Eigen::MatrixXcd fw = build_F(omega, 0, m - 1, order);
    const Eigen::MatrixXcd fy = build_F(data.Y, 0, m - 1, order);
    Eigen::MatrixXcd f(fu.rows() + fw.rows() + fy.rows(), m);
    f << fu, fw, fy;
    return {f.col(0).real(), f.rightCols(m - 1)};
}

namespace {

Eigen::MatrixXd exact_basis(const IoSpectrumData& data, int l0, const EvalOptions& opts) {
    check_pe_or_throw(data, l0, opts);
    return column_space(realified(stacked_data_matrix(data, l0 + 1)), opts.tol_rel);
}

}  // namespace

FrfEvaluator::FrfEvaluator(const IoSpectrumData& data, int l0, const EvalOptions& opts)
    : nu_(data.nu()),
      system_(exact_basis(data, l0, opts), l0, data.nu(), data.ny(), opts.tol_rel) {}

Eigen::VectorXcd FrfEvaluator::evaluate_frf(cplx z, const Eigen::VectorXcd& uz) const {
    return system_.solve(z, system_.frf_rhs(z, uz), nullptr).col(0);
}

Eigen::VectorXcd FrfEvaluator::evaluate_transient(cplx z) const {
    return system_.solve(z, system_.transient_rhs(z), nullptr).col(0);
}

EvalResult FrfEvaluator::evaluate_joint(cplx z, const Eigen::VectorXcd& uz) const {
    Eigen::MatrixXcd rhs(system_.rows(), 2);
    rhs << system_.frf_rhs(z, uz), system_.transient_rhs(z);
    EvalResult out;
    const Eigen::MatrixXcd y = system_.solve(z, rhs, &out.condition);
    out.Yz = y.col(0);
    out.Tz = y.col(1);
    out.L0 = system_.L0();
    return out;
}

NoisyEstimator::NoisyEstimator(const IoSpectrumData& data, int nx_guess, const EvalOptions& opts)
    : nu_(data.nu()) {
    if (nx_guess < 1) {
        throw DimensionError("model order guess must be >= 1");
    }
    const int l0 = nx_guess;
    const StackedData stacked = stacked_data_matrix(data, l0 + 1);
    svd_ = structured_svd(stacked.a0, stacked.a1, opts.tol_rel);
    const int target = (data.nu() + 1) * (l0 + 1) + nx_guess;
    if (svd_.rank < target) {
        throw RankDeficiencyError("data matrix has numerical rank " + std::to_string(svd_.rank) +
                                      ", below the truncation target " + std::to_string(target),
                                  svd_.rank, target);
    }
    system_.emplace(svd_.U.leftCols(target), l0, data.nu(), data.ny(), opts.tol_rel);
}

EvalResult NoisyEstimator::evaluate_joint(cplx z, const Eigen::VectorXcd& uz) const {
    Eigen::MatrixXcd rhs(system_->rows(), 2);
    rhs << system_->frf_rhs(z, uz), system_->transient_rhs(z);
    EvalResult out;
    const Eigen::MatrixXcd y = system_->solve(z, rhs, &out.condition);
    out.Yz = y.col(0);
    out.Tz = y.col(1);
    out.L0 = system_->L0();
    return out;
}

Eigen::VectorXcd evaluate_frf(const IoSpectrumData& data, cplx z, const Eigen::VectorXcd& uz,
                              int l0, const EvalOptions& opts) {
    return FrfEvaluator(data, l0, opts).evaluate_frf(z, uz);
}

Eigen::VectorXcd evaluate_transient(const IoSpectrumData& data, cplx z, int l0,
                                    const EvalOptions& opts) {
    return FrfEvaluator(data, l0, opts).evaluate_transient(z);
}

EvalResult evaluate_joint(const IoSpectrumData& data, cplx z, const Eigen::VectorXcd& uz, int l0,
                          const EvalOptions& opts) {
    return FrfEvaluator(data, l0, opts).evaluate_joint(z, uz);
}

EvalResult estimate_noisy(const IoSpectrumData& data, cplx z, const Eigen::VectorXcd& uz,
                          int nx_guess, const EvalOptions& opts) {
    return NoisyEstimator(data, nx_guess, opts).evaluate_joint(z, uz);
}

HeuristicRank rank_heuristic_check(const IoSpectrumData& data, int l0, int nx_guess,
                                   double tol_rel) {
    const StackedData d = stacked_data_matrix(data, l0 + 1);
    Eigen::MatrixXcd psi(d.a0.rows(), d.a0.cols() + 2 * d.a1.cols());
    psi << d.a0.cast<cplx>(), d.a1, d.a1.conjugate();

    HeuristicRank out;
    out.singular_values = singular_values(psi);
    out.observed = numerical_rank(out.singular_values, tol_rel);
    out.expected = (data.nu() + 1) * (l0 + 1) + nx_guess;
    const auto& s = out.singular_values;
    if (out.expected >= 1 && out.expected < s.size() && s(out.expected - 1) > 0.0) {
        out.gap = s(out.expected) / s(out.expected - 1);
    }
    return out;
}

}  // namespace fdwfl
