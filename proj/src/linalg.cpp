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

#include "fdwfl/linalg.hpp"

#include <Eigen/SVD>

namespace fdwfl {

namespace {

template <typename Matrix>
LeastSquares<Matrix> svd_solve(const Matrix& a, const Matrix& b, double tol_rel) {
    LeastSquares<Matrix> out;
    out.solution = Matrix::Zero(a.cols(), b.cols());
    if (a.size() == 0) {
        return out;
    }
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& s = svd.singularValues();
    out.rank = numerical_rank(s, tol_rel);
    if (out.rank == 0) {
        return out;
    }
    const auto r = out.rank;
    Matrix coeffs = svd.matrixU().leftCols(r).adjoint() * b;
    for (Eigen::Index i = 0; i < r; ++i) {
        coeffs.row(i) /= s(i);
    }
    out.solution = svd.matrixV().leftCols(r) * coeffs;
    out.condition = s(0) / s(r - 1);
    return out;
}

}  // namespace

Eigen::VectorXd singular_values(const Eigen::MatrixXd& a) {
    if (a.size() == 0) {
        return {};
    }
    return Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues();
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& a) {
    if (a.size() == 0) {
        return {};
    }
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(a).singularValues();
}

int numerical_rank(const Eigen::VectorXd& sigma, double tol_rel) {
    if (sigma.size() == 0) {
        return 0;
    }
    const double smax = sigma.maxCoeff();
    if (!(smax > 0.0)) {
        return 0;
    }
    int r = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > tol_rel * smax) {
            ++r;
        }
    }
    return r;
}

LeastSquares<Eigen::MatrixXd> solve_least_squares(const Eigen::MatrixXd& a,
                                                  const Eigen::MatrixXd& b,
                                                  double tol_rel) {
    return svd_solve(a, b, tol_rel);
}

LeastSquares<Eigen::MatrixXcd> solve_least_squares(const Eigen::MatrixXcd& a,
                                                   const Eigen::MatrixXcd& b,
                                                   double tol_rel) {
    return svd_solve(a, b, tol_rel);
}

Eigen::MatrixXd column_space(const Eigen::MatrixXd& a, double tol_rel) {
    if (a.size() == 0) {
        return Eigen::MatrixXd::Zero(a.rows(), 0);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU);
    const int r = numerical_rank(svd.singularValues(), tol_rel);
    return svd.matrixU().leftCols(r);
}

Eigen::MatrixXd realify_operator(const Eigen::MatrixXcd& a) {
    const auto m = a.rows();
    const auto n = a.cols();
    Eigen::MatrixXd out(2 * m, 2 * n);
    out.topLeftCorner(m, n) = a.real();
    out.topRightCorner(m, n) = -a.imag();
    out.bottomLeftCorner(m, n) = a.imag();
    out.bottomRightCorner(m, n) = a.real();
    return out;
}

Eigen::MatrixXd realify_rows(const Eigen::MatrixXcd& v) {
    Eigen::MatrixXd out(2 * v.rows(), v.cols());
    out.topRows(v.rows()) = v.real();
    out.bottomRows(v.rows()) = v.imag();
    return out;
}

Eigen::MatrixXcd complexify_rows(const Eigen::MatrixXd& v) {
    const auto m = v.rows() / 2;
    Eigen::MatrixXcd out(m, v.cols());
    out.real() = v.topRows(m);
    out.imag() = v.bottomRows(m);
    return out;
}

}  // namespace fdwfl
