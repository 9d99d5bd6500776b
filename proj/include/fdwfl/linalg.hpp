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

#include <complex>

#include <Eigen/Dense>

namespace fdwfl {

using cplx = std::complex<double>;

/// Relative singular-value threshold used for every numerical-rank decision.
inline constexpr double kDefaultRankTol = 1e-9;

/// Descending singular values.
Eigen::VectorXd singular_values(const Eigen::MatrixXd& a);
Eigen::VectorXd singular_values(const Eigen::MatrixXcd& a);

/// #{sigma_i > tol_rel * sigma_max}; zero when sigma_max is zero or the list is empty.
int numerical_rank(const Eigen::VectorXd& sigma, double tol_rel = kDefaultRankTol);

inline int numerical_rank(const Eigen::MatrixXd& a, double tol_rel = kDefaultRankTol) {
    return numerical_rank(singular_values(a), tol_rel);
}
inline int numerical_rank(const Eigen::MatrixXcd& a, double tol_rel = kDefaultRankTol) {
    return numerical_rank(singular_values(a), tol_rel);
}

/// Minimum-norm least-squares solution of A X = B with singular values below
/// tol_rel * sigma_max discarded.
template <typename Matrix>
struct LeastSquares {
    Matrix solution;
    int rank = 0;
    double condition = 0.0;  // sigma_max / sigma_rank over the retained part
};

LeastSquares<Eigen::MatrixXd> solve_least_squares(const Eigen::MatrixXd& a,
                                                  const Eigen::MatrixXd& b,
                                                  double tol_rel = kDefaultRankTol);
LeastSquares<Eigen::MatrixXcd> solve_least_squares(const Eigen::MatrixXcd& a,
                                                   const Eigen::MatrixXcd& b,
                                                   double tol_rel = kDefaultRankTol);

/// Orthonormal basis of the numerical column space of a.
Eigen::MatrixXd column_space(const Eigen::MatrixXd& a, double tol_rel = kDefaultRankTol);

/// Stacks [Re(a) -Im(a); Im(a) Re(a)], the real form of a complex linear map.
Eigen::MatrixXd realify_operator(const Eigen::MatrixXcd& a);

/// Stacks [Re(v); Im(v)] column-wise.
Eigen::MatrixXd realify_rows(const Eigen::MatrixXcd& v);

/// Inverse of realify_rows.
Eigen::MatrixXcd complexify_rows(const Eigen::MatrixXd& v);

}  // namespace fdwfl
