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

#include <Eigen/Dense>

#include "fdwfl/linalg.hpp"
#include "fdwfl/lti.hpp"
#include "fdwfl/spectra.hpp"

namespace fdwfl {

/// Rank of [Psi_1(X); Psi_L(U); Psi_L(Omega)] against n_x + L (n_u + 1).
struct RankCertificate {
    int rank = 0;
    int required_rank = 0;
    bool full_row_rank = false;
    /// Whether (U, Omega) is persistently exciting of order L + n_x. When it is
    /// not, the certificate is still computed but carries no guarantee.
    bool pe_satisfied = false;
};

RankCertificate rank_certificate(const IoSpectrumData& data, int order,
                                 double tol_rel = kDefaultRankTol);

/// Coefficients (G0, G1, conj(G1)) that reproduce a queried trajectory from the
/// data, together with the least-squares defect.
struct MembershipSolution {
    bool feasible = false;
    double G0 = 0.0;
    Eigen::VectorXcd G1;
    double residual = 0.0;   // infinity norm of the equation defect
    double tolerance = 0.0;  // feasibility threshold that was applied
    bool pe_shortfall = false;
};

struct MembershipOptions {
    /// Singular values below this fraction of the largest are discarded in the solve.
    double tol_rel = kDefaultRankTol;
    /// Feasible iff residual < tol_abs_scale * (1 + max|traj|).
    double tol_abs_scale = 1e-7;
};

/// Trajectory test against non-steady-state data: rows [u; 0; y] against the
/// U, Omega and Y blocks. Solved in the real-valued form.
MembershipSolution membership_transient(const IoSpectrumData& data, const Trajectory& traj,
                                        const MembershipOptions& opts = {});

/// Trajectory test assuming steady-state data: rows [u; y], no Omega block.
MembershipSolution membership_steady(const IoSpectrumData& data, const Trajectory& traj,
                                     const MembershipOptions& opts = {});

/// Complex-valued formulation of membership_transient. Kept as a reference
/// for the real-valued solver.
MembershipSolution membership_transient_complex(const IoSpectrumData& data,
                                                const Trajectory& traj,
                                                const MembershipOptions& opts = {});

struct GeneratedTrajectory {
    Trajectory trajectory;
    /// Image of the coefficients on the Omega channel. The generated pair is a
    /// trajectory of the system only when this vanishes.
    Eigen::VectorXd w_defect;
    /// Largest imaginary part discarded when realifying the products.
    double max_imag = 0.0;
};

GeneratedTrajectory generate_trajectory(const IoSpectrumData& data, double g0,
                                        const Eigen::VectorXcd& g1, int length);

}  // namespace fdwfl
