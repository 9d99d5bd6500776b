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

#include "fdwfl/wfl.hpp"

#include <string>
#include <vector>

#include "fdwfl/errors.hpp"

namespace fdwfl {

namespace {

// Stacks F_L of the given spectra row-wise (complex, n_rows x M).
Eigen::MatrixXcd stacked_F(const std::vector<const Spectrum*>& blocks, int order) {
    Eigen::Index rows = 0;
    for (const Spectrum* s : blocks) {
        rows += static_cast<Eigen::Index>(s->dim()) * order;
    }
    const int m = blocks.front()->size();
    Eigen::MatrixXcd f(rows, m);
    Eigen::Index at = 0;
    for (const Spectrum* s : blocks) {
        const Eigen::MatrixXcd part = build_F(*s, 0, m - 1, order);
        f.middleRows(at, part.rows()) = part;
        at += part.rows();
    }
    return f;
}

Eigen::MatrixXcd stacked_Psi(const std::vector<const Spectrum*>& blocks, int order) {
    const Eigen::MatrixXcd f = stacked_F(blocks, order);
    const auto m = f.cols();
    Eigen::MatrixXcd psi(f.rows(), 2 * m - 1);
    psi.leftCols(m) = f;
    psi.rightCols(m - 1) = f.rightCols(m - 1).conjugate();
    return psi;
}

// Real-valued operator acting on theta = (G0, 2 Re G1, -2 Im G1): the rows
// [Re F0 | Re F_k | Im F_k] reproduce the real part of Psi (G0, G1, G1*), the
// appended rows [Im F0 | 0 | 0] its imaginary part.
Eigen::MatrixXd real_operator(const Eigen::MatrixXcd& f) {
    const auto rows = f.rows();
    const auto m = f.cols();
    Eigen::MatrixXd op = Eigen::MatrixXd::Zero(2 * rows, 2 * m - 1);
    op.topLeftCorner(rows, m) = f.real();
    op.topRightCorner(rows, m - 1) = f.rightCols(m - 1).imag();
    op.bottomLeftCorner(rows, 1) = f.col(0).imag();
    return op;
}

Eigen::VectorXd stack_samples(const Eigen::MatrixXd& samples) {
    return Eigen::Map<const Eigen::VectorXd>(samples.data(), samples.size());
}

Eigen::VectorXd trajectory_rhs(const Trajectory& traj, bool with_w_channel) {
    const Eigen::VectorXd u = stack_samples(traj.u);
    const Eigen::VectorXd y = stack_samples(traj.y);
    const Eigen::Index w_rows = with_w_channel ? traj.length() : 0;
    Eigen::VectorXd t = Eigen::VectorXd::Zero(u.size() + w_rows + y.size());
    t.head(u.size()) = u;
    t.tail(y.size()) = y;
    return t;
}

void check_trajectory(const IoSpectrumData& data, const Trajectory& traj) {
    if (traj.u.rows() != data.nu() || traj.y.rows() != data.ny()) {
        throw DimensionError("trajectory has " + std::to_string(traj.u.rows()) + " inputs and " +
                             std::to_string(traj.y.rows()) + " outputs; data has " +
                             std::to_string(data.nu()) + " and " + std::to_string(data.ny()));
    }
}

int known_state_dim(const IoSpectrumData& data) {
    return data.X ? data.X->dim() : 0;
}

MembershipSolution solve_real(const Eigen::MatrixXcd& f, const Eigen::VectorXd& t,
                              double traj_scale, const MembershipOptions& opts) {
    const Eigen::MatrixXd op = real_operator(f);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(op.rows());
    rhs.head(t.size()) = t;
    const auto ls = solve_least_squares(op, Eigen::MatrixXd(rhs), opts.tol_rel);
    const Eigen::VectorXd theta = ls.solution.col(0);
    const auto m = f.cols();

    MembershipSolution sol;
    sol.G0 = theta(0);
    sol.G1 = Eigen::VectorXcd(m - 1);
    for (Eigen::Index k = 1; k < m; ++k) {
        sol.G1(k - 1) = cplx(theta(k) / 2.0, -theta(m - 1 + k) / 2.0);
    }
    const Eigen::VectorXd defect = rhs - op * theta;
    sol.residual = defect.size() == 0 ? 0.0 : defect.cwiseAbs().maxCoeff();
    sol.tolerance = opts.tol_abs_scale * (1.0 + traj_scale);
    sol.feasible = sol.residual < sol.tolerance;
    return sol;
}

}  // namespace

RankCertificate rank_certificate(const IoSpectrumData& data, int order, double tol_rel) {
    if (!data.X) {
        throw DimensionError("rank certificate needs the state spectrum X");
    }
    if (order < 1) {
        throw DimensionError("order must be >= 1");
    }
    const int nx = data.X->dim();
    const Spectrum omega = phasor_spectrum(data.grid());
    const Eigen::MatrixXcd px = build_Psi(*data.X, 1);
    const Eigen::MatrixXcd pu = build_Psi(data.U, order);
    const Eigen::MatrixXcd pw = build_Psi(omega, order);
    Eigen::MatrixXcd stacked(px.rows() + pu.rows() + pw.rows(), px.cols());
    stacked << px, pu, pw;

    RankCertificate cert;
    cert.rank = numerical_rank(stacked, tol_rel);
    cert.required_rank = nx + order * (data.nu() + 1);
    cert.full_row_rank = cert.rank == cert.required_rank;
    cert.pe_satisfied = check_pe(data.augmented_input(), order + nx, tol_rel).is_pe;
    return cert;
}

MembershipSolution membership_transient(const IoSpectrumData& data, const Trajectory& traj,
                                        const MembershipOptions& opts) {
    check_trajectory(data, traj);
    const int order = traj.length();
    const Spectrum omega = phasor_spectrum(data.grid());
    const Eigen::MatrixXcd f = stacked_F({&data.U, &omega, &data.Y}, order);
    MembershipSolution sol = solve_real(f, trajectory_rhs(traj, true), traj.max_abs(), opts);
    sol.pe_shortfall =
        !check_pe(data.augmented_input(), order + known_state_dim(data), opts.tol_rel).is_pe;
    return sol;
}

MembershipSolution membership_steady(const IoSpectrumData& data, const Trajectory& traj,
                                     const MembershipOptions& opts) {
    check_trajectory(data, traj);
    const int order = traj.length();
    const Eigen::MatrixXcd f = stacked_F({&data.U, &data.Y}, order);
    MembershipSolution sol = solve_real(f, trajectory_rhs(traj, false), traj.max_abs(), opts);
    sol.pe_shortfall = !check_pe(data.U, order + known_state_dim(data), opts.tol_rel).is_pe;
    return sol;
}

MembershipSolution membership_transient_complex(const IoSpectrumData& data,
                                                const Trajectory& traj,
                                                const MembershipOptions& opts) {
    check_trajectory(data, traj);
    const int order = traj.length();
    const Spectrum omega = phasor_spectrum(data.grid());
    const Eigen::MatrixXcd psi = stacked_Psi({&data.U, &omega, &data.Y}, order);
    const Eigen::VectorXcd t = trajectory_rhs(traj, true).cast<cplx>();
    const auto ls = solve_least_squares(psi, Eigen::MatrixXcd(t), opts.tol_rel);
    const Eigen::VectorXcd c = ls.solution.col(0);
    const auto m = data.grid().size();

    MembershipSolution sol;
    sol.G0 = c(0).real();
    sol.G1 = c.segment(1, m - 1);
    const Eigen::VectorXcd defect = t - psi * c;
    sol.residual = defect.cwiseAbs().maxCoeff();
    sol.tolerance = opts.tol_abs_scale * (1.0 + traj.max_abs());
    sol.feasible = sol.residual < sol.tolerance;
    sol.pe_shortfall =
        !check_pe(data.augmented_input(), order + known_state_dim(data), opts.tol_rel).is_pe;
    return sol;
}

GeneratedTrajectory generate_trajectory(const IoSpectrumData& data, double g0,
                                        const Eigen::VectorXcd& g1, int length) {
    const int m = data.grid().size();
    if (g1.size() != m - 1) {
        throw DimensionError("G1 must have M - 1 = " + std::to_string(m - 1) + " entries, got " +
                             std::to_string(g1.size()));
    }
    Eigen::VectorXcd c(2 * m - 1);
    c(0) = g0;
    c.segment(1, m - 1) = g1;
    c.tail(m - 1) = g1.conjugate();

    const Spectrum omega = phasor_spectrum(data.grid());
    const Eigen::VectorXcd u = build_Psi(data.U, length) * c;
    const Eigen::VectorXcd w = build_Psi(omega, length) * c;
    const Eigen::VectorXcd y = build_Psi(data.Y, length) * c;

    double max_imag = 0.0;
    for (const Eigen::VectorXcd* v : {&u, &w, &y}) {
        if (v->size() > 0) {
            max_imag = std::max(max_imag, v->imag().cwiseAbs().maxCoeff());
        }
    }
    Eigen::MatrixXd u_samples = u.real();
    u_samples.resize(data.nu(), length);
    Eigen::MatrixXd y_samples = y.real();
    y_samples.resize(data.ny(), length);
    return {Trajectory(std::move(u_samples), std::move(y_samples)), w.real(), max_imag};
}

}  // namespace fdwfl
