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

#include "fdwfl/lti.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include <Eigen/LU>

#include "fdwfl/errors.hpp"

namespace fdwfl {

namespace {

std::string shape(const Eigen::MatrixXd& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// Solves (zI - A) X = rhs, rejecting near-singular resolvents.
Eigen::MatrixXcd resolvent_solve(const Eigen::MatrixXd& a, cplx z, const Eigen::MatrixXcd& rhs,
                                 double tol_rel) {
    const auto n = a.rows();
    if (n == 0) {
        return Eigen::MatrixXcd::Zero(0, rhs.cols());
    }
    const Eigen::MatrixXcd shifted = z * Eigen::MatrixXcd::Identity(n, n) - a.cast<cplx>();
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
    const double rcond = lu.rcond();
    if (!(rcond > tol_rel)) {
        throw EigenvalueError("evaluation at an eigenvalue of A: z = (" + std::to_string(z.real()) +
                                  ", " + std::to_string(z.imag()) + "), reciprocal condition " +
                                  std::to_string(rcond),
                              rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity());
    }
    return lu.solve(rhs);
}

double max_abs(const Eigen::MatrixXcd& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

StateSpaceModel::StateSpaceModel(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd c,
                                 Eigen::MatrixXd d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (a_.rows() != a_.cols() || b_.rows() != a_.rows() || c_.cols() != a_.rows() ||
        d_.rows() != c_.rows() || d_.cols() != b_.cols()) {
        throw DimensionError("inconsistent state-space dimensions: A " + shape(a_) + ", B " +
                             shape(b_) + ", C " + shape(c_) + ", D " + shape(d_));
    }
}

Trajectory::Trajectory(Eigen::MatrixXd u_in, Eigen::MatrixXd y_in)
    : u(std::move(u_in)), y(std::move(y_in)) {
    if (u.cols() != y.cols() || u.cols() < 1) {
        throw DimensionError("trajectory needs equal, nonzero input and output lengths");
    }
}

double Trajectory::max_abs() const {
    double m = 0.0;
    if (u.size() > 0) {
        m = std::max(m, u.cwiseAbs().maxCoeff());
    }
    if (y.size() > 0) {
        m = std::max(m, y.cwiseAbs().maxCoeff());
    }
    return m;
}

IoSpectrumData::IoSpectrumData(Spectrum u, Spectrum y, std::optional<Spectrum> x)
    : U(std::move(u)), Y(std::move(y)), X(std::move(x)) {
    if (!(U.grid() == Y.grid()) || (X && !(X->grid() == U.grid()))) {
        throw DimensionError("input, output and state spectra must share one frequency grid");
    }
}

Spectrum IoSpectrumData::augmented_input() const {
    return concat_channels(U, phasor_spectrum(grid()));
}

SimulationResult simulate(const StateSpaceModel& model, const Eigen::MatrixXd& u,
                          const Eigen::VectorXd& x0) {
    if (u.rows() != model.nu() || x0.size() != model.nx()) {
        throw DimensionError("simulate: input has " + std::to_string(u.rows()) +
                             " channels and x0 has " + std::to_string(x0.size()) +
                             " entries; model expects n_u = " + std::to_string(model.nu()) +
                             ", n_x = " + std::to_string(model.nx()));
    }
    const auto n = u.cols();
    SimulationResult out{Eigen::MatrixXd(model.nx(), n + 1), Eigen::MatrixXd(model.ny(), n)};
    out.states.col(0) = x0;
    for (Eigen::Index k = 0; k < n; ++k) {
        out.outputs.col(k) = model.C() * out.states.col(k) + model.D() * u.col(k);
        out.states.col(k + 1) = model.A() * out.states.col(k) + model.B() * u.col(k);
    }
    return out;
}

Eigen::MatrixXcd transfer_function(const StateSpaceModel& model, cplx z, double tol_rel) {
    const Eigen::MatrixXcd x = resolvent_solve(model.A(), z, model.B().cast<cplx>(), tol_rel);
    return model.C().cast<cplx>() * x + model.D().cast<cplx>();
}

Eigen::VectorXcd transient(const StateSpaceModel& model, const Eigen::VectorXd& dx, cplx z,
                           double tol_rel) {
    if (dx.size() != model.nx()) {
        throw DimensionError("transient: dx has " + std::to_string(dx.size()) +
                             " entries, expected " + std::to_string(model.nx()));
    }
    const Eigen::MatrixXcd x = resolvent_solve(model.A(), z, z * dx.cast<cplx>(), tol_rel);
    return model.C().cast<cplx>() * x;
}

Eigen::MatrixXd observability_matrix(const StateSpaceModel& model, int k) {
    if (k < 1) {
        throw DimensionError("observability matrix needs k >= 1");
    }
    const int ny = model.ny();
    Eigen::MatrixXd o(static_cast<Eigen::Index>(ny) * k, model.nx());
    Eigen::MatrixXd block = model.C();
    for (int i = 0; i < k; ++i) {
        o.middleRows(static_cast<Eigen::Index>(i) * ny, ny) = block;
        block = block * model.A();
    }
    return o;
}

int observability_index(const StateSpaceModel& model, double tol_rel) {
    const int nx = std::max(model.nx(), 1);
    int best_k = 1;
    int best_rank = -1;
    for (int k = 1; k <= nx; ++k) {
        const int r = numerical_rank(observability_matrix(model, k), tol_rel);
        if (r > best_rank) {
            best_rank = r;
            best_k = k;
        }
    }
    return best_k;
}

Eigen::MatrixXd controllability_matrix(const StateSpaceModel& model) {
    const int nx = model.nx();
    const int nu = model.nu();
    Eigen::MatrixXd ctrb(nx, static_cast<Eigen::Index>(nu) * nx);
    Eigen::MatrixXd block = model.B();
    for (int i = 0; i < nx; ++i) {
        ctrb.middleCols(static_cast<Eigen::Index>(i) * nu, nu) = block;
        block = model.A() * block;
    }
    return ctrb;
}

bool is_controllable(const StateSpaceModel& model, double tol_rel) {
    return numerical_rank(controllability_matrix(model), tol_rel) == model.nx();
}

StateSpaceModel augment(const StateSpaceModel& model, const Eigen::VectorXd& dx) {
    if (dx.size() != model.nx()) {
        throw DimensionError("augment: dx has " + std::to_string(dx.size()) +
                             " entries, expected " + std::to_string(model.nx()));
    }
    Eigen::MatrixXd b(model.nx(), model.nu() + 1);
    b << model.B(), dx;
    Eigen::MatrixXd d(model.ny(), model.nu() + 1);
    d << model.D(), Eigen::VectorXd::Zero(model.ny());
    return {model.A(), std::move(b), model.C(), std::move(d)};
}

Eigen::VectorXd periodic_initial_state(const StateSpaceModel& model, const Eigen::MatrixXd& u) {
    const int nx = model.nx();
    // Response after one period from zero state, and the period map A^N.
    const SimulationResult forced = simulate(model, u, Eigen::VectorXd::Zero(nx));
    Eigen::MatrixXd a_pow = Eigen::MatrixXd::Identity(nx, nx);
    for (Eigen::Index k = 0; k < u.cols(); ++k) {
        a_pow = model.A() * a_pow;
    }
    const Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(nx, nx) - a_pow;
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(lhs);
    if (!lu.isInvertible()) {
        throw EigenvalueError("no periodic state: A^N has an eigenvalue at 1",
                              std::numeric_limits<double>::infinity());
    }
    return lu.solve(forced.states.col(u.cols()));
}

ExperimentSpectra record_to_spectrum(const StateSpaceModel& model, const Eigen::MatrixXd& u,
                                     const Eigen::VectorXd& x0, const FrequencyGrid& grid) {
    if (u.cols() == 0 || u.cols() % (2L * grid.size()) != 0) {
        throw DimensionError("experiment input must span whole 2M-sample periods");
    }
    SimulationResult rec = simulate(model, u, x0);
    const auto n = u.cols();
    Spectrum uu = dft_record(u, grid);
    Spectrum yy = dft_record(rec.outputs, grid);
    Spectrum xx = dft_record(rec.states.leftCols(n), grid);
    Eigen::VectorXd dx = rec.states.col(0) - rec.states.col(n);
    return {IoSpectrumData(std::move(uu), std::move(yy), std::move(xx)), std::move(dx),
            std::move(rec)};
}

ExperimentSpectra experiment_to_spectrum(const StateSpaceModel& model, const Eigen::MatrixXd& u,
                                         const Eigen::VectorXd& x0, const FrequencyGrid& grid) {
    if (u.cols() != 2L * grid.size()) {
        throw DimensionError("experiment_to_spectrum expects exactly 2M = " +
                             std::to_string(2 * grid.size()) + " input samples, got " +
                             std::to_string(u.cols()));
    }
    return record_to_spectrum(model, u, x0, grid);
}

namespace {

double relation_residual(const StateSpaceModel& model, const Eigen::MatrixXcd& bu,
                         const Spectrum& u, const Spectrum& x, const Spectrum& y,
                         const Eigen::VectorXd* dx) {
    const auto& grid = x.grid();
    double defect = 0.0;
    double scale = 0.0;
    const Eigen::MatrixXcd a = model.A().cast<cplx>();
    const Eigen::MatrixXcd c = model.C().cast<cplx>();
    const Eigen::MatrixXcd d = model.D().cast<cplx>();
    for (int k = 0; k < grid.size(); ++k) {
        const cplx w = grid.phasor(k);
        const Eigen::VectorXcd xk = x.values().col(k);
        const Eigen::VectorXcd lhs = w * xk;
        const Eigen::VectorXcd ax = a * xk;
        const Eigen::VectorXcd bk = bu.col(k);
        Eigen::VectorXcd rhs = ax + bk;
        if (dx != nullptr) {
            rhs += w * dx->cast<cplx>();
        }
        const Eigen::VectorXcd yk = y.values().col(k);
        const Eigen::VectorXcd cx = c * xk;
        const Eigen::VectorXcd du = d * u.values().col(k);
        defect = std::max({defect, max_abs(lhs - rhs), max_abs(yk - cx - du)});
        scale = std::max({scale, max_abs(lhs), max_abs(ax), max_abs(bk), max_abs(yk), max_abs(cx),
                          max_abs(du)});
    }
    if (dx != nullptr && dx->size() > 0) {
        scale = std::max(scale, dx->cwiseAbs().maxCoeff());
    }
    return scale > 0.0 ? defect / scale : defect;
}

}  // namespace

double transient_relation_residual(const StateSpaceModel& model, const IoSpectrumData& data,
                                   const Eigen::VectorXd& dx) {
    if (!data.X) {
        throw DimensionError("transient relation residual needs the state spectrum");
    }
    if (data.nu() != model.nu() || data.ny() != model.ny() || data.X->dim() != model.nx() ||
        dx.size() != model.nx()) {
        throw DimensionError("spectra do not match the model dimensions");
    }
    const Eigen::MatrixXcd bu = model.B().cast<cplx>() * data.U.values();
    return relation_residual(model, bu, data.U, *data.X, data.Y, &dx);
}

double steady_relation_residual(const StateSpaceModel& model, const Spectrum& u,
                                const Spectrum& x, const Spectrum& y) {
    if (!(u.grid() == x.grid()) || !(u.grid() == y.grid())) {
        throw DimensionError("spectra must share one frequency grid");
    }
    if (u.dim() != model.nu() || y.dim() != model.ny() || x.dim() != model.nx()) {
        throw DimensionError("spectra do not match the model dimensions");
    }
    const Eigen::MatrixXcd bu = model.B().cast<cplx>() * u.values();
    return relation_residual(model, bu, u, x, y, nullptr);
}

}  // namespace fdwfl
