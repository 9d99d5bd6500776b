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

#include "fdwfl/spectra.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fdwfl/errors.hpp"
#include "fdwfl/parallel.hpp"

namespace fdwfl {

FrequencyGrid::FrequencyGrid(int m) : m_(m) {
    if (m < 1) {
        throw DimensionError("frequency grid needs M >= 1, got " + std::to_string(m));
    }
    omega_.resize(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        omega_[static_cast<std::size_t>(k)] = std::numbers::pi * k / m;
    }
}

cplx FrequencyGrid::phasor(int k) const {
    return std::polar(1.0, omega(k));
}

FrequencyGrid make_grid(int m) {
    return FrequencyGrid(m);
}

Spectrum::Spectrum(FrequencyGrid grid, Eigen::MatrixXcd values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.cols() != grid_.size()) {
        throw DimensionError("spectrum has " + std::to_string(values_.cols()) +
                             " bins but the grid has " + std::to_string(grid_.size()));
    }
}

Spectrum Spectrum::zeros(const FrequencyGrid& grid, int dim) {
    return {grid, Eigen::MatrixXcd::Zero(dim, grid.size())};
}

Spectrum phasor_spectrum(const FrequencyGrid& grid) {
    Eigen::MatrixXcd v(1, grid.size());
    for (int k = 0; k < grid.size(); ++k) {
        v(0, k) = grid.phasor(k);
    }
    return {grid, std::move(v)};
}

Spectrum concat_channels(const Spectrum& a, const Spectrum& b) {
    if (!(a.grid() == b.grid())) {
        throw DimensionError("cannot concatenate spectra on different grids");
    }
    Eigen::MatrixXcd v(a.dim() + b.dim(), a.size());
    v << a.values(), b.values();
    return {a.grid(), std::move(v)};
}

namespace {

void check_record_length(const Eigen::MatrixXd& signal, const FrequencyGrid& grid) {
    const long period = 2L * grid.size();
    if (signal.cols() == 0 || signal.cols() % period != 0) {
        throw DimensionError("record of " + std::to_string(signal.cols()) +
                             " samples is not a whole number of 2M = " + std::to_string(period) +
                             " sample periods");
    }
}

// One bin of the transform. Phases are formed from the exact integer product
// k*n reduced modulo 2M so that long records do not lose accuracy.
Eigen::VectorXcd dft_bin(const Eigen::MatrixXd& signal, int m, int k) {
    const long period = 2L * m;
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(signal.rows());
    for (Eigen::Index n = 0; n < signal.cols(); ++n) {
        const long phase_index = (static_cast<long>(k) * n) % period;
        const cplx e = std::polar(1.0, -std::numbers::pi * static_cast<double>(phase_index) / m);
        acc += signal.col(n).cast<cplx>() * e;
    }
    return acc;
}

}  // namespace

Spectrum dft_record(const Eigen::MatrixXd& signal, const FrequencyGrid& grid) {
    check_record_length(signal, grid);
    Eigen::MatrixXcd values(signal.rows(), grid.size());
    parallel_for(grid.size(), [&](long k) {
        values.col(k) = dft_bin(signal, grid.size(), static_cast<int>(k));
    });
    return {grid, std::move(values)};
}

Spectrum dft_record_serial(const Eigen::MatrixXd& signal, const FrequencyGrid& grid) {
    check_record_length(signal, grid);
    Eigen::MatrixXcd values(signal.rows(), grid.size());
    for (int k = 0; k < grid.size(); ++k) {
        values.col(k) = dft_bin(signal, grid.size(), k);
    }
    return {grid, std::move(values)};
}

Spectrum dft(const Eigen::MatrixXd& signal, const FrequencyGrid& grid) {
    if (signal.cols() != 2L * grid.size()) {
        throw DimensionError("dft expects exactly 2M = " + std::to_string(2 * grid.size()) +
                             " samples, got " + std::to_string(signal.cols()));
    }
    return dft_record(signal, grid);
}

Spectrum dft(const std::vector<Eigen::VectorXd>& samples, const FrequencyGrid& grid) {
    if (samples.empty()) {
        throw DimensionError("dft of an empty sequence");
    }
    const auto dim = samples.front().size();
    Eigen::MatrixXd signal(dim, static_cast<Eigen::Index>(samples.size()));
    for (std::size_t n = 0; n < samples.size(); ++n) {
        if (samples[n].size() != dim) {
            throw DimensionError("sample " + std::to_string(n) + " has dimension " +
                                 std::to_string(samples[n].size()) + ", expected " +
                                 std::to_string(dim));
        }
        signal.col(static_cast<Eigen::Index>(n)) = samples[n];
    }
    return dft(signal, grid);
}

Eigen::MatrixXd inverse_dft(const Spectrum& s) {
    const int m = s.size();
    const long period = 2L * m;
    Eigen::MatrixXd out(s.dim(), period);
    for (long n = 0; n < period; ++n) {
        Eigen::VectorXd acc = s.values().col(0).real();
        for (int k = 1; k < m; ++k) {
            const long phase_index = (static_cast<long>(k) * n) % period;
            const cplx e = std::polar(1.0, std::numbers::pi * static_cast<double>(phase_index) / m);
            acc += 2.0 * (s.values().col(k) * e).real();
        }
        out.col(n) = acc / static_cast<double>(period);
    }
    return out;
}

Eigen::VectorXcd window_vector(cplx z, int length) {
    if (length < 1) {
        throw DimensionError("window length must be >= 1");
    }
    Eigen::VectorXcd w(length);
    w(0) = 1.0;
    for (int i = 1; i < length; ++i) {
        w(i) = w(i - 1) * z;
    }
    return w;
}

Eigen::MatrixXcd build_F(const Spectrum& s, int first, int last, int order) {
    if (order < 1) {
        throw DimensionError("order must be >= 1");
    }
    if (first < 0 || last >= s.size() || first > last) {
        throw DimensionError("empty or out-of-range index range [" + std::to_string(first) + ", " +
                             std::to_string(last) + "]");
    }
    const int ns = s.dim();
    Eigen::MatrixXcd f(static_cast<Eigen::Index>(ns) * order, last - first + 1);
    for (int k = first; k <= last; ++k) {
        const Eigen::VectorXcd w = window_vector(s.grid().phasor(k), order);
        for (int i = 0; i < order; ++i) {
            f.block(static_cast<Eigen::Index>(i) * ns, k - first, ns, 1) = w(i) * s.values().col(k);
        }
    }
    return f;
}

Eigen::MatrixXcd build_Psi(const Spectrum& s, int order) {
    const int m = s.size();
    const Eigen::MatrixXcd head = build_F(s, 0, m - 1, order);
    if (m == 1) {
        return head;
    }
    Eigen::MatrixXcd psi(head.rows(), 2 * m - 1);
    psi.leftCols(m) = head;
    psi.rightCols(m - 1) = head.rightCols(m - 1).conjugate();
    return psi;
}

Eigen::MatrixXd realify_Psi(const Spectrum& s, int order) {
    const int m = s.size();
    const Eigen::MatrixXcd head = build_F(s, 0, m - 1, order);
    Eigen::MatrixXd out(head.rows(), 2 * m - 1);
    out.leftCols(m) = head.real();
    out.rightCols(m - 1) = head.rightCols(m - 1).imag();
    return out;
}

PeReport check_pe(const Spectrum& s, int order, double tol_rel) {
    PeReport report;
    report.order = order;
    report.required_rank = s.dim() * order;
    if (order < 1) {
        return report;
    }
    report.singular_values = singular_values(build_Psi(s, order));
    report.rank = numerical_rank(report.singular_values, tol_rel);
    report.is_pe = report.rank == report.required_rank && report.required_rank <= 2 * s.size() - 1;
    return report;
}

}  // namespace fdwfl
