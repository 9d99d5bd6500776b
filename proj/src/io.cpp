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

#include "fdwfl/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fdwfl/errors.hpp"

namespace fdwfl {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) {
        if (!cell.empty() && cell.back() == '\r') {
            cell.pop_back();
        }
        out.push_back(cell);
    }
    return out;
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) {
        throw std::runtime_error("malformed number '" + s + "'");
    }
    return v;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return is;
}

nlohmann::json complex_array(const Eigen::VectorXcd& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        arr.push_back({v(i).real(), v(i).imag()});
    }
    return arr;
}

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// Nested row-major array; an empty outer array gives a 0 x cols matrix.
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, const char* name, Eigen::Index rows_hint,
                                 Eigen::Index cols_hint) {
    if (!j.is_array()) {
        throw std::runtime_error(std::string("model field ") + name + " must be a nested array");
    }
    if (j.empty()) {
        return Eigen::MatrixXd::Zero(rows_hint < 0 ? 0 : rows_hint, cols_hint < 0 ? 0 : cols_hint);
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.front().size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = j.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw std::runtime_error(std::string("model field ") + name + " has ragged rows");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(i, c) = row.at(static_cast<std::size_t>(c)).get<double>();
        }
    }
    return m;
}

cplx complex_from_json(const nlohmann::json& j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw std::runtime_error("complex values are numbers or [re, im] pairs");
}

}  // namespace

void write_spectrum_csv(std::ostream& os, const Spectrum& s) {
    os << "k,omega";
    for (int c = 0; c < s.dim(); ++c) {
        os << ",re_" << c << ",im_" << c;
    }
    os << '\n';
    for (int k = 0; k < s.size(); ++k) {
        os << k << ',' << format_double(s.grid().omega(k));
        for (int c = 0; c < s.dim(); ++c) {
            const cplx v = s.values()(c, k);
            os << ',' << format_double(v.real()) << ',' << format_double(v.imag());
        }
        os << '\n';
    }
}

Spectrum read_spectrum_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) {
        throw std::runtime_error("spectrum CSV is empty");
    }
    const auto header = split_csv(line);
    if (header.size() < 2 || header[0] != "k" || header[1] != "omega" || header.size() % 2 != 0) {
        throw std::runtime_error("spectrum CSV header must be k,omega,re_0,im_0,...");
    }
    const auto dim = static_cast<Eigen::Index>((header.size() - 2) / 2);
    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto cells = split_csv(line);
        if (cells.size() != header.size()) {
            throw std::runtime_error("spectrum CSV row has " + std::to_string(cells.size()) +
                                     " cells, expected " + std::to_string(header.size()));
        }
        std::vector<double> row;
        for (const auto& c : cells) {
            row.push_back(parse_double(c));
        }
        rows.push_back(std::move(row));
    }
    const FrequencyGrid grid(static_cast<int>(rows.size()));
    Eigen::MatrixXcd values(dim, grid.size());
    for (int k = 0; k < grid.size(); ++k) {
        const auto& row = rows[static_cast<std::size_t>(k)];
        if (static_cast<int>(row[0]) != k || std::abs(row[1] - grid.omega(k)) > 1e-12) {
            throw DimensionError("spectrum CSV row " + std::to_string(k) +
                                 " is not on the equidistant grid pi k / M");
        }
        for (Eigen::Index c = 0; c < dim; ++c) {
            values(c, k) = cplx(row[static_cast<std::size_t>(2 + 2 * c)],
                                row[static_cast<std::size_t>(3 + 2 * c)]);
        }
    }
    return {grid, std::move(values)};
}

void save_spectrum_csv(const std::filesystem::path& path, const Spectrum& s) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("cannot write " + path.string());
    }
    write_spectrum_csv(os, s);
}

Spectrum load_spectrum_csv(const std::filesystem::path& path) {
    auto is = open_in(path);
    return read_spectrum_csv(is);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << 't';
    for (Eigen::Index c = 0; c < traj.u.rows(); ++c) {
        os << ",u_" << c;
    }
    for (Eigen::Index c = 0; c < traj.y.rows(); ++c) {
        os << ",y_" << c;
    }
    os << '\n';
    for (int t = 0; t < traj.length(); ++t) {
        os << t;
        for (Eigen::Index c = 0; c < traj.u.rows(); ++c) {
            os << ',' << format_double(traj.u(c, t));
        }
        for (Eigen::Index c = 0; c < traj.y.rows(); ++c) {
            os << ',' << format_double(traj.y(c, t));
        }
        os << '\n';
    }
}

Trajectory read_trajectory_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) {
        throw std::runtime_error("trajectory CSV is empty");
    }
    const auto header = split_csv(line);
    if (header.empty() || header[0] != "t") {
        throw std::runtime_error("trajectory CSV header must start with t");
    }
    Eigen::Index nu = 0;
    Eigen::Index ny = 0;
    for (std::size_t i = 1; i < header.size(); ++i) {
        if (header[i].rfind("u_", 0) == 0 && ny == 0) {
            ++nu;
        } else if (header[i].rfind("y_", 0) == 0) {
            ++ny;
        } else {
            throw std::runtime_error("trajectory CSV columns must be u_* followed by y_*");
        }
    }
    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto cells = split_csv(line);
        if (cells.size() != header.size()) {
            throw std::runtime_error("trajectory CSV row has the wrong number of cells");
        }
        std::vector<double> row;
        for (std::size_t i = 1; i < cells.size(); ++i) {
            row.push_back(parse_double(cells[i]));
        }
        rows.push_back(std::move(row));
    }
    const auto len = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd u(nu, len);
    Eigen::MatrixXd y(ny, len);
    for (Eigen::Index t = 0; t < len; ++t) {
        const auto& row = rows[static_cast<std::size_t>(t)];
        for (Eigen::Index c = 0; c < nu; ++c) {
            u(c, t) = row[static_cast<std::size_t>(c)];
        }
        for (Eigen::Index c = 0; c < ny; ++c) {
            y(c, t) = row[static_cast<std::size_t>(nu + c)];
        }
    }
    return {std::move(u), std::move(y)};
}

Trajectory load_trajectory_csv(const std::filesystem::path& path) {
    auto is = open_in(path);
    return read_trajectory_csv(is);
}

nlohmann::json model_to_json(const StateSpaceModel& model) {
    return {{"A", matrix_json(model.A())},
            {"B", matrix_json(model.B())},
            {"C", matrix_json(model.C())},
            {"D", matrix_json(model.D())}};
}

StateSpaceModel model_from_json(const nlohmann::json& j) {
    for (const char* key : {"A", "B", "C", "D"}) {
        if (!j.contains(key)) {
            throw std::runtime_error(std::string("model JSON is missing field ") + key);
        }
    }
    Eigen::MatrixXd a = matrix_from_json(j["A"], "A", 0, 0);
    Eigen::MatrixXd b = matrix_from_json(j["B"], "B", a.rows(), -1);
    Eigen::MatrixXd c = matrix_from_json(j["C"], "C", 0, a.rows());
    Eigen::MatrixXd d = matrix_from_json(j["D"], "D", c.rows(), b.cols());
    return {std::move(a), std::move(b), std::move(c), std::move(d)};
}

StateSpaceModel load_model_json(const std::filesystem::path& path) {
    auto is = open_in(path);
    return model_from_json(nlohmann::json::parse(is));
}

nlohmann::json to_json(const PeReport& report) {
    std::vector<double> sv(report.singular_values.data(),
                           report.singular_values.data() + report.singular_values.size());
    return {{"order", report.order},
            {"rank", report.rank},
            {"required_rank", report.required_rank},
            {"singular_values", sv},
            {"is_pe", report.is_pe}};
}

nlohmann::json to_json(const MembershipSolution& sol) {
    return {{"feasible", sol.feasible},   {"G0", sol.G0},
            {"G1", complex_array(sol.G1)}, {"residual", sol.residual},
            {"tolerance", sol.tolerance}, {"pe_shortfall", sol.pe_shortfall}};
}

nlohmann::json to_json(const EvalResult& result) {
    return {{"Yz", complex_array(result.Yz)},
            {"Tz", complex_array(result.Tz)},
            {"condition", result.condition},
            {"L0", result.L0}};
}

nlohmann::json to_json(const CaseStudyReport& report, bool include_sweep) {
    nlohmann::json j = {{"max_frf_error", report.max_frf_error},
                        {"max_transient_error", report.max_transient_error},
                        {"worst_frf_omega", report.worst_frf_omega},
                        {"worst_transient_omega", report.worst_transient_omega},
                        {"even_bin_error", report.even_bin_error},
                        {"odd_bin_error", report.odd_bin_error},
                        {"error_bound", report.error_bound},
                        {"noise_std", report.noise_std},
                        {"sweep_points", report.sweep.size()},
                        {"passed", report.passed},
                        {"failure", report.failure}};
    if (include_sweep) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& p : report.sweep) {
            rows.push_back({{"omega", p.omega},
                            {"frf_error", p.frf_error},
                            {"transient_error", p.transient_error}});
        }
        j["sweep"] = std::move(rows);
    }
    return j;
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
    nlohmann::json amps = nlohmann::json::array();
    for (const cplx a : config.bin_amplitudes()) {
        amps.push_back({a.real(), a.imag()});
    }
    nlohmann::json j = {{"M", config.M},
                        {"excited_bins", config.bins()},
                        {"amplitudes", amps},
                        {"periods", config.periods},
                        {"seed", config.seed},
                        {"model_path", config.model_path},
                        {"L0", config.L0},
                        {"sweep_points", config.sweep_points}};
    j["snr"] = config.snr ? nlohmann::json(*config.snr) : nlohmann::json(nullptr);
    return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base) {
    if (j.contains("M")) {
        base.M = j["M"].get<int>();
    }
    if (j.contains("excited_bins")) {
        base.excited_bins = j["excited_bins"].get<std::vector<int>>();
    }
    if (j.contains("amplitudes")) {
        base.amplitudes.clear();
        for (const auto& a : j["amplitudes"]) {
            base.amplitudes.push_back(complex_from_json(a));
        }
    }
    if (j.contains("periods")) {
        base.periods = j["periods"].get<int>();
    }
    if (j.contains("snr")) {
        if (j["snr"].is_null()) {
            base.snr.reset();
        } else {
            base.snr = j["snr"].get<double>();
        }
    }
    if (j.contains("seed")) {
        base.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("model_path")) {
        base.model_path = j["model_path"].get<std::string>();
    }
    if (j.contains("L0")) {
        base.L0 = j["L0"].get<int>();
    }
    if (j.contains("sweep_points")) {
        base.sweep_points = j["sweep_points"].get<int>();
    }
    base.validate();
    return base;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& sweep) {
    os << "omega,frf_error,transient_error,H_re,H_im,Yz_re,Yz_im,T_re,T_im,Tz_re,Tz_im\n";
    for (const auto& p : sweep) {
        os << format_double(p.omega) << ',' << format_double(p.frf_error) << ','
           << format_double(p.transient_error) << ',' << format_double(p.H.real()) << ','
           << format_double(p.H.imag()) << ',' << format_double(p.Yz.real()) << ','
           << format_double(p.Yz.imag()) << ',' << format_double(p.T.real()) << ','
           << format_double(p.T.imag()) << ',' << format_double(p.Tz.real()) << ','
           << format_double(p.Tz.imag()) << '\n';
    }
}

}  // namespace fdwfl
