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

// Command-line front end: experiment simulation, persistence-of-excitation
// checks, trajectory membership, FRF/transient evaluation and the case-study
// reproductions. Results go to stdout as JSON.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fdwfl/bench.hpp"
#include "fdwfl/errors.hpp"
#include "fdwfl/frfeval.hpp"
#include "fdwfl/io.hpp"
#include "fdwfl/wfl.hpp"

namespace {

using fdwfl::cplx;

struct ExperimentFlags {
    std::string config_path;
    std::string model_path;
    std::optional<int> M;
    std::optional<int> periods;
    std::optional<double> snr;
    std::optional<std::uint64_t> seed;
    std::optional<int> L0;
    std::optional<int> sweep_points;

    void attach(CLI::App* cmd, bool seed_required) {
        cmd->add_option("--config", config_path, "Experiment config JSON")->check(CLI::ExistingFile);
        cmd->add_option("--model", model_path, "Model JSON (default: benchmark model)")
            ->check(CLI::ExistingFile);
        cmd->add_option("--M", M, "Number of grid frequencies");
        cmd->add_option("--periods", periods, "Number of multisine periods");
        cmd->add_option("--snr", snr, "Output amplitude SNR (omit for noise-free)");
        auto* s = cmd->add_option("--seed", seed, "RNG seed for x0 and noise");
        if (seed_required) {
            s->required();
        }
        cmd->add_option("--L0", L0, "Window parameter / model-order guess");
        cmd->add_option("--sweep-points", sweep_points, "Number of unit-circle sweep points");
    }

    fdwfl::ExperimentConfig resolve(fdwfl::ExperimentConfig base) const {
        if (!config_path.empty()) {
            std::ifstream is(config_path);
            base = fdwfl::config_from_json(nlohmann::json::parse(is), base);
        }
        if (!model_path.empty()) base.model_path = model_path;
        if (M) base.M = *M;
        if (periods) base.periods = *periods;
        if (snr) base.snr = *snr;
        if (seed) base.seed = *seed;
        if (L0) base.L0 = *L0;
        if (sweep_points) base.sweep_points = *sweep_points;
        base.validate();
        return base;
    }
};

std::vector<double> to_vector(const Eigen::VectorXd& v) {
    return {v.data(), v.data() + v.size()};
}

int run_simulate(const ExperimentFlags& flags, const std::string& out_dir) {
    const fdwfl::ExperimentConfig config = flags.resolve({});
    const fdwfl::StateSpaceModel model = fdwfl::load_configured_model(config);
    const fdwfl::RecordedExperiment rec = fdwfl::run_experiment(model, config);
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    fdwfl::save_spectrum_csv(dir / "U.csv", rec.data.U);
    fdwfl::save_spectrum_csv(dir / "Y.csv", rec.data.Y);
    fdwfl::save_spectrum_csv(dir / "X.csv", *rec.clean.X);
    nlohmann::json meta = {{"config", fdwfl::config_to_json(config)},
                           {"x0", to_vector(rec.x0)},
                           {"dx", to_vector(rec.dx)},
                           {"noise_std", rec.noise_std}};
    std::ofstream(dir / "experiment.json") << meta.dump(2) << '\n';
    std::cout << meta.dump(2) << '\n';
    return 0;
}

int run_pe_check(const std::string& spectrum_path, int order, bool augment, double tol) {
    fdwfl::Spectrum s = fdwfl::load_spectrum_csv(spectrum_path);
    if (augment) {
        s = fdwfl::concat_channels(s, fdwfl::phasor_spectrum(s.grid()));
    }
    const fdwfl::PeReport report = fdwfl::check_pe(s, order, tol);
    std::cout << fdwfl::to_json(report).dump(2) << '\n';
    return 0;
}

int run_membership(const std::string& u_path, const std::string& y_path,
                   const std::string& traj_path, bool steady) {
    const fdwfl::IoSpectrumData data(fdwfl::load_spectrum_csv(u_path),
                                     fdwfl::load_spectrum_csv(y_path));
    const fdwfl::Trajectory traj = fdwfl::load_trajectory_csv(traj_path);
    const fdwfl::MembershipSolution sol =
        steady ? fdwfl::membership_steady(data, traj) : fdwfl::membership_transient(data, traj);
    std::cout << fdwfl::to_json(sol).dump(2) << '\n';
    return 0;
}

int run_evaluate(const std::string& u_path, const std::string& y_path, cplx z,
                 const std::vector<double>& uz_re, const std::vector<double>& uz_im, int l0,
                 std::optional<int> nx_guess) {
    const fdwfl::IoSpectrumData data(fdwfl::load_spectrum_csv(u_path),
                                     fdwfl::load_spectrum_csv(y_path));
    Eigen::VectorXcd uz = Eigen::VectorXcd::Ones(data.nu());
    if (!uz_re.empty()) {
        if (static_cast<int>(uz_re.size()) != data.nu() ||
            (!uz_im.empty() && uz_im.size() != uz_re.size())) {
            throw fdwfl::DimensionError("U_z must have n_u entries");
        }
        for (int i = 0; i < data.nu(); ++i) {
            uz(i) = cplx(uz_re[static_cast<std::size_t>(i)],
                         uz_im.empty() ? 0.0 : uz_im[static_cast<std::size_t>(i)]);
        }
    }
    const fdwfl::EvalResult result = nx_guess ? fdwfl::estimate_noisy(data, z, uz, *nx_guess)
                                              : fdwfl::evaluate_joint(data, z, uz, l0);
    std::cout << fdwfl::to_json(result).dump(2) << '\n';
    return 0;
}

int run_case_study(const ExperimentFlags& flags, bool noisy, const std::string& out_dir) {
    const std::uint64_t seed = flags.seed.value_or(0);
    const fdwfl::ExperimentConfig config = flags.resolve(fdwfl::ExperimentConfig::case_study(noisy, seed));
    std::optional<std::filesystem::path> dir;
    if (!out_dir.empty()) {
        dir = out_dir;
    }
    const fdwfl::CaseStudyReport report = noisy ? fdwfl::run_noisy_case_study(config, dir)
                                                : fdwfl::run_noisefree_case_study(config, dir);
    std::cout << fdwfl::to_json(report).dump(2) << '\n';
    if (!report.passed) {
        std::cerr << "case study failed: " << report.failure << '\n';
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frequency-domain fundamental-lemma toolkit for non-steady-state data"};
    app.require_subcommand(1);

    ExperimentFlags sim_flags;
    std::string sim_out = ".";
    auto* sim = app.add_subcommand("simulate", "Run a multisine experiment and write spectra CSVs");
    sim_flags.attach(sim, true);
    sim->add_option("--out-dir", sim_out, "Output directory");

    std::string pe_spectrum;
    int pe_order = 1;
    bool pe_augment = false;
    double pe_tol = fdwfl::kDefaultRankTol;
    auto* pe = app.add_subcommand("pe-check", "Persistence-of-excitation report for a spectrum");
    pe->add_option("--spectrum", pe_spectrum, "Spectrum CSV")->required()->check(CLI::ExistingFile);
    pe->add_option("--order", pe_order, "Order L")->required();
    pe->add_flag("--augment", pe_augment, "Append the phasor channel Omega_k before testing");
    pe->add_option("--tol", pe_tol, "Relative singular-value threshold");

    std::string mem_u, mem_y, mem_traj;
    bool mem_steady = false;
    auto* mem = app.add_subcommand("membership", "Test whether a trajectory is explained by the data");
    mem->add_option("--u", mem_u, "Input spectrum CSV")->required()->check(CLI::ExistingFile);
    mem->add_option("--y", mem_y, "Output spectrum CSV")->required()->check(CLI::ExistingFile);
    mem->add_option("--trajectory", mem_traj, "Trajectory CSV")->required()->check(CLI::ExistingFile);
    mem->add_flag("--steady", mem_steady, "Assume steady-state data (no transient channel)");

    std::string ev_u, ev_y;
    double z_re = 1.0;
    double z_im = 0.0;
    std::vector<double> uz_re, uz_im;
    int ev_l0 = 4;
    std::optional<int> ev_nx;
    auto* ev = app.add_subcommand("evaluate", "Evaluate H(z) U_z and T(z) from spectra");
    ev->add_option("--u", ev_u, "Input spectrum CSV")->required()->check(CLI::ExistingFile);
    ev->add_option("--y", ev_y, "Output spectrum CSV")->required()->check(CLI::ExistingFile);
    ev->add_option("--z-re", z_re, "Real part of z");
    ev->add_option("--z-im", z_im, "Imaginary part of z");
    ev->add_option("--uz-re", uz_re, "Real parts of U_z (default all ones)");
    ev->add_option("--uz-im", uz_im, "Imaginary parts of U_z");
    ev->add_option("--L0", ev_l0, "Window parameter L0");
    ev->add_option("--nx", ev_nx, "Use the noise-robust estimator with this model order");

    ExperimentFlags cs_flags;
    bool cs_noise_free = false;
    bool cs_noisy = false;
    std::string cs_out;
    auto* cs = app.add_subcommand("case-study", "Reproduce the benchmark FRF/transient study");
    auto* nf_flag = cs->add_flag("--noise-free", cs_noise_free, "Single noise-free period");
    auto* ny_flag = cs->add_flag("--noisy", cs_noisy, "100 noisy periods at SNR 20");
    nf_flag->excludes(ny_flag);
    cs_flags.attach(cs, true);
    cs->add_option("--out-dir", cs_out, "Write spectra, error CSV and report here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) {
            return run_simulate(sim_flags, sim_out);
        }
        if (*pe) {
            return run_pe_check(pe_spectrum, pe_order, pe_augment, pe_tol);
        }
        if (*mem) {
            return run_membership(mem_u, mem_y, mem_traj, mem_steady);
        }
        if (*ev) {
            return run_evaluate(ev_u, ev_y, cplx(z_re, z_im), uz_re, uz_im, ev_l0, ev_nx);
        }
        if (*cs) {
            if (!cs_noise_free && !cs_noisy) {
                std::cerr << "case-study needs --noise-free or --noisy\n";
                return 2;
            }
            return run_case_study(cs_flags, cs_noisy, cs_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
