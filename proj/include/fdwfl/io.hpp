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

#include <filesystem>
#include <iosfwd>

#include <json.hpp>

#include "fdwfl/bench.hpp"
#include "fdwfl/frfeval.hpp"
#include "fdwfl/lti.hpp"
#include "fdwfl/spectra.hpp"
#include "fdwfl/wfl.hpp"

namespace fdwfl {

// Spectrum CSV: header k,omega,re_0,im_0,...; one row per bin; %.17g floats.
void write_spectrum_csv(std::ostream& os, const Spectrum& s);
Spectrum read_spectrum_csv(std::istream& is);
void save_spectrum_csv(const std::filesystem::path& path, const Spectrum& s);
Spectrum load_spectrum_csv(const std::filesystem::path& path);

// Trajectory CSV: header t,u_0,...,u_{nu-1},y_0,...,y_{ny-1}; one row per sample.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
Trajectory read_trajectory_csv(std::istream& is);
Trajectory load_trajectory_csv(const std::filesystem::path& path);

// Model JSON: {"A": [[...]], "B": ..., "C": ..., "D": ...}, row-major nested arrays.
nlohmann::json model_to_json(const StateSpaceModel& model);
StateSpaceModel model_from_json(const nlohmann::json& j);
StateSpaceModel load_model_json(const std::filesystem::path& path);

nlohmann::json to_json(const PeReport& report);
nlohmann::json to_json(const MembershipSolution& sol);
nlohmann::json to_json(const EvalResult& result);
nlohmann::json to_json(const CaseStudyReport& report, bool include_sweep = false);

nlohmann::json config_to_json(const ExperimentConfig& config);
/// Fields missing from j keep the values already present in base.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});

/// Sweep errors as CSV: omega,frf_error,transient_error,H_re,H_im,Yz_re,Yz_im,T_re,T_im,Tz_re,Tz_im.
void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& sweep);

/// %.17g
std::string format_double(double v);

}  // namespace fdwfl
