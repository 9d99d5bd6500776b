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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "fdwfl/bench.hpp"
#include "fdwfl/io.hpp"
#include "test_support.hpp"

using namespace fdwfl;
namespace ft = fdwfl::testing;

TEST_CASE("spectrum CSV") {
    std::mt19937_64 rng(41);
    const Spectrum s(FrequencyGrid(7), ft::gauss_cmatrix(rng, 3, 7));
    std::stringstream ss;
    write_spectrum_csv(ss, s);
    const std::string text = ss.str();
    CHECK(text.rfind("k,omega,re_0,im_0,re_1,im_1,re_2,im_2\n", 0) == 0);
    const Spectrum back = read_spectrum_csv(ss);
    CHECK(back.grid() == s.grid());
    CHECK(back.values() == s.values());

    SUBCASE("malformed input") {
        std::stringstream bad_header("k,omega,re_0\n0,0,1\n");
        CHECK_THROWS(read_spectrum_csv(bad_header));
        std::stringstream bad_grid("k,omega,re_0,im_0\n0,0,1,0\n1,0.5,1,0\n");
        CHECK_THROWS(read_spectrum_csv(bad_grid));
        std::stringstream empty("");
        CHECK_THROWS(read_spectrum_csv(empty));
    }
}

TEST_CASE("trajectory CSV") {
    std::mt19937_64 rng(42);
    const Trajectory t(ft::gauss_matrix(rng, 2, 5), ft::gauss_matrix(rng, 1, 5));
    std::stringstream ss;
    write_trajectory_csv(ss, t);
    CHECK(ss.str().rfind("t,u_0,u_1,y_0\n", 0) == 0);
    const Trajectory back = read_trajectory_csv(ss);
    CHECK(back.u == t.u);
    CHECK(back.y == t.y);
}

TEST_CASE("model JSON") {
    const StateSpaceModel m = benchmark_model();
    const nlohmann::json j = model_to_json(m);
    CHECK(j["A"].size() == 4);
    CHECK(j["A"][0].size() == 4);
    CHECK(j["A"][1][0].get<double>() == 1.0);
    const StateSpaceModel back = model_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.A() == m.A());
    CHECK(back.B() == m.B());
    CHECK(back.C() == m.C());
    CHECK(back.D() == m.D());
    CHECK_THROWS(model_from_json(nlohmann::json{{"A", {{1.0}}}}));
    CHECK_THROWS(model_from_json(nlohmann::json::parse(R"({"A":[[1,2],[3]],"B":[[1],[1]],"C":[[1,0]],"D":[[0]]})")));
}

TEST_CASE("config JSON") {
    ExperimentConfig c = ExperimentConfig::case_study(true, 5);
    c.excited_bins = std::vector<int>{1, 4};
    c.amplitudes = {cplx(1.0, -2.0), cplx(0.5)};
    const ExperimentConfig back = config_from_json(nlohmann::json::parse(config_to_json(c).dump()));
    CHECK(back.M == c.M);
    CHECK(back.bins() == c.bins());
    CHECK(back.bin_amplitudes() == c.bin_amplitudes());
    CHECK(back.periods == 100);
    REQUIRE(back.snr);
    CHECK(*back.snr == 20.0);
    CHECK(back.seed == 5);

    const ExperimentConfig partial = config_from_json(nlohmann::json{{"M", 10}, {"amplitudes", {2.0, 3.0, 4.0, 5.0, 6.0}}});
    CHECK(partial.M == 10);
    CHECK(partial.bins() == std::vector<int>{1, 3, 5, 7, 9});
    CHECK(partial.bin_amplitudes()[2] == cplx(4.0));
    CHECK_FALSE(partial.snr);

    const ExperimentConfig cleared = config_from_json(nlohmann::json{{"snr", nullptr}}, c);
    CHECK_FALSE(cleared.snr);
}

TEST_CASE("report JSON") {
    PeReport pe;
    pe.order = 3;
    pe.rank = 2;
    pe.required_rank = 3;
    pe.singular_values = Eigen::Vector3d(3.0, 1.0, 0.0);
    const nlohmann::json j = to_json(pe);
    CHECK(j["order"] == 3);
    CHECK(j["is_pe"] == false);
    CHECK(j["singular_values"].size() == 3);

    EvalResult r;
    r.Yz = Eigen::VectorXcd::Constant(1, cplx(1.0, 2.0));
    r.Tz = Eigen::VectorXcd::Constant(1, cplx(-1.0, 0.5));
    r.L0 = 4;
    const nlohmann::json jr = to_json(r);
    CHECK(jr["L0"] == 4);
    CHECK(jr["Yz"][0][1].get<double>() == 2.0);

    CHECK(format_double(0.1) == "0.10000000000000001");
}
