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

#include <stdexcept>
#include <string>

namespace fdwfl {

/// Shapes, lengths or grids of the arguments do not fit together.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A resolvent (zI - A) could not be inverted reliably at the requested z.
class EigenvalueError : public std::runtime_error {
public:
    EigenvalueError(const std::string& what, double condition)
        : std::runtime_error(what), condition_(condition) {}
    [[nodiscard]] double condition() const noexcept { return condition_; }

private:
    double condition_;
};

/// The assembled evaluation system does not determine the requested unknowns.
class IllConditionedError : public std::runtime_error {
public:
    IllConditionedError(const std::string& what, double condition)
        : std::runtime_error(what), condition_(condition) {}
    [[nodiscard]] double condition() const noexcept { return condition_; }

private:
    double condition_;
};

/// The data is not persistently exciting of the order an operation needs.
class PeShortfallError : public std::runtime_error {
public:
    PeShortfallError(const std::string& what, int required_order)
        : std::runtime_error(what), required_order_(required_order) {}
    [[nodiscard]] int required_order() const noexcept { return required_order_; }

private:
    int required_order_;
};

/// Numerical rank of the data matrix falls below the truncation target.
class RankDeficiencyError : public std::runtime_error {
public:
    RankDeficiencyError(const std::string& what, int observed, int expected)
        : std::runtime_error(what), observed_(observed), expected_(expected) {}
    [[nodiscard]] int observed() const noexcept { return observed_; }
    [[nodiscard]] int expected() const noexcept { return expected_; }

private:
    int observed_;
    int expected_;
};

}  // namespace fdwfl
