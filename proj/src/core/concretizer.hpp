// Copyright 2026 scentest contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "core/scenario.hpp"

namespace scentest::concretizer {

struct ConcretizationConfig {
  enum class Strategy { grid, uniform_random, boundary };
  Strategy strategy = Strategy::boundary;
  int points_per_parameter = 2;  // grid, >= 2
  int count = 1;                 // uniform_random, >= 1
  std::uint64_t seed = 0;        // uniform_random
  bool include_center = false;   // boundary
  std::string id_prefix = "concrete";
};

/// Derives concrete scenarios from `l` by assigning every parameter a fixed
/// value. Deterministic for identical (l, cfg), including the seed. Output
/// ids are `{id_prefix}-{index}` with a zero-padded index.
/// Throws Error{invalid_logical} when validate_logical(l) is non-empty and
/// Error{config} on malformed strategy settings.
std::vector<model::ConcreteScenario> concretize(const model::LogicalScenario& l,
                                                const ConcretizationConfig& cfg);

/// Maps each recorded concrete scenario id to the catalog entries it is a
/// member of (possibly none).
std::map<std::string, std::vector<std::string>> assign_drive(
    const model::RealWorldTestDrive& d,
    const std::vector<model::LogicalScenario>& catalog);

// Correlation grammar: `NAME OP NAME` or `NAME OP NUMBER`, OP one of
// < <= == >= >. Numbers are read in the left parameter's declared unit.
bool correlation_syntax_ok(const std::string& text,
                           const std::set<std::string>& known_params,
                           const std::vector<model::ParameterRange>& ranges,
                           std::string* error);

bool correlation_holds(const std::string& text,
                       const std::map<std::string, units::Quantity>& values);

}  // namespace scentest::concretizer
