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

#include <filesystem>
#include <string>

#include "core/evaluator.hpp"

namespace scentest::report {

/// Stable machine-readable serialization: identical reports produce
/// identical bytes (sorted keys, ordered arrays, shortest round-trip float
/// formatting).
std::string report_to_json(const eval::TestReport& report);
eval::TestReport report_from_json(const std::string& text,
                                  const std::string& origin);

void save_report(const eval::TestReport& report,
                 const std::filesystem::path& path);
eval::TestReport load_report(const std::filesystem::path& path);

/// Human-readable plain-text rendering.
std::string render_text(const eval::TestReport& report);

/// Metric results in the same columnar format as traces:
/// time,value,unit,fulfillment.
std::string metric_results_csv(const eval::CriterionEvaluation& evaluation);

}  // namespace scentest::report
