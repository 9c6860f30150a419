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
#include <optional>
#include <string>
#include <vector>

#include "core/engine.hpp"
#include "core/product.hpp"
#include "core/scenario.hpp"
#include "core/testspec.hpp"
#include "core/validation.hpp"

namespace scentest::io {

// All spec files share one structured text format: JSON documents with a
// `format_version` integer (unknown versions are rejected), a `file_type`
// discriminator, and mandatory unit tags on physical quantities, written
// as {"value": <number>, "unit": "<tag>"}.

inline constexpr int kFormatVersion = 1;

enum class FileType {
  logical_scenario,
  concrete_scenario,
  functional_scenario,
  test_drive,
  decomposition,
  test_spec,
  metric_catalog,
  bench,
  bench_config,
  plans,
  campaign,
  test_report,
};

const char* to_string(FileType t);

FileType detect_file_type(const std::filesystem::path& path);

model::LogicalScenario load_logical(const std::filesystem::path& path);
model::ConcreteScenario load_concrete(const std::filesystem::path& path);
model::FunctionalScenario load_functional(const std::filesystem::path& path);
model::RealWorldTestDrive load_drive(const std::filesystem::path& path);
product::ProductModel load_decomposition(const std::filesystem::path& path);
spec::TestSpecification load_test_spec(const std::filesystem::path& path);
spec::MetricCatalog load_metric_catalog(const std::filesystem::path& path);
std::vector<engine::TestBench> load_benches(const std::filesystem::path& path);
std::vector<engine::TestBenchConfiguration> load_bench_configs(
    const std::filesystem::path& path);
spec::PlanSet load_plans(const std::filesystem::path& path);

std::string concrete_to_json(const model::ConcreteScenario& s);
void save_concrete(const model::ConcreteScenario& s,
                   const std::filesystem::path& path);

/// Campaign bundle: scenario files, the test specification, the metric
/// catalog, benches and bench configurations, and optional plans and
/// decomposition documents, referenced by paths relative to the campaign
/// file.
struct Campaign {
  std::filesystem::path root;
  int parallelism = 1;
  std::vector<model::LogicalScenario> logicals;
  std::vector<model::ConcreteScenario> concretes;
  std::vector<model::FunctionalScenario> functionals;
  std::vector<model::RealWorldTestDrive> drives;
  spec::TestSpecification test_spec;
  spec::MetricCatalog metrics;
  std::vector<engine::TestBench> benches;
  std::vector<engine::TestBenchConfiguration> bench_configs;
  std::optional<spec::PlanSet> plans;
  std::optional<product::ProductModel> product;

  const model::ConcreteScenario* find_concrete(const std::string& id) const;
  const model::LogicalScenario* find_logical(const std::string& id) const;
  const engine::TestBench* find_bench(const std::string& id) const;
  const engine::TestBenchConfiguration* find_bench_config(
      const std::string& id) const;
};

Campaign load_campaign(const std::filesystem::path& path);

/// Validates every artifact in the campaign plus the cross references
/// between them.
ValidationReport validate_campaign(const Campaign& campaign);

struct FileValidation {
  FileType type;
  ValidationReport report;
};

/// Type-dispatched validation of a single file.
FileValidation validate_file(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace scentest::io
