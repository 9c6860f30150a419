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

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/condition.hpp"
#include "core/scenario.hpp"
#include "core/units.hpp"
#include "core/validation.hpp"

namespace scentest::spec {

// ---------------------------------------------------------------------------
// Metrics

struct MetricDef {
  enum class Formula { ego_speed, average_ego_deceleration, time_to_collision };

  std::string name;  // the evaluation metric name, e.g. "Ego_speed"
  Formula formula = Formula::ego_speed;
  double window = 0.0;  // s, average_ego_deceleration only, > 0
  std::string output_unit;
};

struct MetricCatalog {
  std::vector<MetricDef> metrics;

  const MetricDef* find(const std::string& name) const;
};

ValidationReport validate_metric_catalog(const MetricCatalog& c);

// ---------------------------------------------------------------------------
// Criteria

struct Threshold {
  enum class Direction { must_not_exceed, must_not_fall_below };
  units::Quantity value;
  Direction direction = Direction::must_not_exceed;
};

struct EvaluationScale {
  struct Breakpoint {
    units::Quantity metric_value;  // declared unit kept for rendering
    double fulfillment = 0.0;      // percent, [0, 100]
  };
  std::vector<Breakpoint> breakpoints;  // sorted by metric value
  double out_of_domain_fulfillment = 0.0;

  /// Piecewise-linear lookup over SI metric values; outside the breakpoint
  /// domain the declared out-of-domain fulfillment applies.
  double fulfillment_at(double value_si) const;
};

struct ApplicationPeriod {
  struct End {
    enum class Type { condition_no_longer_fulfilled, elapsed, event };
    Type type = Type::condition_no_longer_fulfilled;
    double elapsed = 0.0;  // s
    std::string event_id;
  };

  std::string start_text;  // condition source as written
  condition::Expr start;
  End end;
};

enum class CriterionScope { scene, scenario, procedure, cross_procedure };

struct EvaluationCriterion {
  std::string id;
  std::string metric;  // EvaluationMetricName reference
  // Exactly one of the two judges.
  std::optional<Threshold> threshold;
  std::optional<EvaluationScale> scale;
  ApplicationPeriod period;
  CriterionScope scope = CriterionScope::scenario;
};

// ---------------------------------------------------------------------------
// Cases, procedures, specification

struct TestCase {
  std::string id;
  std::string name;      // display name, e.g. "Test Case SpeedControl"
  std::string scenario;  // ConcreteScenario id
  std::vector<EvaluationCriterion> criteria;  // >= 1
};

struct TestProcedure {
  std::string id;
  std::vector<std::string> cases;  // execution order, >= 1
  std::string setup;
  std::string wrapup;
  std::vector<EvaluationCriterion> cross_case_criteria;
  std::vector<std::string> bench_configs;  // 0..*
};

struct TestDesignSpec {
  std::vector<std::string> features_to_test;
  std::string test_conditions;
  std::string case_format;       // format tag, bench dependent
  std::string procedure_format;
};

struct TestSpecification {
  TestDesignSpec design;
  std::vector<TestCase> cases;
  std::vector<TestProcedure> procedures;

  const TestCase* find_case(const std::string& id) const;
  const TestProcedure* find_procedure(const std::string& id) const;
};

// ---------------------------------------------------------------------------
// Test planning metadata

struct TestObjective {
  std::string id;
  std::string description;
  std::vector<TestObjective> children;
};

struct TestObjectRef {
  enum class Kind { vehicle, system, component, software_unit };
  std::string id;
  std::string name;
  std::string version;  // identifies the exact object under test
  Kind kind = Kind::component;
};

struct TestScope {
  struct Excluded {
    std::string feature;
    std::string rationale;
  };
  std::vector<std::string> included_features;  // requirement ids
  std::vector<Excluded> excluded_features;
};

enum class TestLevel { vehicle, system, component, unit };

struct TestPlan {
  std::string id;
  TestLevel level = TestLevel::component;
  std::vector<TestObjective> objectives;  // non-empty
  TestObjectRef test_object;
  TestScope scope;
  std::string strategy_notes;
  std::string design_technique;
  std::string derived_from;  // sub-process test plan id
};

/// Plan documents above the test plan are opaque id + title records with
/// parent links; their content is organizational.
struct PlanDocument {
  enum class Kind {
    project_plan,
    organizational_test_strategy,
    project_test_plan,
    sub_process_test_plan,
  };
  std::string id;
  Kind kind = Kind::project_plan;
  std::string title;
  std::vector<std::string> parents;
};

struct PlanSet {
  std::vector<PlanDocument> documents;
  std::vector<TestPlan> test_plans;
};

ValidationReport validate_plans(const PlanSet& plans);

// ---------------------------------------------------------------------------
// Operations

/// Signals and flags the execution engine can provide; application-period
/// conditions may only reference these.
struct SignalCatalog {
  std::set<std::string> signals;
  std::set<std::string> flags;

  static SignalCatalog builtin();
};

/// Constructs a test case with a stable id derived from the scenario id and
/// a hash of the criteria. Throws Error{empty_criteria}.
TestCase build_test_case(const model::ConcreteScenario& scenario,
                         std::vector<EvaluationCriterion> criteria);

struct SpecContext {
  const MetricCatalog* metrics = nullptr;
  const SignalCatalog* signals = nullptr;
  // Optional reference universes; checks are skipped when absent.
  const std::set<std::string>* scenario_ids = nullptr;
  const std::set<std::string>* bench_config_ids = nullptr;
};

ValidationReport validate_specification(const TestSpecification& spec,
                                        const SpecContext& ctx);

std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace scentest::spec
