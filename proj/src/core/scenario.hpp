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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/units.hpp"
#include "core/validation.hpp"

namespace scentest::model {

/// A template field: either a fixed quantity or a reference to a named
/// parameter range of the owning logical scenario.
struct ScalarOrParam {
  std::optional<units::Quantity> fixed;
  std::string param;

  bool is_param() const { return !param.empty(); }

  static ScalarOrParam of(double value, std::string unit) {
    return {units::Quantity{value, std::move(unit)}, ""};
  }
  static ScalarOrParam ref(std::string name) {
    return {std::nullopt, std::move(name)};
  }
};

struct StationaryElement {
  std::string label;
  double position = 0.0;        // m along the road
  double lateral_offset = 0.0;  // m, left of lane 0 centreline
};

// Straight/constant-curvature multi-lane road plus labelled props.
struct SceneryFixed {
  int lane_count = 1;
  double lane_width = 3.5;            // m
  double curvature = 0.0;             // 1/m
  double ambient_temperature = 20.0;  // degC
  std::vector<StationaryElement> stationary;
};

struct SceneryTemplate {
  int lane_count = 1;
  ScalarOrParam lane_width;
  ScalarOrParam curvature;
  ScalarOrParam ambient_temperature;
  std::vector<StationaryElement> stationary;
};

enum class ObjectKind { ego_vehicle, other_vehicle, other };
enum class BehaviorKind { test_object, constant_speed, scripted };

struct ObjectState {
  double position = 0.0;  // m along lane
  int lane_index = 0;
  double speed = 0.0;         // m/s
  double acceleration = 0.0;  // m/s^2 applied over the next step
};

struct MovableObject {
  std::string id;
  ObjectKind kind = ObjectKind::other_vehicle;
  ObjectState initial;
  BehaviorKind behavior = BehaviorKind::constant_speed;
};

struct MovableObjectTemplate {
  std::string id;
  ObjectKind kind = ObjectKind::other_vehicle;
  ScalarOrParam position;
  int lane_index = 0;
  ScalarOrParam speed;
  BehaviorKind behavior = BehaviorKind::constant_speed;
};

struct SelfRepresentation {
  std::string owner;
  std::map<std::string, bool> skills;
  std::map<std::string, double> states;
};

struct EventEffect {
  enum class Type { activate_acc, deactivate_acc, set_object_speed };
  Type type = Type::activate_acc;
  double set_speed = 0.0;  // m/s, activate_acc
  std::string object_id;   // set_object_speed
  double speed = 0.0;      // m/s, set_object_speed
};

struct ScenarioEvent {
  std::string id;
  double trigger_time = 0.0;  // s from scenario start
  EventEffect effect;
};

struct ScenarioEventTemplate {
  std::string id;
  ScalarOrParam trigger_time;
  EventEffect::Type type = EventEffect::Type::activate_acc;
  ScalarOrParam set_speed;
  std::string object_id;
  ScalarOrParam speed;
};

enum class GoalKind { goal, value };
enum class Persistence { transient, permanent };

struct GoalValue {
  std::string owner;  // actor id
  GoalKind kind = GoalKind::goal;
  Persistence persistence = Persistence::transient;
  std::string description;  // e.g. maintain_set_speed
  std::map<std::string, std::string> attributes;  // e.g. desired_gap: large
};

struct Relationship {
  std::string type;  // built-ins use "follows"
  std::string a;
  std::string b;
};

/// Immutable snapshot at one point in time.
struct Scene {
  double time = 0.0;
  SceneryFixed scenery;
  std::map<std::string, ObjectState> object_states;
  std::vector<SelfRepresentation> self_representations;
  std::vector<Relationship> relationships;
};

struct FunctionalScenario {
  std::string id;
  std::string narrative;
  std::vector<std::string> vocabulary_tags;
};

struct Distribution {
  enum class Type { uniform, normal };
  Type type = Type::uniform;
  double mean = 0.0;
  double stddev = 0.0;
};

struct ParameterRange {
  std::string name;
  std::string unit;
  double min = 0.0;
  double max = 0.0;
  std::optional<Distribution> distribution;
  // Numeric conditions relating this parameter to others, e.g.
  // "set_speed <= initial_speed". Recorded and syntax-checked only.
  std::vector<std::string> correlations;
};

struct LogicalScenario {
  std::string id;
  std::string parent_functional;  // empty = none
  SceneryTemplate scenery;
  std::vector<MovableObjectTemplate> objects;
  std::vector<ScenarioEventTemplate> events;
  std::vector<ParameterRange> parameters;
  std::vector<GoalValue> goals_values;
  std::vector<SelfRepresentation> self_representations;
  ScalarOrParam duration;
};

struct ConcreteScenario {
  std::string id;
  std::string parent_logical;  // empty = none
  double duration = 0.0;       // s, > 0 (a scenario spans time; a scene does not)
  // Parameter values keep the unit they were declared in.
  std::map<std::string, units::Quantity> parameter_values;
  SceneryFixed scenery;
  std::vector<MovableObject> objects;
  std::vector<ScenarioEvent> events;
  std::vector<GoalValue> goals_values;
  std::vector<SelfRepresentation> self_representations;
  std::vector<std::string> notes;

  Scene initial_scene() const;
};

struct RealWorldTestDrive {
  std::string id;
  std::string date;
  std::string route;
  std::vector<ConcreteScenario> recorded;
};

ValidationReport validate_functional(const FunctionalScenario& s);
ValidationReport validate_logical(const LogicalScenario& s);

/// Standalone invariants, plus parameter coverage against the parent
/// logical scenario when one is supplied.
ValidationReport validate_concrete(const ConcreteScenario& s,
                                   const LogicalScenario* parent = nullptr);

ValidationReport validate_drive(const RealWorldTestDrive& d);

/// True iff every parameter value of `c` lies inside the corresponding
/// range of `l` (inclusive bounds) and the object/event structure matches
/// the templates. Throws Error{missing_parameter} when `c` lacks a value
/// for a parameter of `l`.
bool is_member(const ConcreteScenario& c, const LogicalScenario& l);

}  // namespace scentest::model
