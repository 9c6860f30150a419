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

#include "core/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "core/concretizer.hpp"
#include "core/errors.hpp"

namespace scentest::model {

namespace {

std::string idx(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

const ParameterRange* find_param(const LogicalScenario& l,
                                 const std::string& name) {
  for (const ParameterRange& p : l.parameters) {
    if (p.name == name) {
      return &p;
    }
  }
  return nullptr;
}

void check_template_field(const LogicalScenario& l, const ScalarOrParam& f,
                          const std::string& path, ValidationReport& report) {
  if (f.is_param()) {
    if (!find_param(l, f.param)) {
      report.add(path, "unbacked range field: no parameter named '" + f.param +
                           "' is declared");
    }
  } else if (!f.fixed) {
    report.add(path, "field has neither a fixed value nor a parameter reference");
  } else if (!units::find_unit(f.fixed->unit)) {
    report.add(path, "unknown unit tag '" + f.fixed->unit + "'");
  }
}

std::size_t count_egos(const std::vector<MovableObject>& objects) {
  return static_cast<std::size_t>(
      std::count_if(objects.begin(), objects.end(), [](const MovableObject& o) {
        return o.kind == ObjectKind::ego_vehicle;
      }));
}

template <typename Objects>
bool has_actor(const Objects& objects, const std::string& id) {
  return std::any_of(objects.begin(), objects.end(),
                     [&](const auto& o) { return o.id == id; });
}

template <typename Objects>
void check_owners(const Objects& objects,
                  const std::vector<GoalValue>& goals,
                  const std::vector<SelfRepresentation>& reps,
                  ValidationReport& report) {
  for (std::size_t i = 0; i < goals.size(); ++i) {
    if (!has_actor(objects, goals[i].owner)) {
      report.add(idx("goals_values", i) + ".owner",
                 "owner '" + goals[i].owner + "' is not an actor in the scenario");
    }
  }
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (!has_actor(objects, reps[i].owner)) {
      report.add(idx("self_representations", i) + ".owner",
                 "owner '" + reps[i].owner +
                     "' does not reference an existing actor or observer");
    }
  }
}

std::multiset<ObjectKind> object_kinds(const ConcreteScenario& c) {
  std::multiset<ObjectKind> kinds;
  for (const MovableObject& o : c.objects) {
    kinds.insert(o.kind);
  }
  return kinds;
}

std::multiset<ObjectKind> object_kinds(const LogicalScenario& l) {
  std::multiset<ObjectKind> kinds;
  for (const MovableObjectTemplate& o : l.objects) {
    kinds.insert(o.kind);
  }
  return kinds;
}

std::multiset<EventEffect::Type> event_kinds(const ConcreteScenario& c) {
  std::multiset<EventEffect::Type> kinds;
  for (const ScenarioEvent& e : c.events) {
    kinds.insert(e.effect.type);
  }
  return kinds;
}

std::multiset<EventEffect::Type> event_kinds(const LogicalScenario& l) {
  std::multiset<EventEffect::Type> kinds;
  for (const ScenarioEventTemplate& e : l.events) {
    kinds.insert(e.type);
  }
  return kinds;
}

}  // namespace

Scene ConcreteScenario::initial_scene() const {
  Scene scene;
  scene.time = 0.0;
  scene.scenery = scenery;
  for (const MovableObject& o : objects) {
    scene.object_states[o.id] = o.initial;
  }
  scene.self_representations = self_representations;
  return scene;
}

ValidationReport validate_functional(const FunctionalScenario& s) {
  ValidationReport report;
  if (s.id.empty()) {
    report.add("id", "identifier must be non-empty");
  }
  if (s.narrative.empty()) {
    report.add("narrative", "narrative must be non-empty");
  }
  return report;
}

ValidationReport validate_logical(const LogicalScenario& s) {
  ValidationReport report;
  if (s.id.empty()) {
    report.add("id", "identifier must be non-empty");
  }

  std::set<std::string> param_names;
  for (std::size_t i = 0; i < s.parameters.size(); ++i) {
    const ParameterRange& p = s.parameters[i];
    const std::string path = idx("parameters", i);
    if (p.name.empty()) {
      report.add(path + ".name", "parameter name must be non-empty");
    } else if (!param_names.insert(p.name).second) {
      report.add(path + ".name", "duplicate parameter name '" + p.name + "'");
    }
    if (!units::find_unit(p.unit)) {
      report.add(path + ".unit", "unknown unit tag '" + p.unit + "'");
    }
    if (!(p.min <= p.max)) {
      report.add(path, "min <= max violated (" + std::to_string(p.min) + " > " +
                           std::to_string(p.max) + ")");
    }
    if (p.distribution && p.distribution->type == Distribution::Type::normal &&
        !(p.distribution->stddev > 0.0)) {
      report.add(path + ".distribution.stddev",
                 "normal distribution requires stddev > 0");
    }
    for (std::size_t k = 0; k < p.correlations.size(); ++k) {
      std::string err;
      if (!concretizer::correlation_syntax_ok(p.correlations[k], param_names,
                                              s.parameters, &err)) {
        report.add(path + "." + idx("correlations", k), err);
      }
    }
  }

  if (s.scenery.lane_count < 1) {
    report.add("scenery.lane_count", "lane_count >= 1 violated");
  }
  check_template_field(s, s.scenery.lane_width, "scenery.lane_width", report);
  check_template_field(s, s.scenery.curvature, "scenery.curvature", report);
  check_template_field(s, s.scenery.ambient_temperature,
                       "scenery.ambient_temperature", report);
  if (!s.scenery.lane_width.is_param() && s.scenery.lane_width.fixed &&
      !(s.scenery.lane_width.fixed->value > 0.0)) {
    report.add("scenery.lane_width", "lane_width > 0 violated");
  }

  std::size_t egos = 0;
  std::set<std::string> object_ids;
  for (std::size_t i = 0; i < s.objects.size(); ++i) {
    const MovableObjectTemplate& o = s.objects[i];
    const std::string path = idx("objects", i);
    if (o.id.empty()) {
      report.add(path + ".id", "object id must be non-empty");
    } else if (!object_ids.insert(o.id).second) {
      report.add(path + ".id", "duplicate object id '" + o.id + "'");
    }
    if (o.kind == ObjectKind::ego_vehicle) {
      ++egos;
    }
    check_template_field(s, o.position, path + ".initial.position", report);
    check_template_field(s, o.speed, path + ".initial.speed", report);
  }
  if (egos != 1) {
    report.add("objects", "exactly one ego: expected exactly one movable object "
                          "of kind ego_vehicle, found " +
                              std::to_string(egos));
  }

  for (std::size_t i = 0; i < s.events.size(); ++i) {
    const ScenarioEventTemplate& e = s.events[i];
    const std::string path = idx("events", i);
    if (e.id.empty()) {
      report.add(path + ".id", "event id must be non-empty");
    }
    check_template_field(s, e.trigger_time, path + ".trigger_time", report);
    if (e.trigger_time.is_param()) {
      if (const ParameterRange* p = find_param(s, e.trigger_time.param);
          p && p->min < 0.0) {
        report.add(path + ".trigger_time",
                   "trigger_time >= 0 violated: backing range allows " +
                       std::to_string(p->min));
      }
    } else if (e.trigger_time.fixed && e.trigger_time.fixed->si() < 0.0) {
      report.add(path + ".trigger_time", "trigger_time >= 0 violated");
    }
    if (e.type == EventEffect::Type::activate_acc) {
      check_template_field(s, e.set_speed, path + ".effect.set_speed", report);
    }
    if (e.type == EventEffect::Type::set_object_speed) {
      check_template_field(s, e.speed, path + ".effect.speed", report);
      if (!object_ids.count(e.object_id)) {
        report.add(path + ".effect.object_id",
                   "unknown object '" + e.object_id + "'");
      }
    }
  }

  check_owners(s.objects, s.goals_values, s.self_representations, report);

  check_template_field(s, s.duration, "duration", report);
  if (!s.duration.is_param() && s.duration.fixed &&
      !(s.duration.fixed->si() > 0.0)) {
    report.add("duration", "duration > 0 violated");
  }
  if (s.duration.is_param()) {
    if (const ParameterRange* p = find_param(s, s.duration.param);
        p && !(p->min > 0.0)) {
      report.add("duration", "duration > 0 violated: backing range allows " +
                                 std::to_string(p->min));
    }
  }
  return report;
}

ValidationReport validate_concrete(const ConcreteScenario& s,
                                   const LogicalScenario* parent) {
  ValidationReport report;
  if (s.id.empty()) {
    report.add("id", "identifier must be non-empty");
  }
  if (!(s.duration > 0.0)) {
    report.add("duration", "duration > 0 violated: a scenario spans a strictly "
                           "positive amount of time");
  }

  if (s.scenery.lane_count < 1) {
    report.add("scenery.lane_count", "lane_count >= 1 violated");
  }
  if (!(s.scenery.lane_width > 0.0)) {
    report.add("scenery.lane_width", "lane_width > 0 violated");
  }

  const std::size_t egos = count_egos(s.objects);
  if (egos != 1) {
    report.add("objects", "exactly one ego: expected exactly one movable object "
                          "of kind ego_vehicle, found " +
                              std::to_string(egos));
  }
  std::set<std::string> object_ids;
  for (std::size_t i = 0; i < s.objects.size(); ++i) {
    const MovableObject& o = s.objects[i];
    if (o.id.empty()) {
      report.add(idx("objects", i) + ".id", "object id must be non-empty");
    } else if (!object_ids.insert(o.id).second) {
      report.add(idx("objects", i) + ".id",
                 "duplicate object id '" + o.id + "'");
    }
    if (o.initial.lane_index < 0 ||
        o.initial.lane_index >= s.scenery.lane_count) {
      report.add(idx("objects", i) + ".initial.lane_index",
                 "lane_index outside [0, lane_count)");
    }
  }

  for (std::size_t i = 0; i < s.events.size(); ++i) {
    const ScenarioEvent& e = s.events[i];
    if (e.trigger_time < 0.0) {
      report.add(idx("events", i) + ".trigger_time",
                 "trigger_time >= 0 violated");
    }
    if (e.effect.type == EventEffect::Type::set_object_speed &&
        !object_ids.count(e.effect.object_id)) {
      report.add(idx("events", i) + ".effect.object_id",
                 "unknown object '" + e.effect.object_id + "'");
    }
  }

  check_owners(s.objects, s.goals_values, s.self_representations, report);

  for (const auto& [name, q] : s.parameter_values) {
    if (!units::find_unit(q.unit)) {
      report.add("parameter_values." + name,
                 "unknown unit tag '" + q.unit + "'");
    }
  }

  if (parent) {
    for (const ParameterRange& p : parent->parameters) {
      if (!s.parameter_values.count(p.name)) {
        report.add("parameter_values",
                   "missing value for parameter '" + p.name +
                       "' of logical scenario '" + parent->id + "'");
      }
    }
    for (const auto& [name, q] : s.parameter_values) {
      (void)q;
      if (!find_param(*parent, name)) {
        report.add("parameter_values." + name,
                   "no such parameter in logical scenario '" + parent->id + "'");
      }
    }
  }
  return report;
}

ValidationReport validate_drive(const RealWorldTestDrive& d) {
  ValidationReport report;
  if (d.id.empty()) {
    report.add("id", "identifier must be non-empty");
  }
  if (d.recorded.empty()) {
    report.add("recorded_scenarios",
               "a real-world test drive contains one or more concrete scenarios");
  }
  for (std::size_t i = 0; i < d.recorded.size(); ++i) {
    report.merge(idx("recorded_scenarios", i),
                 validate_concrete(d.recorded[i]));
  }
  return report;
}

bool is_member(const ConcreteScenario& c, const LogicalScenario& l) {
  for (const ParameterRange& p : l.parameters) {
    auto it = c.parameter_values.find(p.name);
    if (it == c.parameter_values.end()) {
      throw Error(ErrorCode::missing_parameter,
                  "scenario '" + c.id + "' lacks a value for parameter '" +
                      p.name + "' of logical scenario '" + l.id + "'");
    }
    if (!units::same_dimension(it->second.unit, p.unit)) {
      throw Error(ErrorCode::unit,
                  "parameter '" + p.name + "': unit '" + it->second.unit +
                      "' is not comparable with range unit '" + p.unit + "'");
    }
    const double value = it->second.si();
    const double lo = units::to_si(p.min, p.unit);
    const double hi = units::to_si(p.max, p.unit);
    if (value < lo || value > hi) {  // inclusive bounds
      return false;
    }
  }
  return object_kinds(c) == object_kinds(l) && event_kinds(c) == event_kinds(l);
}

}  // namespace scentest::model
