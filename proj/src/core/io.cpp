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

#include "core/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"

namespace scentest::io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& origin, const std::string& message) {
  throw Error(ErrorCode::parse, origin + ": " + message);
}

json parse_document(const std::string& text, const std::string& origin,
                    FileType expected) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    bad(origin, "not valid JSON");
  }
  if (!j.is_object()) {
    bad(origin, "top-level value must be an object");
  }
  if (!j.contains("format_version") || !j["format_version"].is_number_integer()) {
    bad(origin, "missing integer 'format_version'");
  }
  if (j["format_version"].get<int>() != kFormatVersion) {
    throw Error(ErrorCode::unsupported_version,
                origin + ": unsupported format_version " +
                    std::to_string(j["format_version"].get<int>()) +
                    " (expected " + std::to_string(kFormatVersion) + ")");
  }
  if (!j.contains("file_type") || !j["file_type"].is_string()) {
    bad(origin, "missing 'file_type'");
  }
  const std::string type = j["file_type"].get<std::string>();
  if (type != to_string(expected)) {
    bad(origin, "expected file_type '" + std::string(to_string(expected)) +
                    "', found '" + type + "'");
  }
  return j;
}

json load_document(const std::filesystem::path& path, FileType expected) {
  return parse_document(read_file(path), path.string(), expected);
}

// --- field helpers ---------------------------------------------------------

std::string str_field(const json& j, const char* key, const std::string& origin) {
  if (!j.contains(key) || !j[key].is_string()) {
    bad(origin, std::string("missing string field '") + key + "'");
  }
  return j[key].get<std::string>();
}

std::string str_or(const json& j, const char* key, const std::string& fallback) {
  if (j.contains(key) && j[key].is_string()) {
    return j[key].get<std::string>();
  }
  return fallback;
}

units::Quantity quantity_field(const json& j, const std::string& origin) {
  if (!j.is_object() || !j.contains("value") || !j.contains("unit") ||
      !j["value"].is_number() || !j["unit"].is_string()) {
    bad(origin, "a physical quantity must be {\"value\": <number>, "
                "\"unit\": \"<tag>\"}");
  }
  return {j["value"].get<double>(), j["unit"].get<std::string>()};
}

units::Quantity quantity_field(const json& j, const char* key,
                               const std::string& origin) {
  if (!j.contains(key)) {
    bad(origin, std::string("missing quantity field '") + key + "'");
  }
  return quantity_field(j[key], origin + "." + key);
}

model::ScalarOrParam scalar_or_param(const json& j, const char* key,
                                     const std::string& origin) {
  if (!j.contains(key)) {
    bad(origin, std::string("missing field '") + key + "'");
  }
  const json& f = j[key];
  if (f.is_object() && f.contains("param")) {
    return model::ScalarOrParam::ref(f["param"].get<std::string>());
  }
  return {quantity_field(f, origin + "." + key), ""};
}

template <typename Enum>
Enum enum_field(const json& j, const char* key, const std::string& origin,
                std::initializer_list<std::pair<const char*, Enum>> mapping) {
  const std::string value = str_field(j, key, origin);
  for (const auto& [name, e] : mapping) {
    if (value == name) {
      return e;
    }
  }
  std::string allowed;
  for (const auto& [name, e] : mapping) {
    (void)e;
    if (!allowed.empty()) {
      allowed += ", ";
    }
    allowed += name;
  }
  bad(origin, std::string("bad value '") + value + "' for '" + key +
                  "' (one of: " + allowed + ")");
}

model::ObjectKind object_kind(const json& j, const std::string& origin) {
  return enum_field<model::ObjectKind>(
      j, "kind", origin,
      {{"ego_vehicle", model::ObjectKind::ego_vehicle},
       {"other_vehicle", model::ObjectKind::other_vehicle},
       {"other", model::ObjectKind::other}});
}

model::BehaviorKind behavior_kind(const json& j, const std::string& origin) {
  if (!j.contains("behavior")) {
    return model::BehaviorKind::constant_speed;
  }
  return enum_field<model::BehaviorKind>(
      j, "behavior", origin,
      {{"test_object", model::BehaviorKind::test_object},
       {"constant_speed", model::BehaviorKind::constant_speed},
       {"scripted", model::BehaviorKind::scripted}});
}

model::EventEffect::Type effect_type(const json& j, const std::string& origin) {
  return enum_field<model::EventEffect::Type>(
      j, "type", origin,
      {{"activate_acc", model::EventEffect::Type::activate_acc},
       {"deactivate_acc", model::EventEffect::Type::deactivate_acc},
       {"set_object_speed", model::EventEffect::Type::set_object_speed}});
}

std::vector<model::StationaryElement> stationary_elements(
    const json& j, const std::string& origin) {
  std::vector<model::StationaryElement> out;
  if (!j.contains("stationary_elements")) {
    return out;
  }
  for (const json& e : j["stationary_elements"]) {
    model::StationaryElement el;
    el.label = str_field(e, "label", origin);
    el.position = quantity_field(e, "position", origin).si();
    el.lateral_offset = quantity_field(e, "lateral_offset", origin).si();
    out.push_back(std::move(el));
  }
  return out;
}

std::vector<model::GoalValue> goals_values(const json& j,
                                           const std::string& origin) {
  std::vector<model::GoalValue> out;
  if (!j.contains("goals_values")) {
    return out;
  }
  for (const json& g : j["goals_values"]) {
    model::GoalValue gv;
    gv.owner = str_field(g, "owner", origin);
    gv.kind = enum_field<model::GoalKind>(
        g, "kind", origin,
        {{"goal", model::GoalKind::goal}, {"value", model::GoalKind::value}});
    gv.persistence = enum_field<model::Persistence>(
        g, "persistence", origin,
        {{"transient", model::Persistence::transient},
         {"permanent", model::Persistence::permanent}});
    gv.description = str_field(g, "description", origin);
    if (g.contains("attributes")) {
      for (auto it = g["attributes"].begin(); it != g["attributes"].end(); ++it) {
        gv.attributes[it.key()] = it.value().get<std::string>();
      }
    }
    out.push_back(std::move(gv));
  }
  return out;
}

std::vector<model::SelfRepresentation> self_representations(
    const json& j, const std::string& origin) {
  std::vector<model::SelfRepresentation> out;
  if (!j.contains("self_representations")) {
    return out;
  }
  for (const json& r : j["self_representations"]) {
    model::SelfRepresentation rep;
    rep.owner = str_field(r, "owner", origin);
    if (r.contains("skills")) {
      for (auto it = r["skills"].begin(); it != r["skills"].end(); ++it) {
        rep.skills[it.key()] = it.value().get<bool>();
      }
    }
    if (r.contains("states")) {
      for (auto it = r["states"].begin(); it != r["states"].end(); ++it) {
        rep.states[it.key()] = it.value().get<double>();
      }
    }
    out.push_back(std::move(rep));
  }
  return out;
}

// --- scenario files --------------------------------------------------------

model::LogicalScenario logical_from_json(const json& j,
                                         const std::string& origin) {
  model::LogicalScenario s;
  s.id = str_field(j, "id", origin);
  s.parent_functional = str_or(j, "parent_functional", "");

  if (j.contains("parameters")) {
    for (const json& p : j["parameters"]) {
      model::ParameterRange r;
      r.name = str_field(p, "name", origin);
      r.unit = str_field(p, "unit", origin);
      if (!p.contains("min") || !p.contains("max")) {
        bad(origin, "parameter '" + r.name + "' needs 'min' and 'max'");
      }
      r.min = p["min"].get<double>();
      r.max = p["max"].get<double>();
      if (p.contains("distribution")) {
        const json& d = p["distribution"];
        model::Distribution dist;
        const std::string type = str_field(d, "type", origin);
        if (type == "uniform") {
          dist.type = model::Distribution::Type::uniform;
        } else if (type == "normal") {
          dist.type = model::Distribution::Type::normal;
          dist.mean = d.value("mean", 0.0);
          dist.stddev = d.value("stddev", 0.0);
        } else {
          bad(origin, "unknown distribution '" + type + "'");
        }
        r.distribution = dist;
      }
      if (p.contains("correlations")) {
        r.correlations = p["correlations"].get<std::vector<std::string>>();
      }
      s.parameters.push_back(std::move(r));
    }
  }

  if (!j.contains("scenery")) {
    bad(origin, "missing 'scenery'");
  }
  const json& sc = j["scenery"];
  s.scenery.lane_count = sc.value("lane_count", 1);
  s.scenery.lane_width = scalar_or_param(sc, "lane_width", origin + ".scenery");
  s.scenery.curvature = scalar_or_param(sc, "curvature", origin + ".scenery");
  s.scenery.ambient_temperature =
      scalar_or_param(sc, "ambient_temperature", origin + ".scenery");
  s.scenery.stationary = stationary_elements(sc, origin);

  if (j.contains("objects")) {
    for (const json& o : j["objects"]) {
      model::MovableObjectTemplate t;
      t.id = str_field(o, "id", origin);
      t.kind = object_kind(o, origin);
      t.behavior = behavior_kind(o, origin);
      if (!o.contains("initial")) {
        bad(origin, "object '" + t.id + "' needs 'initial'");
      }
      const json& init = o["initial"];
      t.position = scalar_or_param(init, "position", origin + ".initial");
      t.lane_index = init.value("lane_index", 0);
      t.speed = scalar_or_param(init, "speed", origin + ".initial");
      s.objects.push_back(std::move(t));
    }
  }

  if (j.contains("events")) {
    for (const json& e : j["events"]) {
      model::ScenarioEventTemplate t;
      t.id = str_field(e, "id", origin);
      t.trigger_time = scalar_or_param(e, "trigger_time", origin);
      if (!e.contains("effect")) {
        bad(origin, "event '" + t.id + "' needs 'effect'");
      }
      const json& eff = e["effect"];
      t.type = effect_type(eff, origin);
      if (t.type == model::EventEffect::Type::activate_acc) {
        t.set_speed = scalar_or_param(eff, "set_speed", origin + ".effect");
      } else if (t.type == model::EventEffect::Type::set_object_speed) {
        t.object_id = str_field(eff, "object_id", origin);
        t.speed = scalar_or_param(eff, "speed", origin + ".effect");
      }
      s.events.push_back(std::move(t));
    }
  }

  s.goals_values = goals_values(j, origin);
  s.self_representations = self_representations(j, origin);
  s.duration = scalar_or_param(j, "duration", origin);
  return s;
}

model::ConcreteScenario concrete_from_json(const json& j,
                                           const std::string& origin) {
  model::ConcreteScenario s;
  s.id = str_field(j, "id", origin);
  s.parent_logical = str_or(j, "parent_logical", "");
  s.duration = quantity_field(j, "duration", origin).si();

  if (j.contains("parameter_values")) {
    const json& pv = j["parameter_values"];
    for (auto it = pv.begin(); it != pv.end(); ++it) {
      s.parameter_values[it.key()] =
          quantity_field(it.value(), origin + ".parameter_values." + it.key());
    }
  }

  if (!j.contains("initial_scene")) {
    bad(origin, "a concrete scenario starts with an 'initial_scene'");
  }
  const json& scene = j["initial_scene"];
  if (!scene.contains("scenery")) {
    bad(origin, "initial_scene needs 'scenery'");
  }
  const json& sc = scene["scenery"];
  s.scenery.lane_count = sc.value("lane_count", 1);
  s.scenery.lane_width = quantity_field(sc, "lane_width", origin).si();
  s.scenery.curvature = quantity_field(sc, "curvature", origin).si();
  s.scenery.ambient_temperature =
      quantity_field(sc, "ambient_temperature", origin).si();
  s.scenery.stationary = stationary_elements(sc, origin);

  if (scene.contains("objects")) {
    for (const json& o : scene["objects"]) {
      model::MovableObject m;
      m.id = str_field(o, "id", origin);
      m.kind = object_kind(o, origin);
      m.behavior = behavior_kind(o, origin);
      m.initial.position = quantity_field(o, "position", origin).si();
      m.initial.lane_index = o.value("lane_index", 0);
      m.initial.speed = quantity_field(o, "speed", origin).si();
      s.objects.push_back(std::move(m));
    }
  }
  s.self_representations = self_representations(scene, origin);

  if (j.contains("events")) {
    for (const json& e : j["events"]) {
      model::ScenarioEvent ev;
      ev.id = str_field(e, "id", origin);
      ev.trigger_time = quantity_field(e, "trigger_time", origin).si();
      if (!e.contains("effect")) {
        bad(origin, "event '" + ev.id + "' needs 'effect'");
      }
      const json& eff = e["effect"];
      ev.effect.type = effect_type(eff, origin);
      if (ev.effect.type == model::EventEffect::Type::activate_acc) {
        ev.effect.set_speed = quantity_field(eff, "set_speed", origin).si();
      } else if (ev.effect.type == model::EventEffect::Type::set_object_speed) {
        ev.effect.object_id = str_field(eff, "object_id", origin);
        ev.effect.speed = quantity_field(eff, "speed", origin).si();
      }
      s.events.push_back(std::move(ev));
    }
  }

  s.goals_values = goals_values(j, origin);
  if (j.contains("notes")) {
    s.notes = j["notes"].get<std::vector<std::string>>();
  }
  return s;
}

// --- spec files -------------------------------------------------------------

spec::EvaluationCriterion criterion_from_json(const json& j,
                                              const std::string& origin) {
  spec::EvaluationCriterion c;
  c.id = str_field(j, "id", origin);
  c.metric = str_field(j, "metric", origin);
  c.scope = enum_field<spec::CriterionScope>(
      j, "scope", origin,
      {{"scene", spec::CriterionScope::scene},
       {"scenario", spec::CriterionScope::scenario},
       {"procedure", spec::CriterionScope::procedure},
       {"cross_procedure", spec::CriterionScope::cross_procedure}});

  if (j.contains("threshold")) {
    spec::Threshold t;
    t.value = quantity_field(j["threshold"], "value", origin + ".threshold");
    t.direction = enum_field<spec::Threshold::Direction>(
        j["threshold"], "direction", origin,
        {{"must_not_exceed", spec::Threshold::Direction::must_not_exceed},
         {"must_not_fall_below",
          spec::Threshold::Direction::must_not_fall_below}});
    c.threshold = std::move(t);
  }
  if (j.contains("scale")) {
    spec::EvaluationScale scale;
    for (const json& bp : j["scale"].at("breakpoints")) {
      spec::EvaluationScale::Breakpoint b;
      b.metric_value = quantity_field(bp, "metric_value", origin + ".scale");
      b.fulfillment = bp.at("fulfillment").get<double>();
      scale.breakpoints.push_back(std::move(b));
    }
    scale.out_of_domain_fulfillment =
        j["scale"].value("out_of_domain_fulfillment", 0.0);
    c.scale = std::move(scale);
  }

  if (!j.contains("application_period")) {
    bad(origin, "criterion '" + c.id + "' needs an 'application_period'");
  }
  const json& ap = j["application_period"];
  c.period.start_text = str_field(ap, "start", origin + ".application_period");
  condition::ParseResult parsed = condition::parse(c.period.start_text);
  if (const auto* err = std::get_if<condition::SyntaxError>(&parsed)) {
    bad(origin, "criterion '" + c.id + "' start condition: " + err->to_string());
  }
  c.period.start = std::get<condition::Expr>(std::move(parsed));
  if (ap.contains("end")) {
    const json& end = ap["end"];
    c.period.end.type = enum_field<spec::ApplicationPeriod::End::Type>(
        end, "type", origin,
        {{"condition_no_longer_fulfilled",
          spec::ApplicationPeriod::End::Type::condition_no_longer_fulfilled},
         {"elapsed", spec::ApplicationPeriod::End::Type::elapsed},
         {"event", spec::ApplicationPeriod::End::Type::event}});
    if (c.period.end.type == spec::ApplicationPeriod::End::Type::elapsed) {
      c.period.end.elapsed = quantity_field(end, "duration", origin).si();
    }
    if (c.period.end.type == spec::ApplicationPeriod::End::Type::event) {
      c.period.end.event_id = str_field(end, "event", origin);
    }
  }
  return c;
}

spec::TestSpecification test_spec_from_json(const json& j,
                                            const std::string& origin) {
  spec::TestSpecification s;
  if (j.contains("design")) {
    const json& d = j["design"];
    if (d.contains("features_to_test")) {
      s.design.features_to_test =
          d["features_to_test"].get<std::vector<std::string>>();
    }
    s.design.test_conditions = str_or(d, "test_conditions", "");
    s.design.case_format = str_or(d, "case_format", "");
    s.design.procedure_format = str_or(d, "procedure_format", "");
  }
  if (j.contains("cases")) {
    for (const json& c : j["cases"]) {
      spec::TestCase tc;
      tc.id = str_field(c, "id", origin);
      tc.name = str_or(c, "name", tc.id);
      tc.scenario = str_field(c, "scenario", origin);
      if (c.contains("criteria")) {
        for (const json& crit : c["criteria"]) {
          tc.criteria.push_back(
              criterion_from_json(crit, origin + ".cases." + tc.id));
        }
      }
      s.cases.push_back(std::move(tc));
    }
  }
  if (j.contains("procedures")) {
    for (const json& p : j["procedures"]) {
      spec::TestProcedure tp;
      tp.id = str_field(p, "id", origin);
      if (p.contains("cases")) {
        tp.cases = p["cases"].get<std::vector<std::string>>();
      }
      tp.setup = str_or(p, "setup", "");
      tp.wrapup = str_or(p, "wrapup", "");
      if (p.contains("cross_case_criteria")) {
        for (const json& crit : p["cross_case_criteria"]) {
          tp.cross_case_criteria.push_back(
              criterion_from_json(crit, origin + ".procedures." + tp.id));
        }
      }
      if (p.contains("bench_configs")) {
        tp.bench_configs = p["bench_configs"].get<std::vector<std::string>>();
      }
      s.procedures.push_back(std::move(tp));
    }
  }
  return s;
}

spec::MetricCatalog metric_catalog_from_json(const json& j,
                                             const std::string& origin) {
  spec::MetricCatalog c;
  if (j.contains("metrics")) {
    for (const json& m : j["metrics"]) {
      spec::MetricDef def;
      def.name = str_field(m, "name", origin);
      if (!m.contains("formula")) {
        bad(origin, "metric '" + def.name + "' needs a 'formula'");
      }
      def.formula = enum_field<spec::MetricDef::Formula>(
          m["formula"], "type", origin,
          {{"ego_speed", spec::MetricDef::Formula::ego_speed},
           {"average_ego_deceleration",
            spec::MetricDef::Formula::average_ego_deceleration},
           {"time_to_collision",
            spec::MetricDef::Formula::time_to_collision}});
      if (def.formula == spec::MetricDef::Formula::average_ego_deceleration) {
        def.window = quantity_field(m["formula"], "window", origin).si();
      }
      def.output_unit = str_field(m, "output_unit", origin);
      c.metrics.push_back(std::move(def));
    }
  }
  return c;
}

// --- bench files -------------------------------------------------------------

engine::Element element_from_json(const json& j, const std::string& origin) {
  engine::Element e;
  e.id = str_field(j, "id", origin);
  e.role = enum_field<engine::ElementRole>(
      j, "role", origin,
      {{"vehicle_dynamics", engine::ElementRole::vehicle_dynamics},
       {"lead_vehicle_model", engine::ElementRole::lead_vehicle_model},
       {"event_scheduler", engine::ElementRole::event_scheduler},
       {"signal_recorder", engine::ElementRole::signal_recorder},
       {"test_object_adapter", engine::ElementRole::test_object_adapter}});
  if (j.contains("parameters")) {
    for (auto it = j["parameters"].begin(); it != j["parameters"].end(); ++it) {
      const json& v = it.value();
      if (v.is_string()) {
        e.parameters[it.key()] = v.get<std::string>();
      } else if (v.is_boolean()) {
        e.parameters[it.key()] = v.get<bool>();
      } else {
        e.parameters[it.key()] =
            quantity_field(v, origin + ".parameters." + it.key());
      }
    }
  }
  if (j.contains("sub_elements")) {
    for (const json& sub : j["sub_elements"]) {
      e.sub_elements.push_back(element_from_json(sub, origin));
    }
  }
  return e;
}

// --- plan / decomposition files ----------------------------------------------

spec::TestObjective objective_from_json(const json& j,
                                        const std::string& origin) {
  spec::TestObjective o;
  o.id = str_field(j, "id", origin);
  o.description = str_field(j, "description", origin);
  if (j.contains("children")) {
    for (const json& c : j["children"]) {
      o.children.push_back(objective_from_json(c, origin));
    }
  }
  return o;
}

product::DecompositionNode node_from_json(const json& j,
                                          const std::string& origin) {
  product::DecompositionNode n;
  n.id = str_field(j, "id", origin);
  n.kind = enum_field<product::NodeKind>(
      j, "kind", origin,
      {{"system", product::NodeKind::system},
       {"component", product::NodeKind::component},
       {"hardware_component", product::NodeKind::hardware_component},
       {"software_component", product::NodeKind::software_component},
       {"hardware_part", product::NodeKind::hardware_part},
       {"hardware_subpart", product::NodeKind::hardware_subpart},
       {"hardware_elementary_subpart",
        product::NodeKind::hardware_elementary_subpart},
       {"software_unit", product::NodeKind::software_unit}});
  if (j.contains("children")) {
    for (const json& c : j["children"]) {
      n.children.push_back(node_from_json(c, origin));
    }
  }
  return n;
}

// --- writers ------------------------------------------------------------------

ordered_json quantity_json(double value, const std::string& unit) {
  ordered_json q;
  q["value"] = value;
  q["unit"] = unit;
  return q;
}

ordered_json goals_values_json(const std::vector<model::GoalValue>& goals) {
  ordered_json out = ordered_json::array();
  for (const model::GoalValue& g : goals) {
    ordered_json gj;
    gj["owner"] = g.owner;
    gj["kind"] = g.kind == model::GoalKind::goal ? "goal" : "value";
    gj["persistence"] = g.persistence == model::Persistence::transient
                            ? "transient"
                            : "permanent";
    gj["description"] = g.description;
    if (!g.attributes.empty()) {
      ordered_json attrs;
      for (const auto& [k, v] : g.attributes) {
        attrs[k] = v;
      }
      gj["attributes"] = std::move(attrs);
    }
    out.push_back(std::move(gj));
  }
  return out;
}

}  // namespace

const char* to_string(FileType t) {
  switch (t) {
    case FileType::logical_scenario: return "logical_scenario";
    case FileType::concrete_scenario: return "concrete_scenario";
    case FileType::functional_scenario: return "functional_scenario";
    case FileType::test_drive: return "test_drive";
    case FileType::decomposition: return "decomposition";
    case FileType::test_spec: return "test_spec";
    case FileType::metric_catalog: return "metric_catalog";
    case FileType::bench: return "bench";
    case FileType::bench_config: return "bench_config";
    case FileType::plans: return "plans";
    case FileType::campaign: return "campaign";
    case FileType::test_report: return "test_report";
  }
  return "?";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io, "cannot read file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::io, "cannot write file '" + path.string() + "'");
  }
  out << content;
}

FileType detect_file_type(const std::filesystem::path& path) {
  json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("file_type") ||
      !j["file_type"].is_string()) {
    throw Error(ErrorCode::parse,
                path.string() + ": cannot determine file type");
  }
  const std::string type = j["file_type"].get<std::string>();
  for (FileType t :
       {FileType::logical_scenario, FileType::concrete_scenario,
        FileType::functional_scenario, FileType::test_drive,
        FileType::decomposition, FileType::test_spec, FileType::metric_catalog,
        FileType::bench, FileType::bench_config, FileType::plans,
        FileType::campaign, FileType::test_report}) {
    if (type == to_string(t)) {
      return t;
    }
  }
  throw Error(ErrorCode::parse,
              path.string() + ": unknown file type '" + type + "'");
}

model::LogicalScenario load_logical(const std::filesystem::path& path) {
  return logical_from_json(load_document(path, FileType::logical_scenario),
                           path.string());
}

model::ConcreteScenario load_concrete(const std::filesystem::path& path) {
  return concrete_from_json(load_document(path, FileType::concrete_scenario),
                            path.string());
}

model::FunctionalScenario load_functional(const std::filesystem::path& path) {
  json j = load_document(path, FileType::functional_scenario);
  model::FunctionalScenario s;
  s.id = str_field(j, "id", path.string());
  s.narrative = str_or(j, "narrative", "");
  if (j.contains("vocabulary_tags")) {
    s.vocabulary_tags = j["vocabulary_tags"].get<std::vector<std::string>>();
  }
  return s;
}

model::RealWorldTestDrive load_drive(const std::filesystem::path& path) {
  json j = load_document(path, FileType::test_drive);
  const std::string origin = path.string();
  model::RealWorldTestDrive d;
  d.id = str_field(j, "id", origin);
  if (j.contains("metadata")) {
    d.date = str_or(j["metadata"], "date", "");
    d.route = str_or(j["metadata"], "route", "");
  }
  if (j.contains("recorded_scenarios")) {
    for (const json& s : j["recorded_scenarios"]) {
      d.recorded.push_back(concrete_from_json(s, origin));
    }
  }
  return d;
}

product::ProductModel load_decomposition(const std::filesystem::path& path) {
  json j = load_document(path, FileType::decomposition);
  const std::string origin = path.string();
  product::ProductModel m;
  if (j.contains("vehicle_functions")) {
    for (const json& f : j["vehicle_functions"]) {
      product::VehicleFunction vf;
      vf.id = str_field(f, "id", origin);
      vf.description = str_or(f, "description", "");
      if (f.contains("implemented_by")) {
        vf.implemented_by = f["implemented_by"].get<std::vector<std::string>>();
      }
      m.functions.push_back(std::move(vf));
    }
  }
  if (j.contains("item_definitions")) {
    for (const json& d : j["item_definitions"]) {
      product::ItemDefinition def;
      def.id = str_field(d, "id", origin);
      def.functionality = str_or(d, "functionality", "");
      if (d.contains("functional_scenarios")) {
        def.functional_scenarios =
            d["functional_scenarios"].get<std::vector<std::string>>();
      }
      if (d.contains("derived_requirements")) {
        def.derived_requirements =
            d["derived_requirements"].get<std::vector<std::string>>();
      }
      m.definitions.push_back(std::move(def));
    }
  }
  if (j.contains("items")) {
    for (const json& i : j["items"]) {
      product::Item item;
      item.id = str_field(i, "id", origin);
      item.definition = str_or(i, "definition", "");
      if (i.contains("systems")) {
        item.systems = i["systems"].get<std::vector<std::string>>();
      }
      m.items.push_back(std::move(item));
    }
  }
  if (j.contains("requirements")) {
    for (const json& r : j["requirements"]) {
      product::Requirement req;
      req.id = str_field(r, "id", origin);
      req.statement = str_or(r, "statement", "");
      if (r.contains("verified_by")) {
        req.verified_by = r["verified_by"].get<std::vector<std::string>>();
      }
      m.requirements.push_back(std::move(req));
    }
  }
  if (j.contains("decompositions")) {
    for (const json& n : j["decompositions"]) {
      m.decompositions.push_back(node_from_json(n, origin));
    }
  }
  return m;
}

spec::TestSpecification load_test_spec(const std::filesystem::path& path) {
  return test_spec_from_json(load_document(path, FileType::test_spec),
                             path.string());
}

spec::MetricCatalog load_metric_catalog(const std::filesystem::path& path) {
  return metric_catalog_from_json(load_document(path, FileType::metric_catalog),
                                  path.string());
}

std::vector<engine::TestBench> load_benches(const std::filesystem::path& path) {
  json j = load_document(path, FileType::bench);
  const std::string origin = path.string();
  std::vector<engine::TestBench> out;
  if (j.contains("benches")) {
    for (const json& b : j["benches"]) {
      engine::TestBench bench;
      bench.id = str_field(b, "id", origin);
      bench.kind = enum_field<engine::BenchKind>(
          b, "kind", origin,
          {{"software_in_the_loop", engine::BenchKind::software_in_the_loop},
           {"hardware_in_the_loop_simulated",
            engine::BenchKind::hardware_in_the_loop_simulated},
           {"vehicle_in_the_loop_simulated",
            engine::BenchKind::vehicle_in_the_loop_simulated}});
      if (b.contains("capabilities")) {
        for (const json& c : b["capabilities"]) {
          bench.capabilities.insert(c.get<std::string>());
        }
      }
      out.push_back(std::move(bench));
    }
  }
  return out;
}

std::vector<engine::TestBenchConfiguration> load_bench_configs(
    const std::filesystem::path& path) {
  json j = load_document(path, FileType::bench_config);
  const std::string origin = path.string();
  std::vector<engine::TestBenchConfiguration> out;
  if (j.contains("configs")) {
    for (const json& c : j["configs"]) {
      engine::TestBenchConfiguration cfg;
      cfg.id = str_field(c, "id", origin);
      cfg.bench = str_field(c, "bench", origin);
      cfg.loop_mode = enum_field<engine::TestBenchConfiguration::LoopMode>(
          c, "loop_mode", origin,
          {{"closed", engine::TestBenchConfiguration::LoopMode::closed},
           {"open", engine::TestBenchConfiguration::LoopMode::open}});
      cfg.time_step = quantity_field(c, "time_step", origin).si();
      if (c.contains("elements")) {
        for (const json& e : c["elements"]) {
          cfg.elements.push_back(element_from_json(e, origin));
        }
      }
      out.push_back(std::move(cfg));
    }
  }
  return out;
}

spec::PlanSet load_plans(const std::filesystem::path& path) {
  json j = load_document(path, FileType::plans);
  const std::string origin = path.string();
  spec::PlanSet plans;
  if (j.contains("documents")) {
    for (const json& d : j["documents"]) {
      spec::PlanDocument doc;
      doc.id = str_field(d, "id", origin);
      doc.kind = enum_field<spec::PlanDocument::Kind>(
          d, "kind", origin,
          {{"project_plan", spec::PlanDocument::Kind::project_plan},
           {"organizational_test_strategy",
            spec::PlanDocument::Kind::organizational_test_strategy},
           {"project_test_plan", spec::PlanDocument::Kind::project_test_plan},
           {"sub_process_test_plan",
            spec::PlanDocument::Kind::sub_process_test_plan}});
      doc.title = str_or(d, "title", "");
      if (d.contains("parents")) {
        doc.parents = d["parents"].get<std::vector<std::string>>();
      }
      plans.documents.push_back(std::move(doc));
    }
  }
  if (j.contains("test_plans")) {
    for (const json& p : j["test_plans"]) {
      spec::TestPlan plan;
      plan.id = str_field(p, "id", origin);
      plan.level = enum_field<spec::TestLevel>(
          p, "level", origin,
          {{"vehicle", spec::TestLevel::vehicle},
           {"system", spec::TestLevel::system},
           {"component", spec::TestLevel::component},
           {"unit", spec::TestLevel::unit}});
      if (p.contains("objectives")) {
        for (const json& o : p["objectives"]) {
          plan.objectives.push_back(objective_from_json(o, origin));
        }
      }
      if (p.contains("test_object")) {
        const json& t = p["test_object"];
        plan.test_object.id = str_field(t, "id", origin);
        plan.test_object.name = str_or(t, "name", "");
        plan.test_object.version = str_or(t, "version", "");
        plan.test_object.kind = enum_field<spec::TestObjectRef::Kind>(
            t, "kind", origin,
            {{"vehicle", spec::TestObjectRef::Kind::vehicle},
             {"system", spec::TestObjectRef::Kind::system},
             {"component", spec::TestObjectRef::Kind::component},
             {"software_unit", spec::TestObjectRef::Kind::software_unit}});
      }
      if (p.contains("scope")) {
        const json& s = p["scope"];
        if (s.contains("included_features")) {
          plan.scope.included_features =
              s["included_features"].get<std::vector<std::string>>();
        }
        if (s.contains("excluded_features")) {
          for (const json& x : s["excluded_features"]) {
            plan.scope.excluded_features.push_back(
                {str_field(x, "feature", origin),
                 str_or(x, "rationale", "")});
          }
        }
      }
      plan.strategy_notes = str_or(p, "strategy_notes", "");
      plan.design_technique = str_or(p, "design_technique", "");
      plan.derived_from = str_or(p, "derived_from", "");
      plans.test_plans.push_back(std::move(plan));
    }
  }
  return plans;
}

std::string concrete_to_json(const model::ConcreteScenario& s) {
  ordered_json j;
  j["format_version"] = kFormatVersion;
  j["file_type"] = "concrete_scenario";
  j["id"] = s.id;
  if (!s.parent_logical.empty()) {
    j["parent_logical"] = s.parent_logical;
  }
  j["duration"] = quantity_json(s.duration, "s");

  ordered_json pv;
  for (const auto& [name, q] : s.parameter_values) {
    pv[name] = quantity_json(q.value, q.unit);
  }
  j["parameter_values"] = std::move(pv);

  ordered_json scene;
  ordered_json scenery;
  scenery["lane_count"] = s.scenery.lane_count;
  scenery["lane_width"] = quantity_json(s.scenery.lane_width, "m");
  scenery["curvature"] = quantity_json(s.scenery.curvature, "1/m");
  scenery["ambient_temperature"] =
      quantity_json(s.scenery.ambient_temperature, "degC");
  if (!s.scenery.stationary.empty()) {
    ordered_json els = ordered_json::array();
    for (const model::StationaryElement& e : s.scenery.stationary) {
      ordered_json el;
      el["label"] = e.label;
      el["position"] = quantity_json(e.position, "m");
      el["lateral_offset"] = quantity_json(e.lateral_offset, "m");
      els.push_back(std::move(el));
    }
    scenery["stationary_elements"] = std::move(els);
  }
  scene["scenery"] = std::move(scenery);

  ordered_json objects = ordered_json::array();
  for (const model::MovableObject& o : s.objects) {
    ordered_json oj;
    oj["id"] = o.id;
    switch (o.kind) {
      case model::ObjectKind::ego_vehicle: oj["kind"] = "ego_vehicle"; break;
      case model::ObjectKind::other_vehicle: oj["kind"] = "other_vehicle"; break;
      case model::ObjectKind::other: oj["kind"] = "other"; break;
    }
    switch (o.behavior) {
      case model::BehaviorKind::test_object: oj["behavior"] = "test_object"; break;
      case model::BehaviorKind::constant_speed:
        oj["behavior"] = "constant_speed";
        break;
      case model::BehaviorKind::scripted: oj["behavior"] = "scripted"; break;
    }
    oj["position"] = quantity_json(o.initial.position, "m");
    oj["lane_index"] = o.initial.lane_index;
    oj["speed"] = quantity_json(o.initial.speed, "m/s");
    objects.push_back(std::move(oj));
  }
  scene["objects"] = std::move(objects);

  if (!s.self_representations.empty()) {
    ordered_json reps = ordered_json::array();
    for (const model::SelfRepresentation& r : s.self_representations) {
      ordered_json rj;
      rj["owner"] = r.owner;
      ordered_json skills;
      for (const auto& [k, v] : r.skills) {
        skills[k] = v;
      }
      rj["skills"] = std::move(skills);
      ordered_json states;
      for (const auto& [k, v] : r.states) {
        states[k] = v;
      }
      rj["states"] = std::move(states);
      reps.push_back(std::move(rj));
    }
    scene["self_representations"] = std::move(reps);
  }
  j["initial_scene"] = std::move(scene);

  ordered_json events = ordered_json::array();
  for (const model::ScenarioEvent& e : s.events) {
    ordered_json ej;
    ej["id"] = e.id;
    ej["trigger_time"] = quantity_json(e.trigger_time, "s");
    ordered_json eff;
    switch (e.effect.type) {
      case model::EventEffect::Type::activate_acc:
        eff["type"] = "activate_acc";
        eff["set_speed"] = quantity_json(e.effect.set_speed, "m/s");
        break;
      case model::EventEffect::Type::deactivate_acc:
        eff["type"] = "deactivate_acc";
        break;
      case model::EventEffect::Type::set_object_speed:
        eff["type"] = "set_object_speed";
        eff["object_id"] = e.effect.object_id;
        eff["speed"] = quantity_json(e.effect.speed, "m/s");
        break;
    }
    ej["effect"] = std::move(eff);
    events.push_back(std::move(ej));
  }
  j["events"] = std::move(events);

  if (!s.goals_values.empty()) {
    j["goals_values"] = goals_values_json(s.goals_values);
  }
  if (!s.notes.empty()) {
    j["notes"] = s.notes;
  }
  return j.dump(2) + "\n";
}

void save_concrete(const model::ConcreteScenario& s,
                   const std::filesystem::path& path) {
  write_file(path, concrete_to_json(s));
}

const model::ConcreteScenario* Campaign::find_concrete(
    const std::string& id) const {
  for (const model::ConcreteScenario& s : concretes) {
    if (s.id == id) {
      return &s;
    }
  }
  return nullptr;
}

const model::LogicalScenario* Campaign::find_logical(
    const std::string& id) const {
  for (const model::LogicalScenario& s : logicals) {
    if (s.id == id) {
      return &s;
    }
  }
  return nullptr;
}

const engine::TestBench* Campaign::find_bench(const std::string& id) const {
  for (const engine::TestBench& b : benches) {
    if (b.id == id) {
      return &b;
    }
  }
  return nullptr;
}

const engine::TestBenchConfiguration* Campaign::find_bench_config(
    const std::string& id) const {
  for (const engine::TestBenchConfiguration& c : bench_configs) {
    if (c.id == id) {
      return &c;
    }
  }
  return nullptr;
}

Campaign load_campaign(const std::filesystem::path& path) {
  json j = load_document(path, FileType::campaign);
  const std::string origin = path.string();
  Campaign c;
  c.root = path.parent_path();
  c.parallelism = j.value("parallelism", 1);

  auto resolve = [&](const std::string& rel) { return c.root / rel; };

  if (j.contains("scenarios")) {
    for (const json& s : j["scenarios"]) {
      const std::filesystem::path p = resolve(s.get<std::string>());
      switch (detect_file_type(p)) {
        case FileType::logical_scenario:
          c.logicals.push_back(load_logical(p));
          break;
        case FileType::concrete_scenario:
          c.concretes.push_back(load_concrete(p));
          break;
        case FileType::functional_scenario:
          c.functionals.push_back(load_functional(p));
          break;
        case FileType::test_drive:
          c.drives.push_back(load_drive(p));
          break;
        default:
          bad(origin, "'" + p.string() + "' is not a scenario file");
      }
    }
  }
  if (j.contains("test_spec")) {
    c.test_spec = load_test_spec(resolve(j["test_spec"].get<std::string>()));
  }
  if (j.contains("metric_catalog")) {
    c.metrics =
        load_metric_catalog(resolve(j["metric_catalog"].get<std::string>()));
  }
  if (j.contains("benches")) {
    c.benches = load_benches(resolve(j["benches"].get<std::string>()));
  }
  if (j.contains("bench_configs")) {
    c.bench_configs =
        load_bench_configs(resolve(j["bench_configs"].get<std::string>()));
  }
  if (j.contains("plans")) {
    c.plans = load_plans(resolve(j["plans"].get<std::string>()));
  }
  if (j.contains("decomposition")) {
    c.product = load_decomposition(resolve(j["decomposition"].get<std::string>()));
  }
  return c;
}

ValidationReport validate_campaign(const Campaign& campaign) {
  ValidationReport report;

  for (const model::FunctionalScenario& f : campaign.functionals) {
    report.merge("functional:" + f.id, model::validate_functional(f));
  }
  std::set<std::string> functional_ids;
  for (const model::FunctionalScenario& f : campaign.functionals) {
    functional_ids.insert(f.id);
  }
  for (const model::LogicalScenario& l : campaign.logicals) {
    report.merge("logical:" + l.id, model::validate_logical(l));
    if (!l.parent_functional.empty() &&
        !functional_ids.count(l.parent_functional)) {
      report.add("logical:" + l.id + ".parent_functional",
                 "unknown functional scenario '" + l.parent_functional + "'");
    }
  }
  std::set<std::string> scenario_ids;
  for (const model::ConcreteScenario& s : campaign.concretes) {
    const model::LogicalScenario* parent =
        s.parent_logical.empty() ? nullptr
                                 : campaign.find_logical(s.parent_logical);
    if (!s.parent_logical.empty() && !parent) {
      report.add("concrete:" + s.id + ".parent_logical",
                 "unknown logical scenario '" + s.parent_logical + "'");
    }
    report.merge("concrete:" + s.id, model::validate_concrete(s, parent));
    scenario_ids.insert(s.id);
  }
  for (const model::RealWorldTestDrive& d : campaign.drives) {
    report.merge("drive:" + d.id, model::validate_drive(d));
  }

  report.merge("metric_catalog", spec::validate_metric_catalog(campaign.metrics));

  for (const engine::TestBench& b : campaign.benches) {
    report.merge("bench:" + b.id, engine::validate_bench(b));
  }
  std::set<std::string> bench_config_ids;
  for (const engine::TestBenchConfiguration& cfg : campaign.bench_configs) {
    report.merge("bench_config:" + cfg.id, engine::validate_bench_config(cfg));
    bench_config_ids.insert(cfg.id);
    if (!campaign.find_bench(cfg.bench)) {
      report.add("bench_config:" + cfg.id + ".bench",
                 "unknown test bench '" + cfg.bench + "'");
    }
  }

  spec::SignalCatalog signals = spec::SignalCatalog::builtin();
  spec::SpecContext ctx;
  ctx.metrics = &campaign.metrics;
  ctx.signals = &signals;
  ctx.scenario_ids = &scenario_ids;
  ctx.bench_config_ids = &bench_config_ids;
  report.merge("test_spec", spec::validate_specification(campaign.test_spec, ctx));

  if (campaign.plans) {
    report.merge("plans", spec::validate_plans(*campaign.plans));
  }
  if (campaign.product) {
    report.merge("product", product::validate_product_model(*campaign.product));
  }
  return report;
}

FileValidation validate_file(const std::filesystem::path& path) {
  FileValidation out{detect_file_type(path), {}};
  switch (out.type) {
    case FileType::logical_scenario:
      out.report = model::validate_logical(load_logical(path));
      break;
    case FileType::concrete_scenario:
      out.report = model::validate_concrete(load_concrete(path));
      break;
    case FileType::functional_scenario:
      out.report = model::validate_functional(load_functional(path));
      break;
    case FileType::test_drive:
      out.report = model::validate_drive(load_drive(path));
      break;
    case FileType::decomposition:
      out.report = product::validate_product_model(load_decomposition(path));
      break;
    case FileType::test_spec: {
      spec::SignalCatalog signals = spec::SignalCatalog::builtin();
      spec::SpecContext ctx;
      ctx.signals = &signals;
      out.report = spec::validate_specification(load_test_spec(path), ctx);
      break;
    }
    case FileType::metric_catalog:
      out.report = spec::validate_metric_catalog(load_metric_catalog(path));
      break;
    case FileType::bench: {
      for (const engine::TestBench& b : load_benches(path)) {
        out.report.merge("bench:" + b.id, engine::validate_bench(b));
      }
      break;
    }
    case FileType::bench_config: {
      for (const engine::TestBenchConfiguration& c : load_bench_configs(path)) {
        out.report.merge("bench_config:" + c.id,
                         engine::validate_bench_config(c));
      }
      break;
    }
    case FileType::plans:
      out.report = spec::validate_plans(load_plans(path));
      break;
    case FileType::campaign:
      out.report = validate_campaign(load_campaign(path));
      break;
    case FileType::test_report:
      break;  // reports are outputs; nothing to validate
  }
  return out;
}

}  // namespace scentest::io
