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

#include "core/engine.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace scentest::engine {

namespace {

double quantity_param(const std::map<std::string, ParamValue>& params,
                      const std::string& name, double fallback) {
  auto it = params.find(name);
  if (it == params.end()) {
    return fallback;
  }
  if (const auto* q = std::get_if<units::Quantity>(&it->second)) {
    return q->si();
  }
  throw Error(ErrorCode::config, "parameter '" + name + "' must be a quantity");
}

std::string string_param(const std::map<std::string, ParamValue>& params,
                         const std::string& name, const std::string& fallback) {
  auto it = params.find(name);
  if (it == params.end()) {
    return fallback;
  }
  if (const auto* s = std::get_if<std::string>(&it->second)) {
    return *s;
  }
  throw Error(ErrorCode::config, "parameter '" + name + "' must be a string");
}

class BuiltinAcc final : public TestObject {
 public:
  const TestObjectPort& port() const override {
    static const TestObjectPort port = TestObjectPort::acc_v1();
    return port;
  }

  void reset(const std::map<std::string, ParamValue>& parameters) override {
    params_.k_p = quantity_param(parameters, "k_p", AccParams{}.k_p);
    params_.a_min = quantity_param(parameters, "a_min", AccParams{}.a_min);
    params_.a_max = quantity_param(parameters, "a_max", AccParams{}.a_max);
    params_.time_gap =
        quantity_param(parameters, "time_gap", AccParams{}.time_gap);
    params_.set_speed_bias = quantity_param(parameters, "set_speed_bias",
                                            AccParams{}.set_speed_bias);
    if (!(params_.a_min < 0.0 && 0.0 < params_.a_max)) {
      throw Error(ErrorCode::config,
                  "acc parameters require a_min < 0 < a_max");
    }
  }

  std::map<std::string, double> step(
      const std::map<std::string, double>& inputs) override {
    return builtin_acc_step(inputs, params_);
  }

 private:
  AccParams params_;
};

/// Nearest object ahead of `id` in the same lane, if any.
const model::ObjectState* lead_of(const model::Scene& scene,
                                  const std::string& id,
                                  std::string* lead_id = nullptr) {
  auto self = scene.object_states.find(id);
  if (self == scene.object_states.end()) {
    return nullptr;
  }
  const model::ObjectState* best = nullptr;
  for (const auto& [other_id, state] : scene.object_states) {
    if (other_id == id || state.lane_index != self->second.lane_index ||
        state.position <= self->second.position) {
      continue;
    }
    if (!best || state.position < best->position) {
      best = &state;
      if (lead_id) {
        *lead_id = other_id;
      }
    }
  }
  return best;
}

struct RuntimeObject {
  const model::MovableObject* def;
  model::ObjectState state;
};

}  // namespace

const Element* TestBenchConfiguration::find_element(ElementRole role) const {
  for (const Element& e : elements) {
    if (e.role == role) {
      return &e;
    }
  }
  return nullptr;
}

ValidationReport validate_bench(const TestBench& b) {
  ValidationReport report;
  if (b.id.empty()) {
    report.add("id", "bench id must be non-empty");
  }
  if (b.capabilities.empty()) {
    report.add("capabilities", "capability set must be non-empty");
  }
  return report;
}

ValidationReport validate_bench_config(const TestBenchConfiguration& cfg) {
  ValidationReport report;
  if (cfg.id.empty()) {
    report.add("id", "configuration id must be non-empty");
  }
  if (cfg.elements.empty()) {
    report.add("elements",
               "a test bench configuration is a composition of one or more "
               "elements");
  }
  if (!(cfg.time_step > 0.0)) {
    report.add("time_step", "time_step > 0 violated");
  }
  if (!cfg.find_element(ElementRole::vehicle_dynamics)) {
    report.add("elements", "required element role vehicle_dynamics missing");
  }
  if (!cfg.find_element(ElementRole::event_scheduler)) {
    report.add("elements", "required element role event_scheduler missing");
  }
  for (std::size_t i = 0; i < cfg.elements.size(); ++i) {
    const Element& e = cfg.elements[i];
    const std::string path = "elements[" + std::to_string(i) + "]";
    if (e.role == ElementRole::vehicle_dynamics) {
      double a_min = 0.0, a_max = 0.0;
      try {
        a_min = quantity_param(e.parameters, "a_min", -8.0);
        a_max = quantity_param(e.parameters, "a_max", 4.0);
      } catch (const Error& err) {
        report.add(path, err.what());
        continue;
      }
      if (!(a_min < 0.0 && 0.0 < a_max)) {
        report.add(path, "vehicle_dynamics requires a_min < 0 < a_max");
      }
    }
  }
  return report;
}

std::set<std::string> required_capabilities(const TestBenchConfiguration& cfg) {
  std::set<std::string> out;
  for (const Element& e : cfg.elements) {
    switch (e.role) {
      case ElementRole::vehicle_dynamics:
      case ElementRole::lead_vehicle_model:
      case ElementRole::event_scheduler:
      case ElementRole::signal_recorder:
        out.insert("runs_simulation_models");
        break;
      case ElementRole::test_object_adapter: {
        const std::string connection =
            string_param(e.parameters, "connection", "in_process");
        if (connection == "development_unit") {
          out.insert("connects_development_unit");
        } else {
          out.insert("runs_simulation_models");
        }
        break;
      }
    }
  }
  return out;
}

std::vector<std::string> missing_capabilities(const TestBenchConfiguration& cfg,
                                              const TestBench& bench) {
  std::vector<std::string> missing;
  for (const std::string& cap : required_capabilities(cfg)) {
    if (!bench.capabilities.count(cap)) {
      missing.push_back(cap);
    }
  }
  return missing;
}

bool match_bench(const TestBenchConfiguration& cfg, const TestBench& bench) {
  return missing_capabilities(cfg, bench).empty();
}

TestObjectPort TestObjectPort::acc_v1() {
  TestObjectPort p;
  p.inputs = {{"v_ego", "m/s", false},
              {"v_set", "m/s", false},
              {"acc_command", "flag", false},
              {"gap", "m", true},
              {"v_lead", "m/s", true}};
  p.outputs = {{"a_target", "m/s^2", false}, {"acc_active", "flag", false}};
  return p;
}

std::map<std::string, double> builtin_acc_step(
    const std::map<std::string, double>& inputs, const AccParams& params) {
  const bool command = inputs.count("acc_command") &&
                       inputs.at("acc_command") != 0.0;
  if (!command) {
    return {{"a_target", 0.0}, {"acc_active", 0.0}};
  }
  const double v_ego = inputs.at("v_ego");
  const double v_set = inputs.at("v_set");
  // The bias places the speed-mode equilibrium just below the set speed;
  // a pure proportional law would approach it from above without ever
  // reaching it.
  double a = params.k_p * ((v_set - params.set_speed_bias) - v_ego);
  if (inputs.count("gap") && inputs.count("v_lead")) {
    const double gap = inputs.at("gap");
    const double v_lead = inputs.at("v_lead");
    // Constant-time-gap following law; binding when slower than speed mode.
    const double a_follow =
        params.k_p * (gap - params.time_gap * v_ego) / params.time_gap +
        params.k_p * (v_lead - v_ego);
    a = std::min(a, a_follow);
  }
  a = std::clamp(a, params.a_min, params.a_max);
  return {{"a_target", a}, {"acc_active", 1.0}};
}

std::unique_ptr<TestObject> make_builtin_acc() {
  return std::make_unique<BuiltinAcc>();
}

TestObjectRegistry::TestObjectRegistry() {
  register_object("builtin_acc", [] { return make_builtin_acc(); });
}

void TestObjectRegistry::register_object(const std::string& name,
                                         Factory factory) {
  factories_[name] = std::move(factory);
}

std::unique_ptr<TestObject> TestObjectRegistry::create(
    const std::string& name) const {
  auto it = factories_.find(name);
  if (it == factories_.end()) {
    throw Error(ErrorCode::config, "unknown test object '" + name + "'");
  }
  return it->second();
}

bool TestObjectRegistry::has(const std::string& name) const {
  return factories_.count(name) != 0;
}

std::map<std::string, double> derive_inputs(const model::Scene& scene,
                                            const ScheduleState& schedule,
                                            const TestObjectPort& port) {
  std::map<std::string, double> out;
  // The ego is tagged through the extensible relationship list; scenes built
  // outside the engine may instead use the conventional id "ego".
  std::string ego_id;
  for (const model::Relationship& r : scene.relationships) {
    if (r.type == "ego") {
      ego_id = r.a;
    }
  }
  if (ego_id.empty() && scene.object_states.count("ego")) {
    ego_id = "ego";
  }
  const model::ObjectState* ego =
      ego_id.empty() ? nullptr : &scene.object_states.at(ego_id);

  const model::ObjectState* lead =
      ego ? lead_of(scene, ego_id) : nullptr;

  for (const SignalSpec& sig : port.inputs) {
    if (sig.name == "v_ego") {
      if (!ego) {
        throw Error(ErrorCode::unknown_signal,
                    "cannot derive 'v_ego': no ego vehicle in scene");
      }
      out["v_ego"] = ego->speed;
    } else if (sig.name == "v_set") {
      out["v_set"] = schedule.set_speed;
    } else if (sig.name == "acc_command") {
      out["acc_command"] = schedule.acc_command ? 1.0 : 0.0;
    } else if (sig.name == "gap") {
      if (lead && ego) {
        out["gap"] = lead->position - ego->position;
      }
    } else if (sig.name == "v_lead") {
      if (lead) {
        out["v_lead"] = lead->speed;
      }
    } else if (!sig.optional) {
      throw Error(ErrorCode::unknown_signal,
                  "the engine cannot derive input signal '" + sig.name + "'");
    }
  }
  return out;
}

ExecutionTrace run_scenario(const TestBenchConfiguration& cfg,
                            const model::ConcreteScenario& scenario,
                            TestObject& object,
                            std::optional<double> dt_override,
                            const SampleObserver& on_sample,
                            const EventObserver& on_event) {
  ValidationReport cfg_report = validate_bench_config(cfg);
  if (!cfg_report.ok()) {
    throw Error(ErrorCode::config, "bench configuration '" + cfg.id +
                                       "' is invalid:\n" +
                                       cfg_report.to_string());
  }

  const double dt = dt_override.value_or(cfg.time_step);
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::config, "time step must be > 0");
  }
  const bool closed = cfg.loop_mode == TestBenchConfiguration::LoopMode::closed;

  const Element* dynamics = cfg.find_element(ElementRole::vehicle_dynamics);
  const double plant_a_min = quantity_param(dynamics->parameters, "a_min", -8.0);
  const double plant_a_max = quantity_param(dynamics->parameters, "a_max", 4.0);

  const TestObjectPort& port = object.port();
  if (closed && std::none_of(port.outputs.begin(), port.outputs.end(),
                             [](const SignalSpec& s) {
                               return s.name == "a_target";
                             })) {
    throw Error(ErrorCode::port_mismatch,
                "closed-loop execution requires an 'a_target' output; the "
                "object's port does not provide it");
  }

  // Runtime object states; the scenario itself is never mutated.
  std::vector<RuntimeObject> objects;
  objects.reserve(scenario.objects.size());
  const model::MovableObject* ego_def = nullptr;
  for (const model::MovableObject& o : scenario.objects) {
    objects.push_back({&o, o.initial});
    if (o.kind == model::ObjectKind::ego_vehicle) {
      ego_def = &o;
    }
  }
  if (!ego_def) {
    throw Error(ErrorCode::config,
                "scenario '" + scenario.id + "' has no ego vehicle");
  }
  if (ego_def->behavior != model::BehaviorKind::test_object) {
    throw Error(ErrorCode::config,
                "the ego vehicle must have behavior 'test_object'");
  }

  // Events sorted by trigger time; stable for equal times.
  std::vector<const model::ScenarioEvent*> pending;
  for (const model::ScenarioEvent& e : scenario.events) {
    pending.push_back(&e);
  }
  std::stable_sort(pending.begin(), pending.end(),
                   [](const auto* a, const auto* b) {
                     return a->trigger_time < b->trigger_time;
                   });
  std::size_t next_event = 0;

  const std::size_t steps =
      static_cast<std::size_t>(std::floor(scenario.duration / dt + 1e-9));

  ExecutionTrace trace;
  trace.scenario_id = scenario.id;
  trace.time_step = dt;
  trace.duration = scenario.duration;

  ScheduleState schedule;
  std::map<std::string, double> outputs_now;  // available at the current time
  for (const SignalSpec& s : port.outputs) {
    outputs_now[s.name] = 0.0;
  }

  model::Scene scene;
  scene.scenery = scenario.scenery;
  scene.self_representations = scenario.self_representations;

  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;

    // Fire events due at or before this sample (earliest sample not before
    // the trigger time).
    while (next_event < pending.size() &&
           pending[next_event]->trigger_time <= t + 1e-12) {
      const model::ScenarioEvent& e = *pending[next_event];
      switch (e.effect.type) {
        case model::EventEffect::Type::activate_acc:
          schedule.acc_command = true;
          schedule.set_speed = e.effect.set_speed;
          break;
        case model::EventEffect::Type::deactivate_acc:
          schedule.acc_command = false;
          break;
        case model::EventEffect::Type::set_object_speed:
          for (RuntimeObject& o : objects) {
            if (o.def->id == e.effect.object_id) {
              o.state.speed = e.effect.speed;
            }
          }
          break;
      }
      trace.events.push_back({e.id, k});
      if (on_event) {
        on_event(e.id, k);
      }
      ++next_event;
    }

    // Scene at t_s: snapshot of all object states plus recomputed
    // relationships.
    scene.time = t;
    scene.object_states.clear();
    for (const RuntimeObject& o : objects) {
      scene.object_states[o.def->id] = o.state;
    }
    scene.relationships.clear();
    scene.relationships.push_back({"ego", ego_def->id, ""});
    std::string lead_id;
    if (lead_of(scene, ego_def->id, &lead_id)) {
      scene.relationships.push_back({"follows", ego_def->id, lead_id});
    }

    const double a_out =
        outputs_now.count("a_target") ? outputs_now.at("a_target") : 0.0;
    const double a_applied =
        closed ? std::clamp(a_out, plant_a_min, plant_a_max) : 0.0;
    scene.object_states[ego_def->id].acceleration = a_applied;

    std::map<std::string, double> inputs =
        derive_inputs(scene, schedule, port);

    // Record sample k.
    const bool acc_active_now = outputs_now.count("acc_active") &&
                                outputs_now.at("acc_active") != 0.0;
    trace.time.push_back(t);
    trace.v_ego.push_back(scene.object_states.at(ego_def->id).speed);
    trace.a_ego.push_back(std::max(0.0, -a_applied));
    trace.acc_active.push_back(acc_active_now ? 1 : 0);
    trace.v_set.push_back(schedule.set_speed);
    trace.a_target.push_back(a_out);
    if (inputs.count("gap")) {
      trace.lead_present.push_back(1);
      trace.gap.push_back(inputs.at("gap"));
      trace.v_lead.push_back(inputs.count("v_lead") ? inputs.at("v_lead") : 0.0);
    } else {
      trace.lead_present.push_back(0);
      trace.gap.push_back(0.0);
      trace.v_lead.push_back(0.0);
    }
    trace.acc_command.push_back(schedule.acc_command ? 1 : 0);
    trace.ego_position.push_back(scene.object_states.at(ego_def->id).position);
    trace.object_inputs.push_back(inputs);
    trace.object_outputs.push_back(outputs_now);

    if (on_sample) {
      StepRecord rec{k,      t,       &scene,            &inputs,
                     &outputs_now, schedule.acc_command, a_applied};
      on_sample(rec);
    }

    if (k == steps) {
      break;
    }

    // Object consumes inputs(t_s); outputs become available at t_{s+1}.
    std::map<std::string, double> outputs_next = object.step(inputs);
    bool fault = false;
    for (const SignalSpec& s : port.outputs) {
      auto it = outputs_next.find(s.name);
      if (it == outputs_next.end()) {
        throw Error(ErrorCode::port_mismatch,
                    "test object did not produce output '" + s.name + "'");
      }
      if (!std::isfinite(it->second)) {
        fault = true;
      }
    }
    if (fault) {
      trace.valid = false;
      trace.fault = "non-finite test object output at step " +
                    std::to_string(k + 1);
      return trace;
    }

    // Integrate [t_s, t_{s+1}) with the outputs available at t_s.
    for (RuntimeObject& o : objects) {
      o.state.position += o.state.speed * dt;
      if (o.def->id == ego_def->id) {
        o.state.speed += a_applied * dt;
      }
      if (!std::isfinite(o.state.position) || !std::isfinite(o.state.speed)) {
        trace.valid = false;
        trace.fault = "non-finite state for object '" + o.def->id +
                      "' at step " + std::to_string(k + 1);
        return trace;
      }
    }
    outputs_now = std::move(outputs_next);
  }
  return trace;
}

}  // namespace scentest::engine
