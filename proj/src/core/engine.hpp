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

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "core/scenario.hpp"
#include "core/trace.hpp"
#include "core/units.hpp"
#include "core/validation.hpp"

namespace scentest::engine {

enum class BenchKind {
  software_in_the_loop,
  hardware_in_the_loop_simulated,
  vehicle_in_the_loop_simulated,
};

struct TestBench {
  std::string id;
  BenchKind kind = BenchKind::software_in_the_loop;
  std::set<std::string> capabilities;  // non-empty
};

enum class ElementRole {
  vehicle_dynamics,
  lead_vehicle_model,
  event_scheduler,
  signal_recorder,
  test_object_adapter,
};

using ParamValue = std::variant<units::Quantity, std::string, bool>;

struct Element {
  std::string id;
  ElementRole role = ElementRole::vehicle_dynamics;
  std::map<std::string, ParamValue> parameters;
  std::vector<Element> sub_elements;
};

struct TestBenchConfiguration {
  enum class LoopMode { closed, open };

  std::string id;
  std::string bench;  // TestBench id
  std::vector<Element> elements;  // >= 1; vehicle_dynamics and
                                  // event_scheduler are required roles
  LoopMode loop_mode = LoopMode::closed;
  double time_step = 0.01;  // s

  const Element* find_element(ElementRole role) const;
};

ValidationReport validate_bench(const TestBench& b);
ValidationReport validate_bench_config(const TestBenchConfiguration& cfg);

/// Capabilities each configured element requires from the bench.
std::set<std::string> required_capabilities(const TestBenchConfiguration& cfg);
std::vector<std::string> missing_capabilities(const TestBenchConfiguration& cfg,
                                              const TestBench& bench);
bool match_bench(const TestBenchConfiguration& cfg, const TestBench& bench);

// ---------------------------------------------------------------------------
// Test objects

struct SignalSpec {
  std::string name;
  std::string unit;  // "flag" for boolean-valued signals
  bool optional = false;
};

struct TestObjectPort {
  std::vector<SignalSpec> inputs;
  std::vector<SignalSpec> outputs;

  /// The built-in ACC port: inputs v_ego, v_set, acc_command, and, when a
  /// lead vehicle exists, gap and v_lead; outputs a_target and acc_active.
  static TestObjectPort acc_v1();
};

/// The pluggable test object. Flags travel as 0/1 doubles. Optional inputs
/// are absent from the map when undefined at the sample.
class TestObject {
 public:
  virtual ~TestObject() = default;

  virtual const TestObjectPort& port() const = 0;
  virtual void reset(const std::map<std::string, ParamValue>& parameters) = 0;
  virtual std::map<std::string, double> step(
      const std::map<std::string, double>& inputs) = 0;
};

struct AccParams {
  double k_p = 2.0;            // 1/s
  double a_min = -3.0;         // m/s^2, < 0
  double a_max = 2.0;          // m/s^2, > 0
  double time_gap = 1.8;       // s
  double set_speed_bias = 0.05;  // m/s, see builtin_acc_step
};

/// One evaluation of the built-in ACC control law (stateless).
/// Inactive: a_target = 0, acc_active = 0. Active: proportional speed
/// control clamped to [a_min, a_max], additionally capped by a
/// constant-time-gap following law when a lead vehicle is present.
std::map<std::string, double> builtin_acc_step(
    const std::map<std::string, double>& inputs, const AccParams& params);

std::unique_ptr<TestObject> make_builtin_acc();

/// Creates test objects by name. "builtin_acc" is pre-registered.
class TestObjectRegistry {
 public:
  using Factory = std::function<std::unique_ptr<TestObject>()>;

  TestObjectRegistry();

  void register_object(const std::string& name, Factory factory);
  std::unique_ptr<TestObject> create(const std::string& name) const;
  bool has(const std::string& name) const;

 private:
  std::map<std::string, Factory> factories_;
};

// ---------------------------------------------------------------------------
// Execution

/// Scheduler state visible to input derivation at one sample.
struct ScheduleState {
  bool acc_command = false;
  double set_speed = 0.0;  // m/s; 0 until the first activation event
};

/// Projects the scene (plus scheduler state) onto the port's input signals.
/// Optional signals are omitted when no lead vehicle exists. Throws
/// Error{unknown_signal} for signals the engine cannot derive.
std::map<std::string, double> derive_inputs(const model::Scene& scene,
                                            const ScheduleState& schedule,
                                            const TestObjectPort& port);

/// Invoked once per recorded sample, in time order, as execution proceeds.
struct StepRecord {
  std::size_t index;
  double time;
  const model::Scene* scene;
  const std::map<std::string, double>* inputs;
  const std::map<std::string, double>* outputs;  // available at this time
  bool acc_command;
  double a_applied;  // m/s^2 over [t, t+dt)
};
using SampleObserver = std::function<void(const StepRecord&)>;
using EventObserver = std::function<void(const std::string&, std::size_t)>;

/// Runs one concrete scenario against the test object under the given bench
/// configuration. Deterministic: identical inputs produce an identical
/// trace. Inputs at t_s stimulate the object; its outputs become available
/// at t_{s+1} and, in closed loop, drive the dynamics over [t_{s+1}, t_{s+2}).
/// In open loop outputs are recorded but not fed back. A non-finite object
/// output or state aborts the run; the returned trace keeps the valid
/// samples and is flagged invalid.
ExecutionTrace run_scenario(const TestBenchConfiguration& cfg,
                            const model::ConcreteScenario& scenario,
                            TestObject& object,
                            std::optional<double> dt_override = std::nullopt,
                            const SampleObserver& on_sample = nullptr,
                            const EventObserver& on_event = nullptr);

}  // namespace scentest::engine
