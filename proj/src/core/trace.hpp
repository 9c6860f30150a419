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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scentest::engine {

/// Time-indexed record of one test case execution: the per-sample scene
/// projection, test object I/O, and flags. Columns are SI. a_ego is the
/// deceleration, positive-signed (0 while accelerating). Sample times are
/// exactly index * time_step.
struct ExecutionTrace {
  std::string scenario_id;
  double time_step = 0.0;
  double duration = 0.0;
  bool valid = true;
  std::string fault;  // set when valid == false

  std::vector<double> time;
  std::vector<double> v_ego;
  std::vector<double> a_ego;
  std::vector<std::uint8_t> acc_active;
  std::vector<double> v_set;
  std::vector<double> a_target;
  std::vector<double> gap;            // meaningful where lead_present
  std::vector<double> v_lead;
  std::vector<std::uint8_t> lead_present;
  std::vector<std::uint8_t> acc_command;
  std::vector<double> ego_position;

  struct EventFire {
    std::string id;
    std::size_t index;
  };
  std::vector<EventFire> events;

  // Test object I/O as recorded per sample (inputs at t_s; outputs available
  // at t_s, i.e. produced from the inputs one step earlier).
  std::vector<std::map<std::string, double>> object_inputs;
  std::vector<std::map<std::string, double>> object_outputs;

  std::size_t size() const { return time.size(); }

  bool has_signal(std::string_view name) const;
  bool has_flag(std::string_view name) const;
  std::optional<double> signal_at(std::string_view name, std::size_t i) const;
  bool flag_at(std::string_view name, std::size_t i) const;
};

/// Columnar text export; fixed column order
/// time,v_ego,a_ego,acc_active,v_set,a_target,gap,v_lead with `#` metadata
/// lines ahead of the header. Floats use shortest round-trip formatting, so
/// a re-read trace evaluates bit-identically.
std::string trace_to_csv(const ExecutionTrace& t);
void save_trace(const ExecutionTrace& t, const std::filesystem::path& path);
ExecutionTrace parse_trace_csv(const std::string& text,
                               const std::string& origin);
ExecutionTrace load_trace(const std::filesystem::path& path);

}  // namespace scentest::engine
