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

#include "core/trace.hpp"

#include <fstream>
#include <sstream>

#include "core/errors.hpp"
#include "core/text.hpp"

namespace scentest::engine {

namespace {

constexpr std::string_view kHeader =
    "time,v_ego,a_ego,acc_active,v_set,a_target,gap,v_lead";

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == sep) {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

double field_to_double(std::string_view s, const std::string& origin,
                       std::size_t line_no, std::string_view column) {
  if (auto v = parse_double(s)) {
    return *v;
  }
  throw Error(ErrorCode::parse, origin + ":" + std::to_string(line_no) +
                                    ": bad value for column '" +
                                    std::string(column) + "'");
}

}  // namespace

bool ExecutionTrace::has_signal(std::string_view name) const {
  return name == "time" || name == "v_ego" || name == "a_ego" ||
         name == "v_set" || name == "a_target" ||
         ((name == "gap" || name == "v_lead") && !lead_present.empty());
}

bool ExecutionTrace::has_flag(std::string_view name) const {
  return name == "acc_active" || (name == "acc_command" && !acc_command.empty());
}

std::optional<double> ExecutionTrace::signal_at(std::string_view name,
                                                std::size_t i) const {
  if (name == "time") return time[i];
  if (name == "v_ego") return v_ego[i];
  if (name == "a_ego") return a_ego[i];
  if (name == "v_set") return v_set[i];
  if (name == "a_target") return a_target[i];
  if (name == "gap") {
    if (i < lead_present.size() && lead_present[i]) return gap[i];
    return std::nullopt;
  }
  if (name == "v_lead") {
    if (i < lead_present.size() && lead_present[i]) return v_lead[i];
    return std::nullopt;
  }
  return std::nullopt;
}

bool ExecutionTrace::flag_at(std::string_view name, std::size_t i) const {
  if (name == "acc_active") return acc_active[i] != 0;
  if (name == "acc_command") {
    return i < acc_command.size() && acc_command[i] != 0;
  }
  return false;
}

std::string trace_to_csv(const ExecutionTrace& t) {
  std::string out;
  out += "# scentest-trace 1\n";
  out += "# scenario: " + t.scenario_id + "\n";
  out += "# dt: " + format_double(t.time_step) + "\n";
  out += "# duration: " + format_double(t.duration) + "\n";
  out += std::string("# valid: ") + (t.valid ? "1" : "0") + "\n";
  if (!t.fault.empty()) {
    out += "# fault: " + t.fault + "\n";
  }
  for (const auto& e : t.events) {
    out += "# event: " + e.id + " " + std::to_string(e.index) + "\n";
  }
  out += kHeader;
  out += '\n';
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += format_double(t.time[i]);
    out += ',';
    out += format_double(t.v_ego[i]);
    out += ',';
    out += format_double(t.a_ego[i]);
    out += ',';
    out += t.acc_active[i] ? '1' : '0';
    out += ',';
    out += format_double(t.v_set[i]);
    out += ',';
    out += format_double(t.a_target[i]);
    out += ',';
    if (i < t.lead_present.size() && t.lead_present[i]) {
      out += format_double(t.gap[i]);
      out += ',';
      out += format_double(t.v_lead[i]);
    } else {
      out += ',';
    }
    out += '\n';
  }
  return out;
}

void save_trace(const ExecutionTrace& t, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::io, "cannot write trace file '" + path.string() + "'");
  }
  out << trace_to_csv(t);
}

ExecutionTrace parse_trace_csv(const std::string& text,
                               const std::string& origin) {
  ExecutionTrace t;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  bool version_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    if (line[0] == '#') {
      std::string_view meta(line);
      meta.remove_prefix(1);
      while (!meta.empty() && meta.front() == ' ') {
        meta.remove_prefix(1);
      }
      if (meta.rfind("scentest-trace ", 0) == 0) {
        if (meta != "scentest-trace 1") {
          throw Error(ErrorCode::unsupported_version,
                      origin + ": unsupported trace format version '" +
                          std::string(meta) + "'");
        }
        version_seen = true;
      } else if (meta.rfind("scenario: ", 0) == 0) {
        t.scenario_id = std::string(meta.substr(10));
      } else if (meta.rfind("dt: ", 0) == 0) {
        t.time_step = field_to_double(meta.substr(4), origin, line_no, "dt");
      } else if (meta.rfind("duration: ", 0) == 0) {
        t.duration =
            field_to_double(meta.substr(10), origin, line_no, "duration");
      } else if (meta.rfind("valid: ", 0) == 0) {
        t.valid = meta.substr(7) == "1";
      } else if (meta.rfind("fault: ", 0) == 0) {
        t.fault = std::string(meta.substr(7));
      } else if (meta.rfind("event: ", 0) == 0) {
        auto parts = split(meta.substr(7), ' ');
        if (parts.size() == 2) {
          ExecutionTrace::EventFire e;
          e.id = std::string(parts[0]);
          e.index = static_cast<std::size_t>(
              field_to_double(parts[1], origin, line_no, "event"));
          t.events.push_back(std::move(e));
        }
      }
      continue;
    }
    if (!header_seen) {
      if (line != kHeader) {
        // Identify the missing column for the schema error.
        auto expected = split(kHeader, ',');
        auto got = split(line, ',');
        for (std::string_view col : expected) {
          if (std::find(got.begin(), got.end(), col) == got.end()) {
            throw Error(ErrorCode::parse,
                        origin + ": trace is missing column '" +
                            std::string(col) + "'");
          }
        }
        throw Error(ErrorCode::parse,
                    origin + ": unexpected trace header '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    auto fields = split(line, ',');
    if (fields.size() != 8) {
      throw Error(ErrorCode::parse, origin + ":" + std::to_string(line_no) +
                                        ": expected 8 columns, found " +
                                        std::to_string(fields.size()));
    }
    t.time.push_back(field_to_double(fields[0], origin, line_no, "time"));
    t.v_ego.push_back(field_to_double(fields[1], origin, line_no, "v_ego"));
    t.a_ego.push_back(field_to_double(fields[2], origin, line_no, "a_ego"));
    t.acc_active.push_back(fields[3] == "1" ? 1 : 0);
    t.v_set.push_back(field_to_double(fields[4], origin, line_no, "v_set"));
    t.a_target.push_back(
        field_to_double(fields[5], origin, line_no, "a_target"));
    const bool lead = !fields[6].empty() || !fields[7].empty();
    t.lead_present.push_back(lead ? 1 : 0);
    t.gap.push_back(
        lead ? field_to_double(fields[6], origin, line_no, "gap") : 0.0);
    t.v_lead.push_back(
        lead ? field_to_double(fields[7], origin, line_no, "v_lead") : 0.0);
  }
  if (!version_seen) {
    throw Error(ErrorCode::parse,
                origin + ": not a scentest trace file (missing version line)");
  }
  if (!header_seen) {
    throw Error(ErrorCode::parse, origin + ": missing column header");
  }
  return t;
}

ExecutionTrace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io, "cannot read trace file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trace_csv(buf.str(), path.string());
}

}  // namespace scentest::engine
