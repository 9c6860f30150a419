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

#include "core/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/text.hpp"
#include "core/version.hpp"

namespace scentest::report {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kReportFormatVersion = 1;

eval::Verdict verdict_from_string(const std::string& s,
                                  const std::string& origin) {
  if (s == "passed") return eval::Verdict::passed;
  if (s == "failed") return eval::Verdict::failed;
  if (s == "skipped") return eval::Verdict::skipped;
  if (s == "invalid_trace") return eval::Verdict::invalid_trace;
  throw Error(ErrorCode::parse, origin + ": unknown verdict '" + s + "'");
}

ordered_json criterion_to_json(const eval::CriterionEvaluation& c) {
  ordered_json j;
  j["criterion"] = c.criterion;
  j["metric"] = c.metric;
  j["skipped"] = c.skipped;
  j["fulfilled"] = c.fulfilled;
  j["aggregate_fulfillment"] = c.aggregate_fulfillment;
  ordered_json intervals = ordered_json::array();
  for (const eval::IndexInterval& iv : c.intervals.intervals) {
    intervals.push_back({{"begin", iv.begin}, {"end", iv.end}});
  }
  j["intervals"] = std::move(intervals);
  ordered_json results = ordered_json::array();
  for (const eval::ResultJudgment& r : c.results) {
    results.push_back({{"time", r.result.time},
                       {"value", r.result.value},
                       {"unit", r.result.unit},
                       {"fulfillment", r.fulfillment}});
  }
  j["result_count"] = c.results.size();
  j["results"] = std::move(results);
  return j;
}

eval::CriterionEvaluation criterion_from_json(const json& j,
                                              const std::string& origin) {
  eval::CriterionEvaluation c;
  c.criterion = j.at("criterion").get<std::string>();
  c.metric = j.at("metric").get<std::string>();
  c.skipped = j.at("skipped").get<bool>();
  c.fulfilled = j.at("fulfilled").get<bool>();
  c.aggregate_fulfillment = j.at("aggregate_fulfillment").get<double>();
  for (const json& iv : j.at("intervals")) {
    c.intervals.intervals.push_back(
        {iv.at("begin").get<std::size_t>(), iv.at("end").get<std::size_t>()});
  }
  for (const json& r : j.at("results")) {
    eval::ResultJudgment rj;
    rj.result.time = r.at("time").get<double>();
    rj.result.value = r.at("value").get<double>();
    rj.result.unit = r.at("unit").get<std::string>();
    rj.result.metric = c.metric;
    rj.fulfillment = r.at("fulfillment").get<double>();
    c.results.push_back(std::move(rj));
  }
  (void)origin;
  return c;
}

}  // namespace

std::string report_to_json(const eval::TestReport& report) {
  ordered_json j;
  j["format_version"] = kReportFormatVersion;
  j["file_type"] = "test_report";
  j["tool_version"] = report.provenance.tool_version;
  j["procedure"] = report.procedure_id;
  j["overall_verdict"] = eval::to_string(report.overall);

  ordered_json cases = ordered_json::array();
  for (const eval::CaseEvaluation& ce : report.cases) {
    ordered_json c;
    c["case"] = ce.case_id;
    c["scenario"] = ce.scenario_id;
    c["verdict"] = eval::to_string(ce.verdict);
    c["trace_valid"] = ce.trace_valid;
    c["trace_hash"] = ce.trace_hash;
    ordered_json criteria = ordered_json::array();
    for (const eval::CriterionEvaluation& crit : ce.criteria) {
      criteria.push_back(criterion_to_json(crit));
    }
    c["criteria"] = std::move(criteria);
    cases.push_back(std::move(c));
  }
  j["cases"] = std::move(cases);

  ordered_json cross = ordered_json::array();
  for (const eval::CriterionEvaluation& crit : report.cross_case) {
    cross.push_back(criterion_to_json(crit));
  }
  j["cross_case"] = std::move(cross);

  ordered_json prov;
  ordered_json hashes = ordered_json::object();
  for (const auto& [case_id, hash] : report.provenance.trace_hashes) {
    hashes[case_id] = hash;
  }
  prov["trace_hashes"] = std::move(hashes);
  prov["config_ids"] = report.provenance.config_ids;
  prov["tool_version"] = report.provenance.tool_version;
  j["provenance"] = std::move(prov);

  return j.dump(2) + "\n";
}

eval::TestReport report_from_json(const std::string& text,
                                  const std::string& origin) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw Error(ErrorCode::parse, origin + ": not valid JSON");
  }
  try {
    if (j.at("format_version").get<int>() != kReportFormatVersion) {
      throw Error(ErrorCode::unsupported_version,
                  origin + ": unsupported report format version");
    }
    eval::TestReport report;
    report.procedure_id = j.at("procedure").get<std::string>();
    report.overall =
        verdict_from_string(j.at("overall_verdict").get<std::string>(), origin);
    for (const json& c : j.at("cases")) {
      eval::CaseEvaluation ce;
      ce.case_id = c.at("case").get<std::string>();
      ce.scenario_id = c.at("scenario").get<std::string>();
      ce.verdict = verdict_from_string(c.at("verdict").get<std::string>(), origin);
      ce.trace_valid = c.at("trace_valid").get<bool>();
      ce.trace_hash = c.at("trace_hash").get<std::string>();
      for (const json& crit : c.at("criteria")) {
        ce.criteria.push_back(criterion_from_json(crit, origin));
      }
      report.cases.push_back(std::move(ce));
    }
    for (const json& crit : j.at("cross_case")) {
      report.cross_case.push_back(criterion_from_json(crit, origin));
    }
    const json& prov = j.at("provenance");
    for (auto it = prov.at("trace_hashes").begin();
         it != prov.at("trace_hashes").end(); ++it) {
      report.provenance.trace_hashes[it.key()] = it.value().get<std::string>();
    }
    report.provenance.config_ids =
        prov.at("config_ids").get<std::vector<std::string>>();
    report.provenance.tool_version =
        prov.at("tool_version").get<std::string>();
    return report;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, origin + ": " + e.what());
  }
}

void save_report(const eval::TestReport& report,
                 const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::io, "cannot write report file '" + path.string() + "'");
  }
  out << report_to_json(report);
}

eval::TestReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io, "cannot read report file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return report_from_json(buf.str(), path.string());
}

std::string render_text(const eval::TestReport& report) {
  std::string out;
  out += "Test report for procedure " + report.procedure_id + "\n";
  out += "tool version: " + report.provenance.tool_version + "\n";
  out += std::string("overall verdict: ") + eval::to_string(report.overall) +
         "\n\n";
  for (const eval::CaseEvaluation& ce : report.cases) {
    out += "case " + ce.case_id + " (scenario " + ce.scenario_id +
           "): " + eval::to_string(ce.verdict) + "\n";
    if (!ce.trace_valid) {
      out += "  trace flagged invalid\n";
    }
    for (const eval::CriterionEvaluation& c : ce.criteria) {
      out += "  criterion " + c.criterion + " [" + c.metric + "]: ";
      if (c.skipped) {
        out += "skipped (application period never active)";
      } else if (c.fulfilled) {
        out += "fulfilled, min fulfillment " +
               format_double(c.aggregate_fulfillment) + "%";
      } else if (c.results.empty()) {
        out += "not fulfilled (no metric results in the active period)";
      } else {
        out += "not fulfilled, min fulfillment " +
               format_double(c.aggregate_fulfillment) + "%";
      }
      out += " (" + std::to_string(c.results.size()) + " results)\n";
    }
  }
  if (!report.cross_case.empty()) {
    out += "cross-case criteria:\n";
    for (const eval::CriterionEvaluation& c : report.cross_case) {
      out += "  criterion " + c.criterion + " [" + c.metric + "]: ";
      if (c.skipped) {
        out += "skipped";
      } else {
        out += c.fulfilled ? "fulfilled" : "not fulfilled";
      }
      out += " (" + std::to_string(c.results.size()) + " results)\n";
    }
  }
  return out;
}

std::string metric_results_csv(const eval::CriterionEvaluation& evaluation) {
  std::string out = "time,value,unit,fulfillment\n";
  for (const eval::ResultJudgment& r : evaluation.results) {
    out += format_double(r.result.time);
    out += ',';
    out += format_double(r.result.value);
    out += ',';
    out += r.result.unit;
    out += ',';
    out += format_double(r.fulfillment);
    out += '\n';
  }
  return out;
}

}  // namespace scentest::report
