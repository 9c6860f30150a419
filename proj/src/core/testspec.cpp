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

#include "core/testspec.hpp"

#include <algorithm>

#include "core/errors.hpp"
#include "core/text.hpp"

namespace scentest::spec {

namespace {

std::string idx(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

void validate_criterion(const EvaluationCriterion& c, const SpecContext& ctx,
                        const std::string& path, bool cross_case,
                        ValidationReport& report) {
  if (c.id.empty()) {
    report.add(path + ".id", "criterion id must be non-empty");
  }
  if (ctx.metrics && !ctx.metrics->find(c.metric)) {
    report.add(path + ".metric", "unknown metric '" + c.metric + "'");
  }
  if (c.threshold.has_value() == c.scale.has_value()) {
    report.add(path, "exactly one of threshold/scale must be set");
  }
  if (c.threshold && !units::find_unit(c.threshold->value.unit)) {
    report.add(path + ".threshold", "unknown unit tag '" +
                                        c.threshold->value.unit + "'");
  }
  if (c.scale) {
    const auto& bps = c.scale->breakpoints;
    if (bps.size() < 2) {
      report.add(path + ".scale", "an evaluation scale needs at least two "
                                  "breakpoints");
    }
    for (std::size_t i = 0; i < bps.size(); ++i) {
      if (bps[i].fulfillment < 0.0 || bps[i].fulfillment > 100.0) {
        report.add(path + ".scale." + idx("breakpoints", i),
                   "fulfillment must be within [0, 100]");
      }
      if (i > 0 && !(bps[i - 1].metric_value.si() < bps[i].metric_value.si())) {
        report.add(path + ".scale." + idx("breakpoints", i),
                   "breakpoints must be strictly sorted by metric value");
      }
    }
    if (c.scale->out_of_domain_fulfillment < 0.0 ||
        c.scale->out_of_domain_fulfillment > 100.0) {
      report.add(path + ".scale.out_of_domain_fulfillment",
                 "fulfillment must be within [0, 100]");
    }
  }

  if (c.period.start.nodes.empty()) {
    report.add(path + ".application_period", "start condition missing");
  } else {
    if (condition::has_bare_equality(c.period.start)) {
      report.add(path + ".application_period",
                 "equality on a sampled signal requires an explicit tolerance "
                 "('signal == value ~ tol'); use ~ 0 for pure crossing "
                 "detection");
    }
    if (ctx.signals) {
      for (const std::string& s : condition::referenced_signals(c.period.start)) {
        if (!ctx.signals->signals.count(s)) {
          report.add(path + ".application_period",
                     "condition references unknown signal '" + s + "'");
        }
      }
      for (const std::string& f : condition::referenced_flags(c.period.start)) {
        if (!ctx.signals->flags.count(f)) {
          report.add(path + ".application_period",
                     "condition references unknown flag '" + f + "'");
        }
      }
    }
  }
  if (c.period.end.type == ApplicationPeriod::End::Type::elapsed &&
      !(c.period.end.elapsed > 0.0)) {
    report.add(path + ".application_period.end", "elapsed time must be > 0");
  }
  if (c.period.end.type == ApplicationPeriod::End::Type::event &&
      c.period.end.event_id.empty()) {
    report.add(path + ".application_period.end", "event id must be non-empty");
  }

  if (cross_case) {
    if (c.scope != CriterionScope::procedure &&
        c.scope != CriterionScope::cross_procedure) {
      report.add(path + ".scope",
                 "cross-case criteria must have procedure or cross_procedure "
                 "scope");
    }
  } else if (c.scope != CriterionScope::scene &&
             c.scope != CriterionScope::scenario) {
    report.add(path + ".scope",
               "case criteria must have scene or scenario scope");
  }
}

void validate_objectives(const std::vector<TestObjective>& objectives,
                         const std::string& path, ValidationReport& report) {
  for (std::size_t i = 0; i < objectives.size(); ++i) {
    const TestObjective& o = objectives[i];
    if (o.description.empty()) {
      report.add(idx(path, i) + ".description",
                 "objective description must be non-empty");
    }
    validate_objectives(o.children, idx(path, i) + ".children", report);
  }
}

}  // namespace

const MetricDef* MetricCatalog::find(const std::string& name) const {
  for (const MetricDef& m : metrics) {
    if (m.name == name) {
      return &m;
    }
  }
  return nullptr;
}

ValidationReport validate_metric_catalog(const MetricCatalog& c) {
  ValidationReport report;
  std::set<std::string> names;
  for (std::size_t i = 0; i < c.metrics.size(); ++i) {
    const MetricDef& m = c.metrics[i];
    const std::string path = idx("metrics", i);
    if (m.name.empty()) {
      report.add(path + ".name", "metric name must be non-empty");
    } else if (!names.insert(m.name).second) {
      report.add(path + ".name", "duplicate metric name '" + m.name + "'");
    }
    if (m.formula == MetricDef::Formula::average_ego_deceleration &&
        !(m.window > 0.0)) {
      report.add(path + ".window", "averaging window must be > 0");
    }
    if (!units::find_unit(m.output_unit)) {
      report.add(path + ".output_unit",
                 "unknown unit tag '" + m.output_unit + "'");
    }
  }
  return report;
}

double EvaluationScale::fulfillment_at(double value_si) const {
  if (breakpoints.empty()) {
    return out_of_domain_fulfillment;
  }
  const double lo = breakpoints.front().metric_value.si();
  const double hi = breakpoints.back().metric_value.si();
  if (value_si < lo || value_si > hi) {
    return out_of_domain_fulfillment;
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    const double a = breakpoints[i - 1].metric_value.si();
    const double b = breakpoints[i].metric_value.si();
    if (value_si <= b) {
      const double fa = breakpoints[i - 1].fulfillment;
      const double fb = breakpoints[i].fulfillment;
      if (value_si == a) {
        return fa;
      }
      if (value_si == b) {
        return fb;
      }
      return fa + (value_si - a) / (b - a) * (fb - fa);
    }
  }
  return breakpoints.back().fulfillment;
}

const TestCase* TestSpecification::find_case(const std::string& id) const {
  for (const TestCase& c : cases) {
    if (c.id == id) {
      return &c;
    }
  }
  return nullptr;
}

const TestProcedure* TestSpecification::find_procedure(
    const std::string& id) const {
  for (const TestProcedure& p : procedures) {
    if (p.id == id) {
      return &p;
    }
  }
  return nullptr;
}

SignalCatalog SignalCatalog::builtin() {
  SignalCatalog c;
  c.signals = {"time", "v_ego", "a_ego", "v_set", "a_target", "gap", "v_lead"};
  c.flags = {"acc_active", "acc_command"};
  return c;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a64(bytes);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

TestCase build_test_case(const model::ConcreteScenario& scenario,
                         std::vector<EvaluationCriterion> criteria) {
  if (criteria.empty()) {
    throw Error(ErrorCode::empty_criteria,
                "a test case consists of a concrete scenario and one or more "
                "evaluation criteria");
  }
  // Canonical digest of the criteria so identical inputs yield identical ids.
  std::string digest;
  for (const EvaluationCriterion& c : criteria) {
    digest += c.id;
    digest += '|';
    digest += c.metric;
    digest += '|';
    if (c.threshold) {
      digest += "thr:";
      digest += format_double(c.threshold->value.value);
      digest += c.threshold->value.unit;
      digest += c.threshold->direction == Threshold::Direction::must_not_exceed
                    ? "<=" : ">=";
    }
    if (c.scale) {
      digest += "scale:";
      for (const auto& bp : c.scale->breakpoints) {
        digest += format_double(bp.metric_value.value);
        digest += bp.metric_value.unit;
        digest += '@';
        digest += format_double(bp.fulfillment);
        digest += ';';
      }
      digest += format_double(c.scale->out_of_domain_fulfillment);
    }
    digest += '|';
    digest += condition::serialize(c.period.start);
    digest += '\n';
  }
  TestCase tc;
  tc.id = "TC-" + scenario.id + "-" + fnv1a64_hex(digest).substr(0, 8);
  tc.name = "Test Case " + scenario.id;
  tc.scenario = scenario.id;
  tc.criteria = std::move(criteria);
  return tc;
}

ValidationReport validate_specification(const TestSpecification& spec,
                                        const SpecContext& ctx) {
  ValidationReport report;

  const bool has_cases = !spec.cases.empty();
  if (has_cases && spec.design.case_format.empty()) {
    report.add("design.case_format",
               "the test case format must be declared before cases exist");
  }
  if (!spec.procedures.empty() && spec.design.procedure_format.empty()) {
    report.add("design.procedure_format",
               "the test procedure format must be declared before procedures "
               "exist");
  }

  std::set<std::string> case_ids;
  for (std::size_t i = 0; i < spec.cases.size(); ++i) {
    const TestCase& tc = spec.cases[i];
    const std::string path = idx("cases", i);
    if (tc.id.empty()) {
      report.add(path + ".id", "test case id must be non-empty");
    } else if (!case_ids.insert(tc.id).second) {
      report.add(path + ".id", "duplicate test case id '" + tc.id + "'");
    }
    if (tc.criteria.empty()) {
      report.add(path + ".criteria",
                 "a test case consists of a concrete scenario and one or more "
                 "evaluation criteria");
    }
    if (ctx.scenario_ids && !ctx.scenario_ids->count(tc.scenario)) {
      report.add(path + ".scenario",
                 "unknown concrete scenario '" + tc.scenario + "'");
    }
    for (std::size_t k = 0; k < tc.criteria.size(); ++k) {
      validate_criterion(tc.criteria[k], ctx, path + "." + idx("criteria", k),
                         false, report);
    }
  }

  for (std::size_t i = 0; i < spec.procedures.size(); ++i) {
    const TestProcedure& p = spec.procedures[i];
    const std::string path = idx("procedures", i);
    if (p.cases.empty()) {
      report.add(path + ".cases",
                 "a test procedure is a sequence of one or more test cases");
    }
    for (const std::string& id : p.cases) {
      if (!case_ids.count(id)) {
        report.add(path + ".cases", "unknown test case '" + id + "'");
      }
    }
    for (std::size_t k = 0; k < p.cross_case_criteria.size(); ++k) {
      validate_criterion(p.cross_case_criteria[k], ctx,
                         path + "." + idx("cross_case_criteria", k), true,
                         report);
    }
    if (ctx.bench_config_ids) {
      for (const std::string& id : p.bench_configs) {
        if (!ctx.bench_config_ids->count(id)) {
          report.add(path + ".bench_configs",
                     "unknown test bench configuration '" + id + "'");
        }
      }
    }
  }
  return report;
}

ValidationReport validate_plans(const PlanSet& plans) {
  ValidationReport report;
  std::set<std::string> doc_ids;
  for (std::size_t i = 0; i < plans.documents.size(); ++i) {
    const PlanDocument& d = plans.documents[i];
    const std::string path = idx("documents", i);
    if (d.id.empty()) {
      report.add(path + ".id", "document id must be non-empty");
    } else if (!doc_ids.insert(d.id).second) {
      report.add(path + ".id", "duplicate document id '" + d.id + "'");
    }
  }
  for (std::size_t i = 0; i < plans.documents.size(); ++i) {
    for (const std::string& parent : plans.documents[i].parents) {
      if (!doc_ids.count(parent)) {
        report.add(idx("documents", i) + ".parents",
                   "unknown parent document '" + parent + "'");
      }
    }
  }
  for (std::size_t i = 0; i < plans.test_plans.size(); ++i) {
    const TestPlan& p = plans.test_plans[i];
    const std::string path = idx("test_plans", i);
    if (p.objectives.empty()) {
      report.add(path + ".objectives",
                 "a test plan is a detailed description of test objectives; "
                 "the objectives tree must be non-empty");
    }
    validate_objectives(p.objectives, path + ".objectives", report);
    if (p.test_object.version.empty()) {
      report.add(path + ".test_object.version",
                 "the test object version identifies the exact object under "
                 "test and must be non-empty");
    }
    if (!p.derived_from.empty() && !doc_ids.count(p.derived_from)) {
      report.add(path + ".derived_from",
                 "unknown plan document '" + p.derived_from + "'");
    }
  }
  return report;
}

}  // namespace scentest::spec
