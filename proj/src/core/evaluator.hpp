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
#include <memory>
#include <string>
#include <vector>

#include "core/engine.hpp"
#include "core/testspec.hpp"
#include "core/trace.hpp"

namespace scentest::eval {

struct EvalOptions {
  // Applied to `==` predicates without an explicit tolerance (validated
  // spec files always carry one; recorded data evaluated programmatically
  // may not).
  double default_equality_tolerance = 0.1;
};

/// A metric result: a number and a unit, computed at a point in time.
struct MetricResult {
  double time = 0.0;
  double value = 0.0;  // SI
  std::string unit;
  std::string metric;
};

/// Half-open sample-index interval [begin, end).
struct IndexInterval {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const IndexInterval&) const = default;
};

/// Disjoint, sorted activation intervals within the trace span.
struct ActiveIntervals {
  std::vector<IndexInterval> intervals;

  bool empty() const { return intervals.empty(); }
  bool contains(std::size_t index) const;
};

/// Activation begins at the first sample where the start condition holds
/// (once-latches included) and ends per the end rule. Only
/// condition_no_longer_fulfilled can re-fire and produce several intervals.
/// Throws Error{unknown_signal} when the condition references a signal or
/// flag the trace does not carry.
ActiveIntervals activate(const spec::ApplicationPeriod& period,
                         const engine::ExecutionTrace& trace,
                         const EvalOptions& options = {});

std::vector<MetricResult> metric_ego_speed(const engine::ExecutionTrace& trace,
                                           const ActiveIntervals& intervals);

/// Mean deceleration over the closed window [t - window, t] on the sample
/// grid; emitted only once a full window fits inside the active interval.
std::vector<MetricResult> metric_avg_decel(const engine::ExecutionTrace& trace,
                                           const ActiveIntervals& intervals,
                                           double window);

/// gap / (v_ego - v_lead) per sample with positive closing speed. Throws
/// Error{missing_signal} when the trace has no lead-vehicle data at all.
std::vector<MetricResult> metric_ttc(const engine::ExecutionTrace& trace,
                                     const ActiveIntervals& intervals);

std::vector<MetricResult> compute_metric(const spec::MetricDef& def,
                                         const engine::ExecutionTrace& trace,
                                         const ActiveIntervals& intervals);

struct ResultJudgment {
  MetricResult result;
  double fulfillment = 0.0;  // percent
};

struct CriterionEvaluation {
  std::string criterion;
  std::string metric;
  bool skipped = false;    // application period never activated
  bool fulfilled = false;  // all results pass / all fulfillments > 0
  double aggregate_fulfillment = 0.0;  // minimum over results
  std::vector<ResultJudgment> results;
  ActiveIntervals intervals;
};

/// Threshold judgments are binary per result (100% / 0%); scale judgments
/// are the piecewise-linear fulfillment.
CriterionEvaluation judge(const spec::EvaluationCriterion& criterion,
                          std::vector<MetricResult> results,
                          ActiveIntervals intervals);

enum class Verdict { passed, failed, skipped, invalid_trace };
const char* to_string(Verdict v);

struct CaseEvaluation {
  std::string case_id;
  std::string scenario_id;
  Verdict verdict = Verdict::passed;
  bool trace_valid = true;
  std::string trace_hash;  // filled by the campaign runner
  std::vector<CriterionEvaluation> criteria;
};

/// Post-hoc evaluation of a recorded trace. Throws Error{trace_mismatch}
/// when the trace belongs to a different scenario.
CaseEvaluation evaluate_case(const spec::TestCase& tc,
                             const engine::ExecutionTrace& trace,
                             const spec::MetricCatalog& metrics,
                             const EvalOptions& options = {});

struct TestReport {
  std::string procedure_id;
  Verdict overall = Verdict::passed;
  std::vector<CaseEvaluation> cases;  // procedure order
  std::vector<CriterionEvaluation> cross_case;

  struct Provenance {
    std::map<std::string, std::string> trace_hashes;  // case id -> hash
    std::vector<std::string> config_ids;
    std::string tool_version;
  };
  Provenance provenance;
};

/// Assembles the report: per-case verdicts in procedure order, cross-case
/// criteria judged over the concatenated per-case metric results, overall
/// verdict. Throws Error{incomplete_input} when an evaluation or trace is
/// missing for a listed case.
TestReport evaluate_procedure(
    const spec::TestProcedure& procedure,
    const std::vector<CaseEvaluation>& case_evaluations,
    const std::map<std::string, const engine::ExecutionTrace*>& traces,
    const spec::MetricCatalog& metrics, const EvalOptions& options = {});

/// Streaming evaluation fed sample-by-sample during execution; finalize()
/// yields the same CriterionEvaluations as the post-hoc path on the
/// recorded trace.
class IncrementalCaseEvaluator {
 public:
  IncrementalCaseEvaluator(const spec::TestCase& tc,
                           const spec::MetricCatalog& metrics, double dt,
                           const EvalOptions& options = {});
  ~IncrementalCaseEvaluator();

  IncrementalCaseEvaluator(IncrementalCaseEvaluator&&) noexcept;
  IncrementalCaseEvaluator& operator=(IncrementalCaseEvaluator&&) noexcept;

  struct Sample {
    double time = 0.0;
    double v_ego = 0.0;
    double a_ego = 0.0;  // deceleration, positive-signed
    double v_set = 0.0;
    double a_target = 0.0;
    bool acc_active = false;
    bool acc_command = false;
    bool lead_present = false;
    double gap = 0.0;
    double v_lead = 0.0;
  };

  void on_event(const std::string& id, std::size_t index);
  void push(const Sample& sample);
  CaseEvaluation finalize(bool trace_valid);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace scentest::eval
