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

#include "core/evaluator.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace scentest::eval {

namespace {

/// Left-to-right sum over the closed sample window; shared by the batch and
/// incremental paths so both produce the identical floating-point value.
double window_mean(const std::vector<double>& column, std::size_t first,
                   std::size_t last) {
  double sum = 0.0;
  for (std::size_t j = first; j <= last; ++j) {
    sum += column[j];
  }
  return sum / static_cast<double>(last - first + 1);
}

std::size_t window_steps(double window, double dt) {
  return static_cast<std::size_t>(std::floor(window / dt + 1e-9));
}

/// Interval state machine shared by activate() and the incremental
/// evaluator. The caller feeds the per-sample condition truth (and event
/// firings) in time order.
class IntervalTracker {
 public:
  IntervalTracker(const spec::ApplicationPeriod::End& end, double dt)
      : end_(end), dt_(dt) {}

  void on_event(const std::string& id, std::size_t index) {
    if (end_.type != spec::ApplicationPeriod::End::Type::event ||
        id != end_.event_id) {
      return;
    }
    // Occurrences before activation do not terminate the period.
    if (open_ && index >= start_) {
      close(index);
      done_ = true;
    }
  }

  void push(std::size_t index, bool condition_true) {
    using End = spec::ApplicationPeriod::End::Type;
    switch (end_.type) {
      case End::condition_no_longer_fulfilled:
        if (condition_true && !open_) {
          open_ = true;
          start_ = index;
        } else if (!condition_true && open_) {
          close(index);
        }
        break;
      case End::elapsed:
        if (open_ && index >= end_index_) {
          close(end_index_);
          done_ = true;
        }
        if (!done_ && !activated_ && condition_true) {
          open_ = true;
          activated_ = true;
          start_ = index;
          end_index_ = index + std::max<std::size_t>(
                                   1, window_steps(end_.elapsed, dt_));
        }
        break;
      case End::event:
        if (!done_ && !activated_ && condition_true) {
          open_ = true;
          activated_ = true;
          start_ = index;
        }
        break;
    }
  }

  bool active_at(std::size_t index) const {
    if (!open_ || index < start_) {
      return false;
    }
    if (end_.type == spec::ApplicationPeriod::End::Type::elapsed) {
      return index < end_index_;
    }
    return true;
  }

  std::size_t current_start() const { return start_; }

  void finish(std::size_t sample_count) {
    if (open_) {
      close(end_.type == spec::ApplicationPeriod::End::Type::elapsed
                ? std::min(end_index_, sample_count)
                : sample_count);
    }
  }

  const std::vector<IndexInterval>& intervals() const { return intervals_; }

 private:
  void close(std::size_t end_index) {
    if (end_index > start_) {
      intervals_.push_back({start_, end_index});
    }
    open_ = false;
  }

  spec::ApplicationPeriod::End end_;
  double dt_;
  bool open_ = false;
  bool activated_ = false;  // elapsed/event activate once
  bool done_ = false;
  std::size_t start_ = 0;
  std::size_t end_index_ = 0;
  std::vector<IndexInterval> intervals_;
};

condition::SampleView trace_view(const engine::ExecutionTrace& trace,
                                 std::size_t index) {
  condition::SampleView view;
  view.signal = [&trace, index](std::string_view name) {
    return trace.signal_at(name, index);
  };
  view.flag = [&trace, index](std::string_view name) {
    return trace.flag_at(name, index);
  };
  return view;
}

void require_signals(const spec::ApplicationPeriod& period,
                     const engine::ExecutionTrace& trace) {
  for (const std::string& s : condition::referenced_signals(period.start)) {
    if (!trace.has_signal(s)) {
      throw Error(ErrorCode::unknown_signal,
                  "condition references signal '" + s +
                      "' which the trace does not carry");
    }
  }
  for (const std::string& f : condition::referenced_flags(period.start)) {
    if (!trace.has_flag(f)) {
      throw Error(ErrorCode::unknown_signal,
                  "condition references flag '" + f +
                      "' which the trace does not carry");
    }
  }
}

Verdict combine_case_verdict(const std::vector<CriterionEvaluation>& criteria,
                             bool trace_valid) {
  if (!trace_valid) {
    return Verdict::invalid_trace;
  }
  bool any_failed = false;
  bool any_skipped = false;
  for (const CriterionEvaluation& c : criteria) {
    if (c.skipped) {
      any_skipped = true;
    } else if (!c.fulfilled) {
      any_failed = true;
    }
  }
  if (any_failed) {
    return Verdict::failed;
  }
  if (any_skipped) {
    return Verdict::skipped;
  }
  return Verdict::passed;
}

}  // namespace

bool ActiveIntervals::contains(std::size_t index) const {
  for (const IndexInterval& iv : intervals) {
    if (index >= iv.begin && index < iv.end) {
      return true;
    }
  }
  return false;
}

ActiveIntervals activate(const spec::ApplicationPeriod& period,
                         const engine::ExecutionTrace& trace,
                         const EvalOptions& options) {
  require_signals(period, trace);
  condition::Runtime runtime(period.start,
                             options.default_equality_tolerance);
  IntervalTracker tracker(period.end, trace.time_step);

  std::size_t next_event = 0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    while (next_event < trace.events.size() &&
           trace.events[next_event].index <= i) {
      tracker.on_event(trace.events[next_event].id,
                       trace.events[next_event].index);
      ++next_event;
    }
    tracker.push(i, runtime.step(trace_view(trace, i)));
  }
  tracker.finish(trace.size());

  ActiveIntervals out;
  out.intervals = tracker.intervals();
  return out;
}

std::vector<MetricResult> metric_ego_speed(const engine::ExecutionTrace& trace,
                                           const ActiveIntervals& intervals) {
  std::vector<MetricResult> out;
  for (const IndexInterval& iv : intervals.intervals) {
    for (std::size_t i = iv.begin; i < iv.end && i < trace.size(); ++i) {
      out.push_back({trace.time[i], trace.v_ego[i], "m/s", "ego_speed"});
    }
  }
  return out;
}

std::vector<MetricResult> metric_avg_decel(const engine::ExecutionTrace& trace,
                                           const ActiveIntervals& intervals,
                                           double window) {
  if (!(window > 0.0)) {
    throw Error(ErrorCode::config, "averaging window must be > 0");
  }
  const std::size_t m = window_steps(window, trace.time_step);
  std::vector<MetricResult> out;
  for (const IndexInterval& iv : intervals.intervals) {
    for (std::size_t i = iv.begin; i < iv.end && i < trace.size(); ++i) {
      if (i < iv.begin + m) {
        continue;  // a full window must lie inside the active period
      }
      out.push_back({trace.time[i], window_mean(trace.a_ego, i - m, i),
                     "m/s^2", "average_ego_deceleration"});
    }
  }
  return out;
}

std::vector<MetricResult> metric_ttc(const engine::ExecutionTrace& trace,
                                     const ActiveIntervals& intervals) {
  const bool any_lead =
      std::any_of(trace.lead_present.begin(), trace.lead_present.end(),
                  [](std::uint8_t p) { return p != 0; });
  if (!any_lead) {
    throw Error(ErrorCode::missing_signal,
                "time_to_collision requires lead-vehicle data (gap, v_lead)");
  }
  std::vector<MetricResult> out;
  for (const IndexInterval& iv : intervals.intervals) {
    for (std::size_t i = iv.begin; i < iv.end && i < trace.size(); ++i) {
      if (!trace.lead_present[i]) {
        continue;
      }
      const double closing = trace.v_ego[i] - trace.v_lead[i];
      if (closing > 0.0) {
        out.push_back(
            {trace.time[i], trace.gap[i] / closing, "s", "time_to_collision"});
      }
    }
  }
  return out;
}

std::vector<MetricResult> compute_metric(const spec::MetricDef& def,
                                         const engine::ExecutionTrace& trace,
                                         const ActiveIntervals& intervals) {
  switch (def.formula) {
    case spec::MetricDef::Formula::ego_speed:
      return metric_ego_speed(trace, intervals);
    case spec::MetricDef::Formula::average_ego_deceleration:
      return metric_avg_decel(trace, intervals, def.window);
    case spec::MetricDef::Formula::time_to_collision:
      return metric_ttc(trace, intervals);
  }
  throw Error(ErrorCode::config, "unknown metric formula");
}

CriterionEvaluation judge(const spec::EvaluationCriterion& criterion,
                          std::vector<MetricResult> results,
                          ActiveIntervals intervals) {
  CriterionEvaluation out;
  out.criterion = criterion.id;
  out.metric = criterion.metric;
  out.intervals = std::move(intervals);
  out.skipped = out.intervals.empty();

  bool all_pass = true;
  double min_fulfillment = results.empty() ? 0.0 : 100.0;
  out.results.reserve(results.size());
  for (MetricResult& r : results) {
    double fulfillment = 0.0;
    if (criterion.threshold) {
      const double limit = criterion.threshold->value.si();
      const bool pass =
          criterion.threshold->direction ==
                  spec::Threshold::Direction::must_not_exceed
              ? r.value <= limit
              : r.value >= limit;
      fulfillment = pass ? 100.0 : 0.0;
      all_pass = all_pass && pass;
    } else if (criterion.scale) {
      fulfillment = criterion.scale->fulfillment_at(r.value);
      all_pass = all_pass && fulfillment > 0.0;
    } else {
      all_pass = false;
    }
    min_fulfillment = std::min(min_fulfillment, fulfillment);
    out.results.push_back({std::move(r), fulfillment});
  }

  out.aggregate_fulfillment = out.results.empty() ? 0.0 : min_fulfillment;
  out.fulfilled = !out.results.empty() && all_pass;
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::passed: return "passed";
    case Verdict::failed: return "failed";
    case Verdict::skipped: return "skipped";
    case Verdict::invalid_trace: return "invalid_trace";
  }
  return "?";
}

CaseEvaluation evaluate_case(const spec::TestCase& tc,
                             const engine::ExecutionTrace& trace,
                             const spec::MetricCatalog& metrics,
                             const EvalOptions& options) {
  if (trace.scenario_id != tc.scenario) {
    throw Error(ErrorCode::trace_mismatch,
                "trace belongs to scenario '" + trace.scenario_id +
                    "', test case '" + tc.id + "' references '" + tc.scenario +
                    "'");
  }
  CaseEvaluation out;
  out.case_id = tc.id;
  out.scenario_id = tc.scenario;
  out.trace_valid = trace.valid;
  for (const spec::EvaluationCriterion& c : tc.criteria) {
    const spec::MetricDef* def = metrics.find(c.metric);
    if (!def) {
      throw Error(ErrorCode::config, "criterion '" + c.id +
                                         "' references unknown metric '" +
                                         c.metric + "'");
    }
    ActiveIntervals intervals = activate(c.period, trace, options);
    std::vector<MetricResult> results = compute_metric(*def, trace, intervals);
    out.criteria.push_back(judge(c, std::move(results), std::move(intervals)));
  }
  out.verdict = combine_case_verdict(out.criteria, trace.valid);
  return out;
}

TestReport evaluate_procedure(
    const spec::TestProcedure& procedure,
    const std::vector<CaseEvaluation>& case_evaluations,
    const std::map<std::string, const engine::ExecutionTrace*>& traces,
    const spec::MetricCatalog& metrics, const EvalOptions& options) {
  if (case_evaluations.size() != procedure.cases.size()) {
    throw Error(ErrorCode::incomplete_input,
                "procedure '" + procedure.id + "' lists " +
                    std::to_string(procedure.cases.size()) +
                    " cases but received " +
                    std::to_string(case_evaluations.size()) + " evaluations");
  }
  for (std::size_t i = 0; i < procedure.cases.size(); ++i) {
    if (case_evaluations[i].case_id != procedure.cases[i]) {
      throw Error(ErrorCode::incomplete_input,
                  "evaluation order mismatch: expected case '" +
                      procedure.cases[i] + "', found '" +
                      case_evaluations[i].case_id + "'");
    }
  }

  TestReport report;
  report.procedure_id = procedure.id;
  report.cases = case_evaluations;

  // Cross-case criteria operate on the concatenated per-case results, in
  // procedure order.
  for (const spec::EvaluationCriterion& c : procedure.cross_case_criteria) {
    const spec::MetricDef* def = metrics.find(c.metric);
    if (!def) {
      throw Error(ErrorCode::config, "cross-case criterion '" + c.id +
                                         "' references unknown metric '" +
                                         c.metric + "'");
    }
    std::vector<MetricResult> all_results;
    bool any_active = false;
    for (const std::string& case_id : procedure.cases) {
      auto it = traces.find(case_id);
      if (it == traces.end() || !it->second) {
        throw Error(ErrorCode::incomplete_input,
                    "missing trace for case '" + case_id + "'");
      }
      ActiveIntervals intervals = activate(c.period, *it->second, options);
      any_active = any_active || !intervals.empty();
      std::vector<MetricResult> results =
          compute_metric(*def, *it->second, intervals);
      all_results.insert(all_results.end(),
                         std::make_move_iterator(results.begin()),
                         std::make_move_iterator(results.end()));
    }
    // Per-trace sample intervals are meaningless once concatenated, so the
    // cross-case evaluation records none; skipped reflects all traces.
    CriterionEvaluation ce = judge(c, std::move(all_results), ActiveIntervals{});
    ce.skipped = !any_active;
    report.cross_case.push_back(std::move(ce));
  }

  bool any_invalid = false, any_failed = false, any_skipped = false;
  for (const CaseEvaluation& ce : report.cases) {
    any_invalid = any_invalid || ce.verdict == Verdict::invalid_trace;
    any_failed = any_failed || ce.verdict == Verdict::failed;
    any_skipped = any_skipped || ce.verdict == Verdict::skipped;
  }
  for (const CriterionEvaluation& ce : report.cross_case) {
    if (ce.skipped) {
      any_skipped = true;
    } else if (!ce.fulfilled) {
      any_failed = true;
    }
  }
  report.overall = any_invalid   ? Verdict::invalid_trace
                   : any_failed  ? Verdict::failed
                   : any_skipped ? Verdict::skipped
                                 : Verdict::passed;
  return report;
}

// ---------------------------------------------------------------------------
// Incremental evaluation

struct IncrementalCaseEvaluator::Impl {
  struct CriterionState {
    const spec::EvaluationCriterion* criterion;
    const spec::MetricDef* metric;
    condition::Runtime runtime;
    IntervalTracker tracker;
    std::vector<MetricResult> results;
    std::size_t window_samples;
  };

  spec::TestCase tc;
  double dt;
  EvalOptions options;
  std::size_t count = 0;
  std::vector<double> a_ego;  // history for window means
  std::vector<CriterionState> states;

  Impl(const spec::TestCase& tc_in, const spec::MetricCatalog& metrics,
       double dt_in, const EvalOptions& options_in)
      : tc(tc_in), dt(dt_in), options(options_in) {
    for (const spec::EvaluationCriterion& c : tc.criteria) {
      const spec::MetricDef* def = metrics.find(c.metric);
      if (!def) {
        throw Error(ErrorCode::config, "criterion '" + c.id +
                                           "' references unknown metric '" +
                                           c.metric + "'");
      }
      states.push_back(CriterionState{
          &c, def, condition::Runtime(c.period.start,
                                      options.default_equality_tolerance),
          IntervalTracker(c.period.end, dt),
          {},
          def->formula == spec::MetricDef::Formula::average_ego_deceleration
              ? window_steps(def->window, dt)
              : 0});
    }
  }
};

IncrementalCaseEvaluator::IncrementalCaseEvaluator(
    const spec::TestCase& tc, const spec::MetricCatalog& metrics, double dt,
    const EvalOptions& options)
    : impl_(std::make_unique<Impl>(tc, metrics, dt, options)) {}

IncrementalCaseEvaluator::~IncrementalCaseEvaluator() = default;
IncrementalCaseEvaluator::IncrementalCaseEvaluator(
    IncrementalCaseEvaluator&&) noexcept = default;
IncrementalCaseEvaluator& IncrementalCaseEvaluator::operator=(
    IncrementalCaseEvaluator&&) noexcept = default;

void IncrementalCaseEvaluator::on_event(const std::string& id,
                                        std::size_t index) {
  for (auto& state : impl_->states) {
    state.tracker.on_event(id, index);
  }
}

void IncrementalCaseEvaluator::push(const Sample& sample) {
  const std::size_t i = impl_->count++;
  impl_->a_ego.push_back(sample.a_ego);

  condition::SampleView view;
  view.signal = [&sample](std::string_view name) -> std::optional<double> {
    if (name == "time") return sample.time;
    if (name == "v_ego") return sample.v_ego;
    if (name == "a_ego") return sample.a_ego;
    if (name == "v_set") return sample.v_set;
    if (name == "a_target") return sample.a_target;
    if (name == "gap") {
      if (sample.lead_present) return sample.gap;
      return std::nullopt;
    }
    if (name == "v_lead") {
      if (sample.lead_present) return sample.v_lead;
      return std::nullopt;
    }
    return std::nullopt;
  };
  view.flag = [&sample](std::string_view name) {
    if (name == "acc_active") return sample.acc_active;
    if (name == "acc_command") return sample.acc_command;
    return false;
  };

  for (auto& state : impl_->states) {
    state.tracker.push(i, state.runtime.step(view));
    if (!state.tracker.active_at(i)) {
      continue;
    }
    switch (state.metric->formula) {
      case spec::MetricDef::Formula::ego_speed:
        state.results.push_back({sample.time, sample.v_ego, "m/s", "ego_speed"});
        break;
      case spec::MetricDef::Formula::average_ego_deceleration: {
        const std::size_t start = state.tracker.current_start();
        if (i >= start + state.window_samples) {
          state.results.push_back(
              {sample.time,
               window_mean(impl_->a_ego, i - state.window_samples, i),
               "m/s^2", "average_ego_deceleration"});
        }
        break;
      }
      case spec::MetricDef::Formula::time_to_collision: {
        if (sample.lead_present) {
          const double closing = sample.v_ego - sample.v_lead;
          if (closing > 0.0) {
            state.results.push_back({sample.time, sample.gap / closing, "s",
                                     "time_to_collision"});
          }
        }
        break;
      }
    }
  }
}

CaseEvaluation IncrementalCaseEvaluator::finalize(bool trace_valid) {
  CaseEvaluation out;
  out.case_id = impl_->tc.id;
  out.scenario_id = impl_->tc.scenario;
  out.trace_valid = trace_valid;
  for (auto& state : impl_->states) {
    state.tracker.finish(impl_->count);
    ActiveIntervals intervals;
    intervals.intervals = state.tracker.intervals();
    out.criteria.push_back(judge(*state.criterion, std::move(state.results),
                                 std::move(intervals)));
  }
  out.verdict = combine_case_verdict(out.criteria, trace_valid);
  return out;
}

}  // namespace scentest::eval
