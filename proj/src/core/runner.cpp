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

#include "core/runner.hpp"

#include <atomic>
#include <thread>

#include "core/errors.hpp"
#include "core/report.hpp"
#include "core/version.hpp"

namespace scentest::runner {

namespace {

const spec::TestProcedure& resolve_procedure(const io::Campaign& campaign,
                                             const std::string& id) {
  if (id.empty()) {
    if (campaign.test_spec.procedures.size() != 1) {
      throw Error(ErrorCode::config,
                  "campaign declares " +
                      std::to_string(campaign.test_spec.procedures.size()) +
                      " procedures; select one with --procedure");
    }
    return campaign.test_spec.procedures.front();
  }
  const spec::TestProcedure* p = campaign.test_spec.find_procedure(id);
  if (!p) {
    throw Error(ErrorCode::config, "unknown test procedure '" + id + "'");
  }
  return *p;
}

std::string adapter_object_name(const engine::TestBenchConfiguration& cfg) {
  const engine::Element* adapter =
      cfg.find_element(engine::ElementRole::test_object_adapter);
  if (!adapter) {
    return "builtin_acc";
  }
  auto it = adapter->parameters.find("object");
  if (it == adapter->parameters.end()) {
    return "builtin_acc";
  }
  if (const auto* s = std::get_if<std::string>(&it->second)) {
    return *s;
  }
  throw Error(ErrorCode::config, "adapter parameter 'object' must be a string");
}

struct CaseOutcome {
  eval::CaseEvaluation evaluation;
  engine::ExecutionTrace trace;
};

CaseOutcome run_case(const io::Campaign& campaign,
                     const engine::TestBenchConfiguration& cfg,
                     const spec::TestCase& tc, const RunOptions& options,
                     const engine::TestObjectRegistry& registry) {
  const model::ConcreteScenario* scenario =
      campaign.find_concrete(tc.scenario);
  if (!scenario) {
    throw Error(ErrorCode::config, "test case '" + tc.id +
                                       "' references unknown scenario '" +
                                       tc.scenario + "'");
  }

  std::unique_ptr<engine::TestObject> object =
      registry.create(adapter_object_name(cfg));
  const engine::Element* adapter =
      cfg.find_element(engine::ElementRole::test_object_adapter);
  object->reset(adapter ? adapter->parameters
                        : std::map<std::string, engine::ParamValue>{});

  const double dt = options.dt.value_or(cfg.time_step);

  // Criteria are evaluated simultaneously with the execution; the recorded
  // trace supports the post-hoc path.
  eval::IncrementalCaseEvaluator incremental(tc, campaign.metrics, dt,
                                             options.eval);
  auto on_sample = [&](const engine::StepRecord& rec) {
    eval::IncrementalCaseEvaluator::Sample s;
    s.time = rec.time;
    const auto& in = *rec.inputs;
    const auto& out = *rec.outputs;
    s.v_ego = in.count("v_ego") ? in.at("v_ego") : 0.0;
    s.a_ego = std::max(0.0, -rec.a_applied);
    s.v_set = in.count("v_set") ? in.at("v_set") : 0.0;
    s.a_target = out.count("a_target") ? out.at("a_target") : 0.0;
    s.acc_active = out.count("acc_active") && out.at("acc_active") != 0.0;
    s.acc_command = rec.acc_command;
    s.lead_present = in.count("gap") != 0;
    s.gap = s.lead_present ? in.at("gap") : 0.0;
    s.v_lead = in.count("v_lead") ? in.at("v_lead") : 0.0;
    incremental.push(s);
  };
  auto on_event = [&](const std::string& id, std::size_t index) {
    incremental.on_event(id, index);
  };

  CaseOutcome outcome;
  outcome.trace =
      engine::run_scenario(cfg, *scenario, *object, options.dt, on_sample,
                           on_event);
  outcome.evaluation = incremental.finalize(outcome.trace.valid);
  return outcome;
}

void write_case_artifacts(const std::filesystem::path& out_dir,
                          const CaseOutcome& outcome,
                          eval::CaseEvaluation& evaluation,
                          std::vector<std::filesystem::path>& trace_files) {
  const std::filesystem::path trace_path =
      out_dir / trace_file_name(evaluation.case_id);
  const std::string csv = engine::trace_to_csv(outcome.trace);
  io::write_file(trace_path, csv);
  evaluation.trace_hash = "fnv1a:" + spec::fnv1a64_hex(csv);
  trace_files.push_back(trace_path);
  for (const eval::CriterionEvaluation& c : evaluation.criteria) {
    io::write_file(out_dir / (evaluation.case_id + "." + c.criterion +
                              ".metrics.csv"),
                   report::metric_results_csv(c));
  }
}

eval::TestReport assemble_report(
    const io::Campaign& campaign, const spec::TestProcedure& procedure,
    const engine::TestBenchConfiguration& cfg,
    const std::vector<eval::CaseEvaluation>& case_evals,
    const std::map<std::string, const engine::ExecutionTrace*>& traces,
    const eval::EvalOptions& eval_options) {
  eval::TestReport report = eval::evaluate_procedure(
      procedure, case_evals, traces, campaign.metrics, eval_options);
  for (const eval::CaseEvaluation& ce : report.cases) {
    report.provenance.trace_hashes[ce.case_id] = ce.trace_hash;
  }
  report.provenance.config_ids = {cfg.id, cfg.bench};
  report.provenance.tool_version = kToolVersion;
  return report;
}

}  // namespace

std::string trace_file_name(const std::string& case_id) {
  return case_id + ".trace.csv";
}

const engine::TestBenchConfiguration& resolve_bench_config(
    const io::Campaign& campaign, const spec::TestProcedure& procedure) {
  const engine::TestBenchConfiguration* cfg = nullptr;
  if (!procedure.bench_configs.empty()) {
    cfg = campaign.find_bench_config(procedure.bench_configs.front());
    if (!cfg) {
      throw Error(ErrorCode::config,
                  "procedure '" + procedure.id +
                      "' references unknown bench configuration '" +
                      procedure.bench_configs.front() + "'");
    }
  } else if (campaign.bench_configs.size() == 1) {
    cfg = &campaign.bench_configs.front();
  } else {
    throw Error(ErrorCode::config,
                "procedure '" + procedure.id +
                    "' names no bench configuration and the campaign does "
                    "not have exactly one");
  }

  const engine::TestBench* bench = campaign.find_bench(cfg->bench);
  if (!bench) {
    throw Error(ErrorCode::config, "bench configuration '" + cfg->id +
                                       "' references unknown bench '" +
                                       cfg->bench + "'");
  }
  std::vector<std::string> missing = engine::missing_capabilities(*cfg, *bench);
  if (!missing.empty()) {
    std::string list;
    for (const std::string& cap : missing) {
      if (!list.empty()) {
        list += ", ";
      }
      list += cap;
    }
    throw Error(ErrorCode::config,
                "bench '" + bench->id + "' does not match configuration '" +
                    cfg->id + "': missing capabilities " + list);
  }
  return *cfg;
}

Outcome run_procedure(const io::Campaign& campaign, const RunOptions& options,
                      const engine::TestObjectRegistry& registry) {
  const spec::TestProcedure& procedure =
      resolve_procedure(campaign, options.procedure_id);
  const engine::TestBenchConfiguration& cfg =
      resolve_bench_config(campaign, procedure);

  std::filesystem::create_directories(options.out_dir);

  const std::size_t n = procedure.cases.size();
  std::vector<CaseOutcome> outcomes(n);
  std::vector<std::exception_ptr> failures(n);

  const int parallelism =
      std::max(1, std::min<int>(options.parallelism, static_cast<int>(n)));
  if (parallelism == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      const spec::TestCase* tc = campaign.test_spec.find_case(procedure.cases[i]);
      if (!tc) {
        throw Error(ErrorCode::config, "procedure '" + procedure.id +
                                           "' references unknown case '" +
                                           procedure.cases[i] + "'");
      }
      outcomes[i] = run_case(campaign, cfg, *tc, options, registry);
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) {
          return;
        }
        try {
          const spec::TestCase* tc =
              campaign.test_spec.find_case(procedure.cases[i]);
          if (!tc) {
            throw Error(ErrorCode::config, "procedure '" + procedure.id +
                                               "' references unknown case '" +
                                               procedure.cases[i] + "'");
          }
          outcomes[i] = run_case(campaign, cfg, *tc, options, registry);
        } catch (...) {
          failures[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(parallelism));
    for (int t = 0; t < parallelism; ++t) {
      threads.emplace_back(worker);
    }
    for (std::thread& t : threads) {
      t.join();
    }
    for (const std::exception_ptr& failure : failures) {
      if (failure) {
        std::rethrow_exception(failure);
      }
    }
  }

  // Report assembly is sequential and ordered by the procedure.
  Outcome out;
  std::vector<eval::CaseEvaluation> case_evals;
  std::map<std::string, const engine::ExecutionTrace*> traces;
  case_evals.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    eval::CaseEvaluation evaluation = outcomes[i].evaluation;
    write_case_artifacts(options.out_dir, outcomes[i], evaluation,
                         out.trace_files);
    traces[evaluation.case_id] = &outcomes[i].trace;
    case_evals.push_back(std::move(evaluation));
  }

  out.report = assemble_report(campaign, procedure, cfg, case_evals, traces,
                               options.eval);
  out.report_file = options.out_dir / (procedure.id + ".report.json");
  report::save_report(out.report, out.report_file);
  if (options.text_report) {
    io::write_file(options.out_dir / (procedure.id + ".report.txt"),
                   report::render_text(out.report));
  }
  return out;
}

Outcome evaluate_recorded(const io::Campaign& campaign,
                          const std::string& procedure_id,
                          const std::filesystem::path& trace_dir,
                          const std::filesystem::path& out_dir,
                          bool text_report,
                          const eval::EvalOptions& eval_options) {
  const spec::TestProcedure& procedure =
      resolve_procedure(campaign, procedure_id);
  const engine::TestBenchConfiguration& cfg =
      resolve_bench_config(campaign, procedure);

  std::filesystem::create_directories(out_dir);

  Outcome out;
  std::vector<eval::CaseEvaluation> case_evals;
  std::vector<engine::ExecutionTrace> loaded;
  loaded.reserve(procedure.cases.size());
  for (const std::string& case_id : procedure.cases) {
    const spec::TestCase* tc = campaign.test_spec.find_case(case_id);
    if (!tc) {
      throw Error(ErrorCode::config, "procedure '" + procedure.id +
                                         "' references unknown case '" +
                                         case_id + "'");
    }
    const std::filesystem::path trace_path =
        trace_dir / trace_file_name(case_id);
    loaded.push_back(engine::load_trace(trace_path));
    eval::CaseEvaluation evaluation =
        eval::evaluate_case(*tc, loaded.back(), campaign.metrics, eval_options);
    evaluation.trace_hash =
        "fnv1a:" + spec::fnv1a64_hex(io::read_file(trace_path));
    for (const eval::CriterionEvaluation& c : evaluation.criteria) {
      io::write_file(out_dir / (case_id + "." + c.criterion + ".metrics.csv"),
                     report::metric_results_csv(c));
    }
    case_evals.push_back(std::move(evaluation));
  }

  std::map<std::string, const engine::ExecutionTrace*> traces;
  for (std::size_t i = 0; i < procedure.cases.size(); ++i) {
    traces[procedure.cases[i]] = &loaded[i];
  }

  out.report = assemble_report(campaign, procedure, cfg, case_evals, traces,
                               eval_options);
  out.report_file = out_dir / (procedure.id + ".report.json");
  report::save_report(out.report, out.report_file);
  if (text_report) {
    io::write_file(out_dir / (procedure.id + ".report.txt"),
                   report::render_text(out.report));
  }
  return out;
}

}  // namespace scentest::runner
