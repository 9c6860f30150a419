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

#include "scentest/scentest.h"

#include <cstring>
#include <string>

#include "core/concretizer.hpp"
#include "core/errors.hpp"
#include "core/evaluator.hpp"
#include "core/io.hpp"
#include "core/report.hpp"
#include "core/runner.hpp"
#include "core/trace.hpp"
#include "core/version.hpp"

namespace {

thread_local std::string g_last_error;

sct_status status_of(const scentest::Error& e) {
  using scentest::ErrorCode;
  switch (e.code()) {
    case ErrorCode::io: return SCT_IO_ERROR;
    case ErrorCode::parse: return SCT_PARSE_ERROR;
    case ErrorCode::unsupported_version: return SCT_UNSUPPORTED_VERSION;
    case ErrorCode::validation:
    case ErrorCode::invalid_logical:
      return SCT_VALIDATION_ERROR;
    case ErrorCode::trace_mismatch: return SCT_MISMATCH;
    case ErrorCode::numerical_fault: return SCT_RUNTIME_FAULT;
    case ErrorCode::config:
    case ErrorCode::unit:
    case ErrorCode::missing_parameter:
    case ErrorCode::empty_criteria:
    case ErrorCode::unknown_signal:
    case ErrorCode::missing_signal:
    case ErrorCode::port_mismatch:
    case ErrorCode::incomplete_input:
      return SCT_CONFIG_ERROR;
  }
  return SCT_CONFIG_ERROR;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_out(char** out, const std::string& s) {
  if (out) {
    *out = dup_string(s);
  }
}

template <typename Fn>
sct_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const scentest::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SCT_CONFIG_ERROR;
  } catch (...) {
    g_last_error = "unknown error";
    return SCT_CONFIG_ERROR;
  }
}

sct_status verdict_status(scentest::eval::Verdict v) {
  using scentest::eval::Verdict;
  switch (v) {
    case Verdict::passed: return SCT_OK;
    case Verdict::failed: return SCT_EVALUATION_FAILED;
    case Verdict::skipped: return SCT_EVALUATION_FAILED;
    case Verdict::invalid_trace: return SCT_RUNTIME_FAULT;
  }
  return SCT_EVALUATION_FAILED;
}

/// Adapts an external C vtable to the engine's TestObject interface.
class VtableObject final : public scentest::engine::TestObject {
 public:
  explicit VtableObject(sct_test_object vtable) : vtable_(vtable) {}

  const scentest::engine::TestObjectPort& port() const override {
    static const scentest::engine::TestObjectPort port =
        scentest::engine::TestObjectPort::acc_v1();
    return port;
  }

  void reset(const std::map<std::string, scentest::engine::ParamValue>&)
      override {
    if (vtable_.reset && vtable_.reset(vtable_.user) != 0) {
      throw scentest::Error(scentest::ErrorCode::config,
                            "external test object reset failed");
    }
  }

  std::map<std::string, double> step(
      const std::map<std::string, double>& inputs) override {
    std::vector<sct_signal> in;
    in.reserve(inputs.size());
    for (const auto& [name, value] : inputs) {
      in.push_back({name.c_str(), value});
    }
    const auto& outs = port().outputs;
    std::vector<sct_signal> out(outs.size());
    for (std::size_t i = 0; i < outs.size(); ++i) {
      out[i] = {outs[i].name.c_str(), 0.0};
    }
    if (vtable_.step(vtable_.user, in.data(), in.size(), out.data(),
                     out.size()) != 0) {
      throw scentest::Error(scentest::ErrorCode::numerical_fault,
                            "external test object aborted the run");
    }
    std::map<std::string, double> result;
    for (const sct_signal& s : out) {
      result[s.name] = s.value;
    }
    return result;
  }

 private:
  sct_test_object vtable_;
};

}  // namespace

struct sct_campaign {
  scentest::io::Campaign campaign;
  scentest::engine::TestObjectRegistry registry;
};

struct sct_trace {
  scentest::engine::ExecutionTrace trace;
};

extern "C" {

const char* sct_version(void) { return scentest::kToolVersion; }

const char* sct_last_error(void) { return g_last_error.c_str(); }

void sct_string_free(char* s) { delete[] s; }

sct_status sct_validate_file(const char* path, char** out_report) {
  if (!path) {
    g_last_error = "path is NULL";
    return SCT_INVALID_ARGUMENT;
  }
  return guarded([&]() -> sct_status {
    scentest::io::FileValidation v = scentest::io::validate_file(path);
    set_out(out_report, v.report.to_string());
    if (!v.report.ok()) {
      g_last_error = "validation violations in '" + std::string(path) + "'";
      return SCT_VALIDATION_ERROR;
    }
    return SCT_OK;
  });
}

sct_status sct_concretize(const char* logical_path,
                          const sct_concretize_options* options,
                          const char* out_dir, int* out_count) {
  if (!logical_path || !options || !out_dir || !options->strategy) {
    g_last_error = "required argument is NULL";
    return SCT_INVALID_ARGUMENT;
  }
  return guarded([&]() -> sct_status {
    scentest::concretizer::ConcretizationConfig cfg;
    const std::string strategy = options->strategy;
    if (strategy == "grid") {
      cfg.strategy = scentest::concretizer::ConcretizationConfig::Strategy::grid;
    } else if (strategy == "uniform_random") {
      cfg.strategy =
          scentest::concretizer::ConcretizationConfig::Strategy::uniform_random;
    } else if (strategy == "boundary") {
      cfg.strategy =
          scentest::concretizer::ConcretizationConfig::Strategy::boundary;
    } else {
      throw scentest::Error(scentest::ErrorCode::config,
                            "unknown strategy '" + strategy + "'");
    }
    cfg.points_per_parameter = options->points_per_parameter;
    cfg.count = options->count;
    cfg.seed = options->seed;
    cfg.include_center = options->include_center != 0;
    if (options->id_prefix) {
      cfg.id_prefix = options->id_prefix;
    }
    scentest::model::LogicalScenario logical =
        scentest::io::load_logical(logical_path);
    std::vector<scentest::model::ConcreteScenario> scenarios =
        scentest::concretizer::concretize(logical, cfg);
    std::filesystem::create_directories(out_dir);
    for (const scentest::model::ConcreteScenario& s : scenarios) {
      scentest::io::save_concrete(
          s, std::filesystem::path(out_dir) / (s.id + ".json"));
    }
    if (out_count) {
      *out_count = static_cast<int>(scenarios.size());
    }
    return SCT_OK;
  });
}

sct_status sct_campaign_open(const char* path, sct_campaign** out) {
  if (!path || !out) {
    g_last_error = "required argument is NULL";
    return SCT_INVALID_ARGUMENT;
  }
  return guarded([&]() -> sct_status {
    auto handle = std::make_unique<sct_campaign>();
    handle->campaign = scentest::io::load_campaign(path);
    *out = handle.release();
    return SCT_OK;
  });
}

void sct_campaign_close(sct_campaign* campaign) { delete campaign; }

sct_status sct_campaign_validate(sct_campaign* campaign, char** out_report) {
  if (!campaign) {
    g_last_error = "campaign is NULL";
    return SCT_INVALID_ARGUMENT;
  }
  return guarded([&]() -> sct_status {
    scentest::ValidationReport report =
        scentest::io::validate_campaign(campaign->campaign);
    set_out(out_report, report.to_string());
    if (!report.ok()) {
      g_last_error = "campaign validation violations";
      return SCT_VALIDATION_ERROR;
    }
    return SCT_OK;
  });
}

sct_status sct_campaign_run(sct_campaign* campaign,
                            const sct_run_options* options,
                            char** out_verdict) {
  if (!campaign || !options || !options->out_dir) {
    g_last_error = "required argument is NULL";
    return SCT_INVALID_ARGUMENT;
  }
  return guarded([&]() -> sct_status {
    scentest::runner::RunOptions run;
    if (options->procedure_id) {
      run.procedure_id = options->procedure_id;
    }
    run.out_dir = options->out_dir;
    if (options->dt > 0.0) {
      run.dt = options->dt;
    }
    run.parallelism = options->parallelism < 1 ? 1 : options->parallelism;
    run.text_report = options->text_report != 0;
    scentest::runner::Outcome outcome =
        scentest::runner::run_procedure(campaign->campaign, run,
                                        campaign->registry);
    set_out(out_verdict, scentest::eval::to_string(outcome.report.overall));
    return verdict_status(outcome.report.overall);
  });
}

sct_status sct_campaign_evaluate(sct_campaign* campaign,
                                 const char* procedure_id,
                                 const char* trace_dir, const char* out_dir,
                                 int text_report, char** out_verdict) {
  if (!campaign || !trace_dir || !out_dir) {
    g_last_error = "required argument is NULL";
    return SCT_INVALID_ARGUMENT;
  }
  return guarded([&]() -> sct_status {
    scentest::runner::Outcome outcome = scentest::runner::evaluate_recorded(
        campaign->campaign, procedure_id ? procedure_id : "", trace_dir,
        out_dir, text_report != 0);
    set_out(out_verdict, scentest::eval::to_string(outcome.report.overall));
    return verdict_status(outcome.report.overall);
  });
}

sct_status sct_campaign_register_test_object(sct_campaign* campaign,
                                             const char* name,
                                             const sct_test_object* object) {
  if (!campaign || !name || !object || !object->step) {
    g_last_error = "required argument is NULL";
    return SCT_INVALID_ARGUMENT;
  }
  return guarded([&]() -> sct_status {
    sct_test_object vtable = *object;
    campaign->registry.register_object(name, [vtable] {
      return std::make_unique<VtableObject>(vtable);
    });
    return SCT_OK;
  });
}

sct_status sct_trace_open(const char* path, sct_trace** out) {
  if (!path || !out) {
    g_last_error = "required argument is NULL";
    return SCT_INVALID_ARGUMENT;
  }
  return guarded([&]() -> sct_status {
    auto handle = std::make_unique<sct_trace>();
    handle->trace = scentest::engine::load_trace(path);
    *out = handle.release();
    return SCT_OK;
  });
}

void sct_trace_close(sct_trace* trace) { delete trace; }

int64_t sct_trace_sample_count(const sct_trace* trace) {
  return trace ? static_cast<int64_t>(trace->trace.size()) : 0;
}

int sct_trace_valid(const sct_trace* trace) {
  return trace && trace->trace.valid ? 1 : 0;
}

sct_status sct_trace_column(const sct_trace* trace, const char* name,
                            const double** out_data, int64_t* out_len) {
  if (!trace || !name || !out_data || !out_len) {
    g_last_error = "required argument is NULL";
    return SCT_INVALID_ARGUMENT;
  }
  const scentest::engine::ExecutionTrace& t = trace->trace;
  const std::vector<double>* column = nullptr;
  const std::string key = name;
  if (key == "time") column = &t.time;
  else if (key == "v_ego") column = &t.v_ego;
  else if (key == "a_ego") column = &t.a_ego;
  else if (key == "v_set") column = &t.v_set;
  else if (key == "a_target") column = &t.a_target;
  else if (key == "gap") column = &t.gap;
  else if (key == "v_lead") column = &t.v_lead;
  if (!column) {
    g_last_error = "unknown column '" + key + "'";
    return SCT_INVALID_ARGUMENT;
  }
  *out_data = column->data();
  *out_len = static_cast<int64_t>(column->size());
  return SCT_OK;
}

sct_status sct_report_render(const char* report_path, char** out_text) {
  if (!report_path || !out_text) {
    g_last_error = "required argument is NULL";
    return SCT_INVALID_ARGUMENT;
  }
  return guarded([&]() -> sct_status {
    scentest::eval::TestReport report =
        scentest::report::load_report(report_path);
    set_out(out_text, scentest::report::render_text(report));
    return SCT_OK;
  });
}

sct_status sct_report_verdict(const char* report_path, char** out_verdict) {
  if (!report_path || !out_verdict) {
    g_last_error = "required argument is NULL";
    return SCT_INVALID_ARGUMENT;
  }
  return guarded([&]() -> sct_status {
    scentest::eval::TestReport report =
        scentest::report::load_report(report_path);
    set_out(out_verdict, scentest::eval::to_string(report.overall));
    return SCT_OK;
  });
}

}  // extern "C"
