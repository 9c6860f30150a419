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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "core/evaluator.hpp"
#include "core/io.hpp"

namespace scentest::runner {

struct RunOptions {
  std::string procedure_id;  // empty = the only procedure
  std::filesystem::path out_dir;
  std::optional<double> dt;
  int parallelism = 1;
  bool text_report = false;
  eval::EvalOptions eval;
};

struct Outcome {
  eval::TestReport report;
  std::filesystem::path report_file;
  std::vector<std::filesystem::path> trace_files;
};

/// Executes a procedure case by case (criteria evaluated incrementally
/// while the simulation steps), writes one trace file per case, the metric
/// result exports, and the procedure report. Independent cases may run
/// concurrently up to `parallelism`; outputs are identical to a sequential
/// run.
Outcome run_procedure(const io::Campaign& campaign, const RunOptions& options,
                      const engine::TestObjectRegistry& registry = {});

/// Post-hoc path: re-evaluates recorded traces from `trace_dir` and writes
/// a report; for traces produced by run_procedure the report is
/// byte-identical.
Outcome evaluate_recorded(const io::Campaign& campaign,
                          const std::string& procedure_id,
                          const std::filesystem::path& trace_dir,
                          const std::filesystem::path& out_dir,
                          bool text_report = false,
                          const eval::EvalOptions& eval_options = {});

/// The procedure's bench configuration, checked against its bench.
/// Throws Error{config} with the missing capabilities listed.
const engine::TestBenchConfiguration& resolve_bench_config(
    const io::Campaign& campaign, const spec::TestProcedure& procedure);

std::string trace_file_name(const std::string& case_id);

}  // namespace scentest::runner
