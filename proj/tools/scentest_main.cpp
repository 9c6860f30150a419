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

// Command-line front door. Exit codes: 0 pass, 1 evaluation failure or
// validation violations, 2 configuration/spec error, 3 runtime fault.
// Logs go to stderr; machine output to files or stdout.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scentest/scentest.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitFault = 3;

std::string take_string(char* s) {
  std::string out = s ? s : "";
  sct_string_free(s);
  return out;
}

int config_exit(sct_status status) {
  return status == SCT_RUNTIME_FAULT ? kExitFault : kExitConfig;
}

int cmd_validate(const std::vector<std::string>& paths) {
  bool violations = false;
  bool unreadable = false;
  for (const std::string& path : paths) {
    char* report = nullptr;
    sct_status status = sct_validate_file(path.c_str(), &report);
    std::string text = take_string(report);
    if (status == SCT_OK) {
      std::fprintf(stderr, "%s: ok\n", path.c_str());
    } else if (status == SCT_VALIDATION_ERROR) {
      violations = true;
      // one violation per line, with file:path coordinates
      std::size_t start = 0;
      while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) {
          end = text.size();
        }
        std::printf("%s:%s\n", path.c_str(),
                    text.substr(start, end - start).c_str());
        start = end + 1;
      }
    } else {
      unreadable = true;
      std::fprintf(stderr, "%s: %s\n", path.c_str(), sct_last_error());
    }
  }
  if (unreadable) {
    return kExitConfig;
  }
  return violations ? kExitFailure : kExitPass;
}

int cmd_concretize(const std::string& logical, const std::string& strategy,
                   const std::string& out_dir, int points, int count,
                   std::uint64_t seed, bool include_center,
                   const std::string& prefix) {
  sct_concretize_options options{};
  options.strategy = strategy.c_str();
  options.points_per_parameter = points;
  options.count = count;
  options.seed = seed;
  options.include_center = include_center ? 1 : 0;
  options.id_prefix = prefix.empty() ? nullptr : prefix.c_str();
  int written = 0;
  sct_status status =
      sct_concretize(logical.c_str(), &options, out_dir.c_str(), &written);
  if (status != SCT_OK) {
    std::fprintf(stderr, "concretize: %s\n", sct_last_error());
    return status == SCT_VALIDATION_ERROR ? kExitFailure : config_exit(status);
  }
  std::printf("%d\n", written);
  std::fprintf(stderr, "wrote %d scenarios to %s\n", written, out_dir.c_str());
  return kExitPass;
}

int report_outcome(sct_status status, const std::string& verdict) {
  switch (status) {
    case SCT_OK:
      std::printf("overall: %s\n", verdict.c_str());
      return kExitPass;
    case SCT_EVALUATION_FAILED:
      std::printf("overall: %s\n", verdict.c_str());
      return kExitFailure;
    case SCT_RUNTIME_FAULT:
      if (!verdict.empty()) {
        std::printf("overall: %s\n", verdict.c_str());
      } else {
        std::fprintf(stderr, "run: %s\n", sct_last_error());
      }
      return kExitFault;
    default:
      std::fprintf(stderr, "%s\n", sct_last_error());
      return kExitConfig;
  }
}

int cmd_run(const std::string& campaign_path, const std::string& procedure,
            const std::string& out_dir, double dt, int parallelism,
            const std::string& format) {
  sct_campaign* campaign = nullptr;
  sct_status status = sct_campaign_open(campaign_path.c_str(), &campaign);
  if (status != SCT_OK) {
    std::fprintf(stderr, "run: %s\n", sct_last_error());
    return kExitConfig;
  }

  char* validation = nullptr;
  status = sct_campaign_validate(campaign, &validation);
  std::string validation_text = take_string(validation);
  if (status != SCT_OK) {
    if (status == SCT_VALIDATION_ERROR) {
      std::printf("%s", validation_text.c_str());
    }
    std::fprintf(stderr, "run: campaign is not valid\n");
    sct_campaign_close(campaign);
    return kExitConfig;
  }

  sct_run_options options{};
  options.procedure_id = procedure.empty() ? nullptr : procedure.c_str();
  options.out_dir = out_dir.c_str();
  options.dt = dt;
  options.parallelism = parallelism;
  options.text_report = format == "text" ? 1 : 0;

  char* verdict = nullptr;
  status = sct_campaign_run(campaign, &options, &verdict);
  sct_campaign_close(campaign);
  return report_outcome(status, take_string(verdict));
}

int cmd_evaluate(const std::string& campaign_path, const std::string& procedure,
                 const std::string& trace_dir, const std::string& out_dir,
                 const std::string& format) {
  sct_campaign* campaign = nullptr;
  sct_status status = sct_campaign_open(campaign_path.c_str(), &campaign);
  if (status != SCT_OK) {
    std::fprintf(stderr, "evaluate: %s\n", sct_last_error());
    return kExitConfig;
  }
  char* verdict = nullptr;
  status = sct_campaign_evaluate(campaign,
                                 procedure.empty() ? nullptr : procedure.c_str(),
                                 trace_dir.c_str(), out_dir.c_str(),
                                 format == "text" ? 1 : 0, &verdict);
  sct_campaign_close(campaign);
  return report_outcome(status, take_string(verdict));
}

int cmd_report(const std::string& report_path, const std::string& format) {
  if (format == "machine") {
    char* verdict = nullptr;
    sct_status status = sct_report_verdict(report_path.c_str(), &verdict);
    if (status != SCT_OK) {
      std::fprintf(stderr, "report: %s\n", sct_last_error());
      return kExitConfig;
    }
    std::printf("%s\n", take_string(verdict).c_str());
    return kExitPass;
  }
  char* text = nullptr;
  sct_status status = sct_report_render(report_path.c_str(), &text);
  if (status != SCT_OK) {
    std::fprintf(stderr, "report: %s\n", sct_last_error());
    return kExitConfig;
  }
  std::printf("%s", take_string(text).c_str());
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scenario-based test orchestration"};
  app.set_version_flag("--version", std::string(sct_version()));
  app.require_subcommand(1);

  // validate
  std::vector<std::string> validate_paths;
  CLI::App* validate = app.add_subcommand(
      "validate", "validate scenario/spec/bench files");
  validate->add_option("files", validate_paths, "files to validate")
      ->required()
      ->expected(-1);

  // concretize
  std::string logical_path, strategy = "boundary", conc_out, prefix = "concrete";
  int points = 2, count = 1;
  std::uint64_t seed = 0;
  bool include_center = false;
  CLI::App* concretize = app.add_subcommand(
      "concretize", "derive concrete scenarios from a logical scenario");
  concretize->add_option("logical", logical_path, "logical scenario file")
      ->required();
  concretize
      ->add_option("--strategy", strategy,
                   "grid | uniform_random | boundary")
      ->check(CLI::IsMember({"grid", "uniform_random", "boundary"}));
  concretize->add_option("--out", conc_out, "output directory")->required();
  concretize->add_option("--points", points, "grid points per parameter");
  concretize->add_option("--count", count, "number of random samples");
  concretize->add_option("--seed", seed, "random seed");
  concretize->add_flag("--include-center", include_center,
                       "boundary strategy: include the range centers");
  concretize->add_option("--prefix", prefix, "output scenario id prefix");

  // run
  std::string run_campaign, run_procedure, run_out, run_format = "machine";
  double run_dt = 0.0;
  int run_parallelism = 1;
  CLI::App* run = app.add_subcommand("run", "execute a test procedure");
  run->add_option("campaign", run_campaign, "campaign file")->required();
  run->add_option("--procedure", run_procedure, "test procedure id");
  run->add_option("--out", run_out, "output directory")->required();
  run->add_option("--dt", run_dt, "time step override in seconds");
  run->add_option("--parallelism", run_parallelism,
                  "concurrent test cases (outputs unchanged)");
  run->add_option("--format", run_format, "machine | text")
      ->check(CLI::IsMember({"machine", "text"}));

  // evaluate
  std::string eval_campaign, eval_procedure, eval_traces, eval_out,
      eval_format = "machine";
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "re-evaluate recorded traces against the specification");
  evaluate->add_option("campaign", eval_campaign, "campaign file")->required();
  evaluate->add_option("--procedure", eval_procedure, "test procedure id");
  evaluate->add_option("--traces", eval_traces, "directory with trace files")
      ->required();
  evaluate->add_option("--out", eval_out, "output directory")->required();
  evaluate->add_option("--format", eval_format, "machine | text")
      ->check(CLI::IsMember({"machine", "text"}));

  // report
  std::string report_path, report_format = "text";
  CLI::App* report = app.add_subcommand(
      "report", "render a machine report");
  report->add_option("report", report_path, "report file")->required();
  report->add_option("--format", report_format, "machine | text")
      ->check(CLI::IsMember({"machine", "text"}));

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) {
    return cmd_validate(validate_paths);
  }
  if (concretize->parsed()) {
    return cmd_concretize(logical_path, strategy, conc_out, points, count,
                          seed, include_center, prefix);
  }
  if (run->parsed()) {
    return cmd_run(run_campaign, run_procedure, run_out, run_dt,
                   run_parallelism, run_format);
  }
  if (evaluate->parsed()) {
    return cmd_evaluate(eval_campaign, eval_procedure, eval_traces, eval_out,
                        eval_format);
  }
  if (report->parsed()) {
    return cmd_report(report_path, report_format);
  }
  return kExitConfig;
}
