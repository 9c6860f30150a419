/* Copyright 2026 scentest contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* scentest — scenario-based test orchestration for automated-vehicle
 * functions.
 *
 * C API of the shared library. All entry points return an sct_status;
 * sct_last_error() carries the message of the most recent failure on the
 * calling thread. Objects are opaque handles released with their _close
 * function; strings returned through char** are released with
 * sct_string_free().
 */

#ifndef SCENTEST_SCENTEST_H_
#define SCENTEST_SCENTEST_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SCT_API __declspec(dllexport)
#else
#define SCT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sct_status {
  SCT_OK = 0,
  SCT_EVALUATION_FAILED = 1, /* ran fine; verdict is failed */
  SCT_CONFIG_ERROR = 2,      /* bad configuration or cross references */
  SCT_RUNTIME_FAULT = 3,     /* non-finite state; trace flagged invalid */
  SCT_IO_ERROR = 4,
  SCT_PARSE_ERROR = 5,
  SCT_UNSUPPORTED_VERSION = 6,
  SCT_VALIDATION_ERROR = 7, /* invariant violations; report text returned */
  SCT_INVALID_ARGUMENT = 8,
  SCT_MISMATCH = 9 /* trace does not match the test case */
} sct_status;

SCT_API const char* sct_version(void);

/* Message of the most recent failure on this thread; never NULL. */
SCT_API const char* sct_last_error(void);

SCT_API void sct_string_free(char* s);

/* --- validation ---------------------------------------------------------- */

/* Validates one spec file (type is self-described by the file). On
 * SCT_VALIDATION_ERROR, *out_report receives one "path: message" line per
 * violation. SCT_OK leaves *out_report empty. */
SCT_API sct_status sct_validate_file(const char* path, char** out_report);

/* --- concretization ------------------------------------------------------ */

typedef struct sct_concretize_options {
  const char* strategy; /* "grid", "uniform_random", "boundary" */
  int points_per_parameter;
  int count;
  uint64_t seed;
  int include_center;
  const char* id_prefix; /* NULL = "concrete" */
} sct_concretize_options;

/* Writes `{prefix}-{index}.json` scenario files into out_dir; deterministic
 * for a fixed seed. */
SCT_API sct_status sct_concretize(const char* logical_path,
                                  const sct_concretize_options* options,
                                  const char* out_dir, int* out_count);

/* --- campaigns ----------------------------------------------------------- */

typedef struct sct_campaign sct_campaign;

SCT_API sct_status sct_campaign_open(const char* path, sct_campaign** out);
SCT_API void sct_campaign_close(sct_campaign* campaign);

/* Validation report for everything the campaign references. */
SCT_API sct_status sct_campaign_validate(sct_campaign* campaign,
                                         char** out_report);

typedef struct sct_run_options {
  const char* procedure_id; /* NULL = the only procedure */
  const char* out_dir;
  double dt;       /* <= 0 = use the bench configuration's time step */
  int parallelism; /* < 1 = 1 */
  int text_report; /* also write a plain-text rendering */
} sct_run_options;

/* Executes the procedure; writes traces, metric exports, and the report.
 * SCT_OK = overall verdict passed; SCT_EVALUATION_FAILED = failed;
 * SCT_RUNTIME_FAULT = an execution produced an invalid trace. *out_verdict
 * (optional) receives the overall verdict string. */
SCT_API sct_status sct_campaign_run(sct_campaign* campaign,
                                    const sct_run_options* options,
                                    char** out_verdict);

/* Post-hoc evaluation of recorded traces; the report is byte-identical to
 * the one produced by sct_campaign_run for the same traces. */
SCT_API sct_status sct_campaign_evaluate(sct_campaign* campaign,
                                         const char* procedure_id,
                                         const char* trace_dir,
                                         const char* out_dir, int text_report,
                                         char** out_verdict);

/* --- pluggable test objects ---------------------------------------------- */

typedef struct sct_signal {
  const char* name;
  double value;
} sct_signal;

/* External test object. step() receives the input signals derived from the
 * current scene and must fill every output of the object's port; flags
 * travel as 0/1. Return nonzero to abort the run. */
typedef struct sct_test_object {
  void* user;
  int (*reset)(void* user);
  int (*step)(void* user, const sct_signal* inputs, size_t n_inputs,
              sct_signal* outputs, size_t n_outputs);
} sct_test_object;

/* Registers an object under a name referenced by the bench configuration's
 * test_object_adapter "object" parameter. The vtable must stay alive while
 * the campaign handle is open. The port is the built-in ACC port. */
SCT_API sct_status sct_campaign_register_test_object(
    sct_campaign* campaign, const char* name, const sct_test_object* object);

/* --- traces -------------------------------------------------------------- */

typedef struct sct_trace sct_trace;

SCT_API sct_status sct_trace_open(const char* path, sct_trace** out);
SCT_API void sct_trace_close(sct_trace* trace);
SCT_API int64_t sct_trace_sample_count(const sct_trace* trace);
SCT_API int sct_trace_valid(const sct_trace* trace);

/* Borrow a column; the pointer stays valid until the trace is closed.
 * Columns: time, v_ego, a_ego, v_set, a_target, gap, v_lead. */
SCT_API sct_status sct_trace_column(const sct_trace* trace, const char* name,
                                    const double** out_data, int64_t* out_len);

/* --- reports ------------------------------------------------------------- */

/* Renders a machine report file as human-readable text. */
SCT_API sct_status sct_report_render(const char* report_path, char** out_text);

/* Overall verdict string of a report file. */
SCT_API sct_status sct_report_verdict(const char* report_path,
                                      char** out_verdict);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SCENTEST_SCENTEST_H_ */
