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

#include <stdexcept>
#include <string>

namespace scentest {

enum class ErrorCode {
  io,
  parse,
  unsupported_version,
  validation,
  config,
  unit,
  missing_parameter,
  invalid_logical,
  empty_criteria,
  unknown_signal,
  missing_signal,
  port_mismatch,
  numerical_fault,
  trace_mismatch,
  incomplete_input,
};

/// Exception carried across module boundaries; the C API maps codes to
/// status values, the CLI maps them to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace scentest
