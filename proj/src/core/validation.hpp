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

#include <string>
#include <vector>

namespace scentest {

/// One violated invariant, with a path pointing at the offending field
/// (e.g. "parameters[2].min").
struct Violation {
  std::string path;
  std::string message;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  void add(std::string path, std::string message) {
    violations.push_back({std::move(path), std::move(message)});
  }

  // Folds another report in, prefixing its paths.
  void merge(const std::string& prefix, const ValidationReport& other) {
    for (const Violation& v : other.violations) {
      std::string path = prefix;
      if (!v.path.empty()) {
        path += v.path.front() == '[' ? "" : ".";
        path += v.path;
      }
      violations.push_back({std::move(path), v.message});
    }
  }

  std::string to_string() const {
    std::string out;
    for (const Violation& v : violations) {
      out += v.path;
      out += ": ";
      out += v.message;
      out += '\n';
    }
    return out;
  }
};

}  // namespace scentest
