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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace scentest::condition {

// Application-period condition grammar:
//
//   expr     := or_expr
//   or_expr  := and_expr ('||' and_expr)*
//   and_expr := primary ('&&' primary)*
//   primary  := 'flag' '(' NAME ')'
//             | 'once' '(' expr ')'
//             | '(' expr ')'
//             | NAME OP NUMBER ['~' NUMBER]
//   OP       := '<' | '<=' | '==' | '>=' | '>'
//
// '&&' binds tighter than '||'. `once(e)` latches: it stays fulfilled after
// its first fulfillment. Equality on a sampled signal is satisfied within
// the given tolerance or when the signal crosses the value between two
// consecutive samples.

enum class CompareOp { lt, le, eq, ge, gt };

const char* to_string(CompareOp op);

struct Expr {
  enum class Kind { flag, compare, conj, disj, once };

  struct Node {
    Kind kind = Kind::flag;
    std::string name;                  // flag / compare signal
    CompareOp op = CompareOp::eq;      // compare
    double value = 0.0;                // compare
    std::optional<double> tolerance;   // compare, eq only
    std::vector<std::uint32_t> children;  // conj/disj >= 2, once exactly 1
  };

  std::vector<Node> nodes;
  std::uint32_t root = 0;

  bool structurally_equal(const Expr& other) const;
};

struct SyntaxError {
  std::size_t position = 0;  // byte offset into the input
  std::string message;
  std::vector<std::string> expected;

  std::string to_string() const;
};

using ParseResult = std::variant<Expr, SyntaxError>;

/// Total on arbitrary input: returns an Expr or a SyntaxError, never throws.
ParseResult parse(std::string_view text);

/// serialize(e) parses back to a structurally equal expression.
std::string serialize(const Expr& e);

std::vector<std::string> referenced_signals(const Expr& e);
std::vector<std::string> referenced_flags(const Expr& e);
bool has_bare_equality(const Expr& e);  // `==` without an explicit tolerance

/// Per-sample view of a trace used by Runtime.
struct SampleView {
  // nullopt when the signal has no value at this sample.
  std::function<std::optional<double>(std::string_view)> signal;
  std::function<bool(std::string_view)> flag;
};

/// Streaming evaluator. Feed samples in time order; once-latches and
/// crossing detection carry state between samples.
class Runtime {
 public:
  explicit Runtime(const Expr& e, double default_equality_tolerance = 0.1);

  bool step(const SampleView& sample);
  void reset();

 private:
  bool eval(std::uint32_t index, const SampleView& sample);

  const Expr* expr_;
  double default_tolerance_;
  std::vector<std::uint8_t> latched_;
  std::vector<double> prev_value_;
  std::vector<std::uint8_t> has_prev_;
};

// AST constructors used by builders and tests.
std::uint32_t add_flag(Expr& e, std::string name);
std::uint32_t add_compare(Expr& e, std::string signal, CompareOp op,
                          double value, std::optional<double> tolerance = {});
std::uint32_t add_conj(Expr& e, std::vector<std::uint32_t> children);
std::uint32_t add_disj(Expr& e, std::vector<std::uint32_t> children);
std::uint32_t add_once(Expr& e, std::uint32_t child);

}  // namespace scentest::condition
