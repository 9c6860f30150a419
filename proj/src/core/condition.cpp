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

#include "core/condition.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "core/text.hpp"

namespace scentest::condition {

namespace {

constexpr std::size_t kMaxNesting = 256;

bool is_name_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_name_char(char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '.';
}
bool is_number_start(char c) { return (c >= '0' && c <= '9') || c == '.' || c == '-'; }

struct Token {
  enum class Type {
    name, number, lparen, rparen, and_op, or_op, tilde,
    lt, le, eq, ge, gt, end, bad,
  };
  Type type = Type::end;
  std::size_t pos = 0;
  std::string_view text;
  double number = 0.0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r')) {
      ++pos_;
    }
    Token t;
    t.pos = pos_;
    if (pos_ >= text_.size()) {
      t.type = Token::Type::end;
      return t;
    }
    const char c = text_[pos_];
    if (is_name_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && is_name_char(text_[pos_])) {
        ++pos_;
      }
      t.type = Token::Type::name;
      t.text = text_.substr(start, pos_ - start);
      return t;
    }
    if (is_number_start(c)) {
      std::size_t start = pos_;
      ++pos_;
      while (pos_ < text_.size() &&
             (is_number_char(text_[pos_]) ||
              ((text_[pos_] == '+' || text_[pos_] == '-') &&
               (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
        ++pos_;
      }
      std::string_view body = text_.substr(start, pos_ - start);
      if (auto v = parse_double(body); v && std::isfinite(*v)) {
        t.type = Token::Type::number;
        t.number = *v;
        t.text = body;
      } else {
        t.type = Token::Type::bad;
        t.text = body;
      }
      return t;
    }
    switch (c) {
      case '(': ++pos_; t.type = Token::Type::lparen; return t;
      case ')': ++pos_; t.type = Token::Type::rparen; return t;
      case '~': ++pos_; t.type = Token::Type::tilde; return t;
      case '&':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '&') {
          pos_ += 2;
          t.type = Token::Type::and_op;
          return t;
        }
        break;
      case '|':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '|') {
          pos_ += 2;
          t.type = Token::Type::or_op;
          return t;
        }
        break;
      case '<':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          pos_ += 2;
          t.type = Token::Type::le;
        } else {
          ++pos_;
          t.type = Token::Type::lt;
        }
        return t;
      case '>':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          pos_ += 2;
          t.type = Token::Type::ge;
        } else {
          ++pos_;
          t.type = Token::Type::gt;
        }
        return t;
      case '=':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          pos_ += 2;
          t.type = Token::Type::eq;
          return t;
        }
        break;
      default: break;
    }
    t.type = Token::Type::bad;
    t.text = text_.substr(pos_, 1);
    ++pos_;
    return t;
  }

 private:
  static bool is_number_char(char c) {
    return (c >= '0' && c <= '9') || c == '.' || c == 'e' || c == 'E';
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { advance(); }

  ParseResult run() {
    Expr e;
    auto root = parse_or(e, 0);
    if (!root) {
      return error_;
    }
    if (cur_.type != Token::Type::end) {
      return fail({"'&&'", "'||'", "end of input"});
    }
    e.root = *root;
    return e;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  SyntaxError fail(std::vector<std::string> expected) {
    SyntaxError err;
    err.position = cur_.pos;
    err.expected = std::move(expected);
    if (cur_.type == Token::Type::end) {
      err.message = "unexpected end of input";
    } else if (cur_.type == Token::Type::bad) {
      err.message = "unrecognized token '" + std::string(cur_.text) + "'";
    } else {
      err.message = "unexpected token";
    }
    error_ = err;
    return err;
  }

  std::optional<std::uint32_t> parse_or(Expr& e, std::size_t depth) {
    auto first = parse_and(e, depth);
    if (!first) {
      return std::nullopt;
    }
    std::vector<std::uint32_t> children{*first};
    while (cur_.type == Token::Type::or_op) {
      advance();
      auto next = parse_and(e, depth);
      if (!next) {
        return std::nullopt;
      }
      children.push_back(*next);
    }
    if (children.size() == 1) {
      return children[0];
    }
    return add_disj(e, std::move(children));
  }

  std::optional<std::uint32_t> parse_and(Expr& e, std::size_t depth) {
    auto first = parse_primary(e, depth);
    if (!first) {
      return std::nullopt;
    }
    std::vector<std::uint32_t> children{*first};
    while (cur_.type == Token::Type::and_op) {
      advance();
      auto next = parse_primary(e, depth);
      if (!next) {
        return std::nullopt;
      }
      children.push_back(*next);
    }
    if (children.size() == 1) {
      return children[0];
    }
    return add_conj(e, std::move(children));
  }

  std::optional<std::uint32_t> parse_primary(Expr& e, std::size_t depth) {
    if (depth > kMaxNesting) {
      fail({"shallower nesting"});
      error_.message = "nesting too deep";
      return std::nullopt;
    }
    if (cur_.type == Token::Type::lparen) {
      advance();
      auto inner = parse_or(e, depth + 1);
      if (!inner) {
        return std::nullopt;
      }
      if (cur_.type != Token::Type::rparen) {
        fail({"')'"});
        return std::nullopt;
      }
      advance();
      return inner;
    }
    if (cur_.type == Token::Type::name) {
      std::string name(cur_.text);
      if (name == "flag") {
        advance();
        if (cur_.type != Token::Type::lparen) {
          fail({"'('"});
          return std::nullopt;
        }
        advance();
        if (cur_.type != Token::Type::name) {
          fail({"flag name"});
          return std::nullopt;
        }
        std::string flag_name(cur_.text);
        advance();
        if (cur_.type != Token::Type::rparen) {
          fail({"')'"});
          return std::nullopt;
        }
        advance();
        return add_flag(e, std::move(flag_name));
      }
      if (name == "once") {
        advance();
        if (cur_.type != Token::Type::lparen) {
          fail({"'('"});
          return std::nullopt;
        }
        advance();
        auto inner = parse_or(e, depth + 1);
        if (!inner) {
          return std::nullopt;
        }
        if (cur_.type != Token::Type::rparen) {
          fail({"')'"});
          return std::nullopt;
        }
        advance();
        return add_once(e, *inner);
      }
      // comparison predicate
      advance();
      CompareOp op;
      switch (cur_.type) {
        case Token::Type::lt: op = CompareOp::lt; break;
        case Token::Type::le: op = CompareOp::le; break;
        case Token::Type::eq: op = CompareOp::eq; break;
        case Token::Type::ge: op = CompareOp::ge; break;
        case Token::Type::gt: op = CompareOp::gt; break;
        default:
          fail({"'<'", "'<='", "'=='", "'>='", "'>'"});
          return std::nullopt;
      }
      advance();
      if (cur_.type != Token::Type::number) {
        fail({"number"});
        return std::nullopt;
      }
      double value = cur_.number;
      advance();
      std::optional<double> tolerance;
      if (cur_.type == Token::Type::tilde) {
        advance();
        if (cur_.type != Token::Type::number) {
          fail({"tolerance number"});
          return std::nullopt;
        }
        if (cur_.number < 0.0) {
          fail({"non-negative tolerance"});
          error_.message = "tolerance must be non-negative";
          return std::nullopt;
        }
        tolerance = cur_.number;
        advance();
      }
      return add_compare(e, std::move(name), op, value, tolerance);
    }
    fail({"'flag(...)'", "'once(...)'", "'('", "signal name"});
    return std::nullopt;
  }

  Lexer lexer_;
  Token cur_;
  SyntaxError error_;
};

bool nodes_equal(const Expr& a, std::uint32_t ia, const Expr& b,
                 std::uint32_t ib) {
  const Expr::Node& na = a.nodes[ia];
  const Expr::Node& nb = b.nodes[ib];
  if (na.kind != nb.kind || na.name != nb.name) {
    return false;
  }
  if (na.kind == Expr::Kind::compare &&
      (na.op != nb.op || na.value != nb.value || na.tolerance != nb.tolerance)) {
    return false;
  }
  if (na.children.size() != nb.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < na.children.size(); ++i) {
    if (!nodes_equal(a, na.children[i], b, nb.children[i])) {
      return false;
    }
  }
  return true;
}

void serialize_node(const Expr& e, std::uint32_t index, std::string& out) {
  const Expr::Node& n = e.nodes[index];
  switch (n.kind) {
    case Expr::Kind::flag:
      out += "flag(";
      out += n.name;
      out += ')';
      break;
    case Expr::Kind::compare:
      out += n.name;
      out += ' ';
      out += to_string(n.op);
      out += ' ';
      out += format_double(n.value);
      if (n.tolerance) {
        out += " ~ ";
        out += format_double(*n.tolerance);
      }
      break;
    case Expr::Kind::once: {
      out += "once(";
      serialize_node(e, n.children[0], out);
      out += ')';
      break;
    }
    case Expr::Kind::conj:
    case Expr::Kind::disj: {
      const char* sep = n.kind == Expr::Kind::conj ? " && " : " || ";
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i > 0) {
          out += sep;
        }
        const Expr::Node& child = e.nodes[n.children[i]];
        const bool parens = child.kind == Expr::Kind::conj ||
                            child.kind == Expr::Kind::disj;
        if (parens) {
          out += '(';
        }
        serialize_node(e, n.children[i], out);
        if (parens) {
          out += ')';
        }
      }
      break;
    }
  }
}

void collect(const Expr& e, Expr::Kind kind, std::vector<std::string>& out) {
  std::set<std::string> seen;
  for (const Expr::Node& n : e.nodes) {
    if (n.kind == kind && seen.insert(n.name).second) {
      out.push_back(n.name);
    }
  }
}

}  // namespace

const char* to_string(CompareOp op) {
  switch (op) {
    case CompareOp::lt: return "<";
    case CompareOp::le: return "<=";
    case CompareOp::eq: return "==";
    case CompareOp::ge: return ">=";
    case CompareOp::gt: return ">";
  }
  return "?";
}

bool Expr::structurally_equal(const Expr& other) const {
  if (nodes.empty() || other.nodes.empty()) {
    return nodes.empty() == other.nodes.empty();
  }
  return nodes_equal(*this, root, other, other.root);
}

std::string SyntaxError::to_string() const {
  std::string out = "syntax error at offset " + std::to_string(position) +
                    ": " + message;
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) {
        out += i + 1 == expected.size() ? " or " : ", ";
      }
      out += expected[i];
    }
    out += ')';
  }
  return out;
}

ParseResult parse(std::string_view text) {
  return Parser(text).run();
}

std::string serialize(const Expr& e) {
  std::string out;
  if (!e.nodes.empty()) {
    serialize_node(e, e.root, out);
  }
  return out;
}

std::vector<std::string> referenced_signals(const Expr& e) {
  std::vector<std::string> out;
  collect(e, Expr::Kind::compare, out);
  return out;
}

std::vector<std::string> referenced_flags(const Expr& e) {
  std::vector<std::string> out;
  collect(e, Expr::Kind::flag, out);
  return out;
}

bool has_bare_equality(const Expr& e) {
  return std::any_of(e.nodes.begin(), e.nodes.end(), [](const Expr::Node& n) {
    return n.kind == Expr::Kind::compare && n.op == CompareOp::eq &&
           !n.tolerance;
  });
}

Runtime::Runtime(const Expr& e, double default_equality_tolerance)
    : expr_(&e),
      default_tolerance_(default_equality_tolerance),
      latched_(e.nodes.size(), 0),
      prev_value_(e.nodes.size(), 0.0),
      has_prev_(e.nodes.size(), 0) {}

void Runtime::reset() {
  std::fill(latched_.begin(), latched_.end(), 0);
  std::fill(has_prev_.begin(), has_prev_.end(), 0);
}

bool Runtime::step(const SampleView& sample) {
  if (expr_->nodes.empty()) {
    return false;
  }
  return eval(expr_->root, sample);
}

bool Runtime::eval(std::uint32_t index, const SampleView& sample) {
  const Expr::Node& n = expr_->nodes[index];
  switch (n.kind) {
    case Expr::Kind::flag:
      return sample.flag(n.name);
    case Expr::Kind::compare: {
      std::optional<double> v = sample.signal(n.name);
      if (!v) {
        has_prev_[index] = 0;  // a gap breaks crossing detection
        return false;
      }
      bool result = false;
      const double x = *v;
      switch (n.op) {
        case CompareOp::lt: result = x < n.value; break;
        case CompareOp::le: result = x <= n.value; break;
        case CompareOp::gt: result = x > n.value; break;
        case CompareOp::ge: result = x >= n.value; break;
        case CompareOp::eq: {
          const double tol = n.tolerance ? *n.tolerance : default_tolerance_;
          result = std::fabs(x - n.value) <= tol;
          if (!result && has_prev_[index]) {
            // Sign change between consecutive samples: the signal crossed
            // the value even though no sample landed inside the tolerance.
            const double before = prev_value_[index] - n.value;
            const double now = x - n.value;
            result = (before < 0.0 && now > 0.0) || (before > 0.0 && now < 0.0);
          }
          break;
        }
      }
      prev_value_[index] = x;
      has_prev_[index] = 1;
      return result;
    }
    case Expr::Kind::conj: {
      bool all = true;
      for (std::uint32_t c : n.children) {
        all = eval(c, sample) && all;  // always evaluate: children keep state
      }
      return all;
    }
    case Expr::Kind::disj: {
      bool any = false;
      for (std::uint32_t c : n.children) {
        any = eval(c, sample) || any;
      }
      return any;
    }
    case Expr::Kind::once: {
      if (!latched_[index]) {
        latched_[index] = eval(n.children[0], sample) ? 1 : 0;
      }
      return latched_[index] != 0;
    }
  }
  return false;
}

std::uint32_t add_flag(Expr& e, std::string name) {
  Expr::Node n;
  n.kind = Expr::Kind::flag;
  n.name = std::move(name);
  e.nodes.push_back(std::move(n));
  return static_cast<std::uint32_t>(e.nodes.size() - 1);
}

std::uint32_t add_compare(Expr& e, std::string signal, CompareOp op,
                          double value, std::optional<double> tolerance) {
  Expr::Node n;
  n.kind = Expr::Kind::compare;
  n.name = std::move(signal);
  n.op = op;
  n.value = value;
  n.tolerance = tolerance;
  e.nodes.push_back(std::move(n));
  return static_cast<std::uint32_t>(e.nodes.size() - 1);
}

std::uint32_t add_conj(Expr& e, std::vector<std::uint32_t> children) {
  Expr::Node n;
  n.kind = Expr::Kind::conj;
  n.children = std::move(children);
  e.nodes.push_back(std::move(n));
  return static_cast<std::uint32_t>(e.nodes.size() - 1);
}

std::uint32_t add_disj(Expr& e, std::vector<std::uint32_t> children) {
  Expr::Node n;
  n.kind = Expr::Kind::disj;
  n.children = std::move(children);
  e.nodes.push_back(std::move(n));
  return static_cast<std::uint32_t>(e.nodes.size() - 1);
}

std::uint32_t add_once(Expr& e, std::uint32_t child) {
  Expr::Node n;
  n.kind = Expr::Kind::once;
  n.children = {child};
  e.nodes.push_back(std::move(n));
  return static_cast<std::uint32_t>(e.nodes.size() - 1);
}

}  // namespace scentest::condition
