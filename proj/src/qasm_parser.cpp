// Copyright 2026 The mpsim Authors
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
//
// Recursive-descent parser for the supported OpenQASM 2.0 subset: header,
// include "qelib1.inc", one qreg, cregs, the builtin gate set, measure,
// and barrier. Parameter expressions understand literals, pi, + - * /,
// unary minus, and parentheses.

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <string>

#include "mpsim/circuit.hpp"
#include "mpsim/errors.hpp"

namespace mpsim {

namespace {

enum class TokKind { Ident, Number, Symbol, String, End };

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  double value = 0.0;
  bool is_integer = false;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token next() {
    Token t = current_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const Token& at, const std::string& message) const {
    throw ParseError(at.line, at.column, message);
  }

 private:
  void advance() {
    skip_space_and_comments();
    current_ = Token{};
    current_.line = line_;
    current_.column = column_;
    if (pos_ >= text_.size()) {
      current_.kind = TokKind::End;
      current_.text = "<end of input>";
      return;
    }
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      lex_ident();
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && pos_ + 1 < text_.size() &&
                std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      lex_number();
    } else if (c == '"') {
      lex_string();
    } else {
      lex_symbol();
    }
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        column_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++column_;
        ++pos_;
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') {
          ++pos_;
        }
      } else {
        break;
      }
    }
  }

  void take() {
    ++pos_;
    ++column_;
  }

  void lex_ident() {
    current_.kind = TokKind::Ident;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        current_.text.push_back(c);
        take();
      } else {
        break;
      }
    }
  }

  void lex_number() {
    current_.kind = TokKind::Number;
    bool has_dot = false;
    bool has_exp = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        current_.text.push_back(c);
        take();
      } else if (c == '.' && !has_dot && !has_exp) {
        has_dot = true;
        current_.text.push_back(c);
        take();
      } else if ((c == 'e' || c == 'E') && !has_exp) {
        has_exp = true;
        current_.text.push_back(c);
        take();
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
          current_.text.push_back(text_[pos_]);
          take();
        }
      } else {
        break;
      }
    }
    current_.is_integer = !has_dot && !has_exp;
    current_.value = std::strtod(current_.text.c_str(), nullptr);
  }

  void lex_string() {
    current_.kind = TokKind::String;
    take();  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      current_.text.push_back(text_[pos_]);
      take();
    }
    if (pos_ >= text_.size()) {
      throw ParseError(current_.line, current_.column, "unterminated string");
    }
    take();  // closing quote
  }

  void lex_symbol() {
    current_.kind = TokKind::Symbol;
    const char c = text_[pos_];
    current_.text.push_back(c);
    take();
    if (c == '-' && pos_ < text_.size() && text_[pos_] == '>') {
      current_.text.push_back('>');
      take();
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  Token current_;
};

struct Register {
  int size = 0;
  int offset = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  Circuit parse() {
    parse_header();
    while (lex_.peek().kind != TokKind::End) {
      parse_statement();
    }
    if (qreg_name_.empty()) {
      Token t = lex_.peek();
      throw ParseError(t.line, t.column, "no qreg declared");
    }
    circuit_.has_measure_all =
        measured_all_register_ ||
        (static_cast<int>(measured_qubits_.size()) == circuit_.n_qubits &&
         circuit_.n_qubits > 0);
    return std::move(circuit_);
  }

 private:
  Token expect_symbol(const std::string& sym) {
    Token t = lex_.next();
    if (t.kind != TokKind::Symbol || t.text != sym) {
      lex_.fail(t, "expected '" + sym + "', found '" + t.text + "'");
    }
    return t;
  }

  Token expect_ident() {
    Token t = lex_.next();
    if (t.kind != TokKind::Ident) {
      lex_.fail(t, "expected identifier, found '" + t.text + "'");
    }
    return t;
  }

  int expect_nonneg_integer() {
    Token t = lex_.next();
    if (t.kind != TokKind::Number || !t.is_integer) {
      lex_.fail(t, "expected integer, found '" + t.text + "'");
    }
    return static_cast<int>(t.value);
  }

  void parse_header() {
    Token t = lex_.next();
    if (t.kind != TokKind::Ident || t.text != "OPENQASM") {
      lex_.fail(t, "expected 'OPENQASM' header");
    }
    Token version = lex_.next();
    if (version.kind != TokKind::Number || version.text != "2.0") {
      lex_.fail(version, "unsupported OPENQASM version '" + version.text +
                             "' (only 2.0 is supported)");
    }
    expect_symbol(";");
  }

  void parse_statement() {
    Token t = lex_.peek();
    if (t.kind != TokKind::Ident) {
      lex_.fail(t, "expected statement, found '" + t.text + "'");
    }
    if (t.text == "include") {
      parse_include();
    } else if (t.text == "qreg") {
      parse_qreg();
    } else if (t.text == "creg") {
      parse_creg();
    } else if (t.text == "measure") {
      parse_measure();
    } else if (t.text == "barrier") {
      parse_barrier();
    } else if (t.text == "gate" || t.text == "opaque" || t.text == "if" ||
               t.text == "reset") {
      lex_.fail(t, "unsupported statement '" + t.text + "'");
    } else {
      parse_gate_call();
    }
  }

  void parse_include() {
    lex_.next();
    Token file = lex_.next();
    if (file.kind != TokKind::String) {
      lex_.fail(file, "expected file name string after include");
    }
    if (file.text != "qelib1.inc") {
      lex_.fail(file, "unsupported include '" + file.text +
                          "' (only qelib1.inc)");
    }
    expect_symbol(";");
  }

  void parse_qreg() {
    Token kw = lex_.next();
    Token name = expect_ident();
    expect_symbol("[");
    int size = expect_nonneg_integer();
    expect_symbol("]");
    expect_symbol(";");
    if (!qreg_name_.empty()) {
      lex_.fail(kw, "multiple qregs are not supported");
    }
    if (size <= 0) {
      lex_.fail(name, "qreg size must be positive");
    }
    qreg_name_ = name.text;
    circuit_.n_qubits = size;
  }

  void parse_creg() {
    lex_.next();
    Token name = expect_ident();
    expect_symbol("[");
    int size = expect_nonneg_integer();
    expect_symbol("]");
    expect_symbol(";");
    if (size <= 0) {
      lex_.fail(name, "creg size must be positive");
    }
    if (cregs_.count(name.text) != 0) {
      lex_.fail(name, "creg '" + name.text + "' redeclared");
    }
    cregs_[name.text] = Register{size, circuit_.n_clbits};
    circuit_.n_clbits += size;
  }

  // Returns the qubit index, or -1 for a bare register reference.
  int parse_qubit_arg(bool allow_register) {
    Token name = expect_ident();
    if (name.text != qreg_name_) {
      lex_.fail(name, "unknown register '" + name.text + "'");
    }
    if (lex_.peek().kind == TokKind::Symbol && lex_.peek().text == "[") {
      lex_.next();
      Token idx = lex_.peek();
      int q = expect_nonneg_integer();
      expect_symbol("]");
      if (q >= circuit_.n_qubits) {
        lex_.fail(idx, "qubit index " + std::to_string(q) +
                           " out of range for qreg of size " +
                           std::to_string(circuit_.n_qubits));
      }
      return q;
    }
    if (!allow_register) {
      Token t = lex_.peek();
      lex_.fail(t, "expected '[' after register name");
    }
    return -1;
  }

  void parse_measure() {
    lex_.next();
    int q = parse_qubit_arg(/*allow_register=*/true);
    expect_symbol("->");
    Token cname = expect_ident();
    auto creg = cregs_.find(cname.text);
    if (creg == cregs_.end()) {
      lex_.fail(cname, "unknown creg '" + cname.text + "'");
    }
    if (q >= 0) {
      expect_symbol("[");
      Token idx = lex_.peek();
      int bit = expect_nonneg_integer();
      expect_symbol("]");
      if (bit >= creg->second.size) {
        lex_.fail(idx, "bit index " + std::to_string(bit) +
                           " out of range for creg of size " +
                           std::to_string(creg->second.size));
      }
      measured_qubits_.insert(q);
    } else {
      if (lex_.peek().kind == TokKind::Symbol && lex_.peek().text == "[") {
        lex_.fail(lex_.peek(), "register-to-bit measure is not supported");
      }
      measured_all_register_ = true;
    }
    expect_symbol(";");
  }

  void parse_barrier() {
    lex_.next();
    // Arguments are validated and otherwise ignored.
    parse_qubit_arg(/*allow_register=*/true);
    while (lex_.peek().kind == TokKind::Symbol && lex_.peek().text == ",") {
      lex_.next();
      parse_qubit_arg(/*allow_register=*/true);
    }
    expect_symbol(";");
  }

  void parse_gate_call() {
    Token name = lex_.next();
    GateKind kind;
    if (!gate_kind_from_name(name.text, kind)) {
      lex_.fail(name, "unsupported gate '" + name.text + "'");
    }

    PrimOp op;
    op.kind = kind;
    const int want_params = param_count(kind);
    if (lex_.peek().kind == TokKind::Symbol && lex_.peek().text == "(") {
      Token open = lex_.next();
      if (want_params == 0) {
        lex_.fail(open, "gate '" + name.text + "' takes no parameters");
      }
      op.params.push_back(parse_expression());
      while (lex_.peek().kind == TokKind::Symbol && lex_.peek().text == ",") {
        lex_.next();
        op.params.push_back(parse_expression());
      }
      expect_symbol(")");
    }
    if (static_cast<int>(op.params.size()) != want_params) {
      lex_.fail(name, "gate '" + name.text + "' expects " +
                          std::to_string(want_params) + " parameter(s), got " +
                          std::to_string(op.params.size()));
    }

    if (qreg_name_.empty()) {
      lex_.fail(name, "gate before qreg declaration");
    }
    op.q0 = parse_qubit_arg(/*allow_register=*/false);
    if (is_two_qubit(kind)) {
      Token comma = expect_symbol(",");
      op.q1 = parse_qubit_arg(/*allow_register=*/false);
      if (op.q0 == op.q1) {
        lex_.fail(comma, "two-qubit gate needs distinct qubits, got q[" +
                             std::to_string(op.q0) + "] twice");
      }
    }
    expect_symbol(";");
    circuit_.ops.push_back(std::move(op));
  }

  double parse_expression() {
    double value = parse_term();
    while (lex_.peek().kind == TokKind::Symbol &&
           (lex_.peek().text == "+" || lex_.peek().text == "-")) {
      Token opt = lex_.next();
      double rhs = parse_term();
      value = opt.text == "+" ? value + rhs : value - rhs;
    }
    return value;
  }

  double parse_term() {
    double value = parse_factor();
    while (lex_.peek().kind == TokKind::Symbol &&
           (lex_.peek().text == "*" || lex_.peek().text == "/")) {
      Token opt = lex_.next();
      double rhs = parse_factor();
      if (opt.text == "/") {
        if (rhs == 0.0) {
          lex_.fail(opt, "division by zero in parameter expression");
        }
        value /= rhs;
      } else {
        value *= rhs;
      }
    }
    return value;
  }

  double parse_factor() {
    Token t = lex_.next();
    if (t.kind == TokKind::Symbol && t.text == "-") {
      return -parse_factor();
    }
    if (t.kind == TokKind::Symbol && t.text == "(") {
      double value = parse_expression();
      expect_symbol(")");
      return value;
    }
    if (t.kind == TokKind::Number) {
      return t.value;
    }
    if (t.kind == TokKind::Ident && t.text == "pi") {
      return M_PI;
    }
    lex_.fail(t, "expected number, 'pi', or '(' in parameter expression, "
                 "found '" + t.text + "'");
  }

  Lexer lex_;
  Circuit circuit_;
  std::string qreg_name_;
  std::map<std::string, Register> cregs_;
  std::set<int> measured_qubits_;
  bool measured_all_register_ = false;
};

}  // namespace

Circuit parse_qasm(std::string_view text) { return Parser(text).parse(); }

}  // namespace mpsim
