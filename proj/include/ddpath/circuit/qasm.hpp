#pragma once

#include "ddpath/circuit/circuit.hpp"
#include "ddpath/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace ddpath::qc {

namespace qasm {

enum class TokenKind { Identifier, Number, String, Symbol, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::size_t line = 0;
};

class Lexer {
public:
  explicit Lexer(std::string_view source) : src_(source) {}

  Token next() {
    skipSpaceAndComments();
    Token tok;
    tok.line = line_;
    if (pos_ >= src_.size()) {
      return tok;
    }
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const auto start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        ++pos_;
      }
      tok.kind = TokenKind::Identifier;
      tok.text = std::string(src_.substr(start, pos_ - start));
      return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = src_.data() + pos_;
      char* end = nullptr;
      std::strtod(begin, &end);
      if (end == begin) {
        throw ParseError(line_, "malformed number");
      }
      const auto length = static_cast<std::size_t>(end - begin);
      tok.kind = TokenKind::Number;
      tok.text = std::string(src_.substr(pos_, length));
      pos_ += length;
      return tok;
    }
    if (c == '"') {
      const auto close = src_.find('"', pos_ + 1);
      if (close == std::string_view::npos) {
        throw ParseError(line_, "unterminated string");
      }
      tok.kind = TokenKind::String;
      tok.text = std::string(src_.substr(pos_ + 1, close - pos_ - 1));
      pos_ = close + 1;
      return tok;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      pos_ += 2;
      tok.kind = TokenKind::Symbol;
      tok.text = "->";
      return tok;
    }
    if (std::string_view("()[]{},;+-*/^").find(c) != std::string_view::npos) {
      ++pos_;
      tok.kind = TokenKind::Symbol;
      tok.text = std::string(1, c);
      return tok;
    }
    throw ParseError(line_, std::string("unexpected character '") + c + "'");
  }

private:
  void skipSpaceAndComments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') {
          ++pos_;
        }
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

/// Recursive-descent parser for the supported OpenQASM 2.0 subset.
class Parser {
public:
  explicit Parser(std::string_view source) : lexer_(source) { advance(); }

  Circuit parse() {
    expectIdentifier("OPENQASM", "file must start with 'OPENQASM 2.0;'");
    const auto version = expect(TokenKind::Number, "version number");
    if (version.text != "2.0" && version.text != "2") {
      throw ParseError(version.line,
                       "unsupported OpenQASM version " + version.text);
    }
    expectSymbol(";");
    std::optional<Circuit> circuit;
    while (current_.kind != TokenKind::End) {
      statement(circuit);
    }
    if (!circuit) {
      throw ParseError(current_.line, "missing qreg declaration");
    }
    return *std::move(circuit);
  }

private:
  struct BaseOp {
    OpType op;
    std::size_t params;
  };

  static std::optional<BaseOp> lookupBase(std::string_view name) {
    static const std::map<std::string_view, BaseOp> table{
        {"id", {OpType::I, 0}},    {"x", {OpType::X, 0}},
        {"y", {OpType::Y, 0}},     {"z", {OpType::Z, 0}},
        {"h", {OpType::H, 0}},     {"s", {OpType::S, 0}},
        {"sdg", {OpType::Sdg, 0}}, {"t", {OpType::T, 0}},
        {"tdg", {OpType::Tdg, 0}}, {"sx", {OpType::SX, 0}},
        {"sxdg", {OpType::SXdg, 0}}, {"p", {OpType::P, 1}},
        {"u1", {OpType::P, 1}},    {"phase", {OpType::P, 1}},
        {"ry", {OpType::RY, 1}},   {"rz", {OpType::RZ, 1}},
        {"u3", {OpType::U, 3}},    {"u", {OpType::U, 3}},
        {"U", {OpType::U, 3}},     {"u2", {OpType::U, 2}},
        {"swap", {OpType::SWAP, 0}}};
    if (const auto it = table.find(name); it != table.end()) {
      return it->second;
    }
    return std::nullopt;
  }

  void statement(std::optional<Circuit>& circuit) {
    const Token head = current_;
    if (head.kind != TokenKind::Identifier) {
      throw ParseError(head.line, "expected a statement, found '" + head.text +
                                      "'");
    }
    if (head.text == "include") {
      advance();
      const auto file = expect(TokenKind::String, "include file name");
      if (file.text != "qelib1.inc") {
        throw ParseError(file.line, "includes other than qelib1.inc are not "
                                    "supported");
      }
      expectSymbol(";");
      return;
    }
    if (head.text == "qreg") {
      advance();
      if (circuit) {
        throw ParseError(head.line, "only a single qreg is supported");
      }
      register_ = expect(TokenKind::Identifier, "register name").text;
      expectSymbol("[");
      const auto size = integer();
      expectSymbol("]");
      expectSymbol(";");
      circuit.emplace(size);
      return;
    }
    if (head.text == "creg" || head.text == "barrier" ||
        head.text == "measure" || head.text == "reset") {
      skipStatement();
      return;
    }
    if (head.text == "gate" || head.text == "opaque" || head.text == "if") {
      throw ParseError(head.line,
                       "'" + head.text + "' statements are not supported");
    }
    if (!circuit) {
      throw ParseError(head.line, "gate '" + head.text +
                                      "' used before the qreg declaration");
    }
    gateStatement(*circuit);
  }

  void gateStatement(Circuit& circuit) {
    const Token head = current_;
    advance();
    std::string_view name = head.text;
    if (name == "CX") {
      name = "cx";
    }
    std::size_t controls = 0;
    auto base = lookupBase(name);
    while (!base && name.size() > 1 && name.front() == 'c') {
      name.remove_prefix(1);
      ++controls;
      base = lookupBase(name);
    }
    if (!base) {
      throw ParseError(head.line, "unknown gate '" + head.text + "'");
    }
    std::vector<fp> params;
    if (current_.kind == TokenKind::Symbol && current_.text == "(") {
      advance();
      if (!(current_.kind == TokenKind::Symbol && current_.text == ")")) {
        params.push_back(expression());
        while (current_.kind == TokenKind::Symbol && current_.text == ",") {
          advance();
          params.push_back(expression());
        }
      }
      expectSymbol(")");
    }
    if (params.size() != base->params) {
      throw ParseError(head.line, "gate '" + head.text + "' expects " +
                                      std::to_string(base->params) +
                                      " parameter(s), got " +
                                      std::to_string(params.size()));
    }
    std::vector<Qubit> operands{qubitOperand(circuit)};
    while (current_.kind == TokenKind::Symbol && current_.text == ",") {
      advance();
      operands.push_back(qubitOperand(circuit));
    }
    expectSymbol(";");
    const std::size_t targets = targetCount(base->op);
    if (operands.size() != controls + targets) {
      throw ParseError(head.line, "gate '" + head.text + "' expects " +
                                      std::to_string(controls + targets) +
                                      " qubit operand(s), got " +
                                      std::to_string(operands.size()));
    }
    Gate gate;
    gate.op = base->op;
    gate.controls.assign(operands.begin(),
                         operands.begin() + static_cast<long>(controls));
    gate.targets.assign(operands.begin() + static_cast<long>(controls),
                        operands.end());
    if (base->op == OpType::U && base->params == 2) {
      gate.params = {PI / 2, params[0], params[1]};
    } else {
      for (std::size_t i = 0; i < params.size(); ++i) {
        gate.params[i] = params[i];
      }
    }
    try {
      circuit.append(std::move(gate));
    } catch (const std::invalid_argument& e) {
      throw ParseError(head.line, e.what());
    }
  }

  Qubit qubitOperand(const Circuit& circuit) {
    const auto reg = expect(TokenKind::Identifier, "qubit operand");
    if (reg.text != register_) {
      throw ParseError(reg.line, "unknown register '" + reg.text + "'");
    }
    expectSymbol("[");
    const auto index = integer();
    expectSymbol("]");
    if (index >= circuit.qubits()) {
      throw ParseError(reg.line, "qubit index " + std::to_string(index) +
                                     " out of range for register of size " +
                                     std::to_string(circuit.qubits()));
    }
    return index;
  }

  std::size_t integer() {
    const auto tok = expect(TokenKind::Number, "integer");
    if (tok.text.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError(tok.line, "expected an integer, found '" + tok.text +
                                     "'");
    }
    return std::stoul(tok.text);
  }

  // expression := term (('+'|'-') term)*
  fp expression() {
    fp value = term();
    while (current_.kind == TokenKind::Symbol &&
           (current_.text == "+" || current_.text == "-")) {
      const bool plus = current_.text == "+";
      advance();
      const fp rhs = term();
      value = plus ? value + rhs : value - rhs;
    }
    return value;
  }

  // term := factor (('*'|'/') factor)*
  fp term() {
    fp value = factor();
    while (current_.kind == TokenKind::Symbol &&
           (current_.text == "*" || current_.text == "/")) {
      const bool times = current_.text == "*";
      const auto line = current_.line;
      advance();
      const fp rhs = factor();
      if (!times && rhs == 0.) {
        throw ParseError(line, "division by zero");
      }
      value = times ? value * rhs : value / rhs;
    }
    return value;
  }

  // factor := ('-'|'+') factor | number | 'pi' | '(' expression ')'
  fp factor() {
    const Token tok = current_;
    if (tok.kind == TokenKind::Symbol && (tok.text == "-" || tok.text == "+")) {
      advance();
      const fp value = factor();
      return tok.text == "-" ? -value : value;
    }
    if (tok.kind == TokenKind::Number) {
      advance();
      return std::strtod(tok.text.c_str(), nullptr);
    }
    if (tok.kind == TokenKind::Identifier && tok.text == "pi") {
      advance();
      return PI;
    }
    if (tok.kind == TokenKind::Symbol && tok.text == "(") {
      advance();
      const fp value = expression();
      expectSymbol(")");
      return value;
    }
    throw ParseError(tok.line, "malformed angle expression near '" + tok.text +
                                   "'");
  }

  void skipStatement() {
    while (current_.kind != TokenKind::End &&
           !(current_.kind == TokenKind::Symbol && current_.text == ";")) {
      advance();
    }
    expectSymbol(";");
  }

  void advance() { current_ = lexer_.next(); }

  Token expect(TokenKind kind, const char* what) {
    if (current_.kind != kind) {
      throw ParseError(current_.line,
                       std::string("expected ") + what + ", found " +
                           (current_.kind == TokenKind::End
                                ? std::string("end of input")
                                : "'" + current_.text + "'"));
    }
    Token tok = current_;
    advance();
    return tok;
  }

  void expectSymbol(const char* symbol) {
    if (current_.kind != TokenKind::Symbol || current_.text != symbol) {
      throw ParseError(current_.line,
                       std::string("expected '") + symbol + "', found " +
                           (current_.kind == TokenKind::End
                                ? std::string("end of input")
                                : "'" + current_.text + "'"));
    }
    advance();
  }

  void expectIdentifier(const char* word, const char* message) {
    if (current_.kind != TokenKind::Identifier || current_.text != word) {
      throw ParseError(current_.line, message);
    }
    advance();
  }

  Lexer lexer_;
  Token current_;
  std::string register_;
};

} // namespace qasm

/// Parses the OpenQASM 2.0 subset: one qreg, gates from the supported
/// alphabet (a leading 'c' per control, e.g. cx, ccx, cp, cu3), angle
/// expressions over pi with + - * /. creg, measure, barrier and reset are
/// accepted and ignored.
[[nodiscard]] inline Circuit parseQasm(std::string_view text) {
  return qasm::Parser(text).parse();
}

[[nodiscard]] inline Circuit parseQasmFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parseQasm(buffer.str());
}

/// OpenQASM 2.0 text that parses back to a gate-identical circuit.
[[nodiscard]] inline std::string emitQasm(const Circuit& c) {
  std::ostringstream os;
  os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << c.qubits()
     << "];\n";
  char buf[32];
  for (const auto& g : c.gates()) {
    os << g.name();
    const auto count = parameterCount(g.op);
    if (count > 0) {
      os << '(';
      for (std::size_t i = 0; i < count; ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", g.params[i]);
        os << (i > 0 ? "," : "") << buf;
      }
      os << ')';
    }
    bool first = true;
    for (const auto q : g.controls) {
      os << (first ? " " : ", ") << "q[" << q << ']';
      first = false;
    }
    for (const auto q : g.targets) {
      os << (first ? " " : ", ") << "q[" << q << ']';
      first = false;
    }
    os << ";\n";
  }
  return os.str();
}

} // namespace ddpath::qc
