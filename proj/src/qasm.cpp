#include "qdd/circuit.hpp"
#include "qdd/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace qdd {

namespace {

enum class TokKind { Identifier, Number, String, Symbol, End };

struct Token {
  TokKind kind;
  std::string text;
  fp number = 0.0;
  int line = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) {}

  Token next() {
    skipSpaceAndComments();
    Token t;
    t.line = line_;
    if (pos_ >= src_.size()) {
      t.kind = TokKind::End;
      return t;
    }
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = TokKind::Identifier;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        t.text += src_[pos_++];
      }
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      t.kind = TokKind::Number;
      const auto start = pos_;
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E' ||
              ((src_[pos_] == '+' || src_[pos_] == '-') && pos_ > start &&
               (src_[pos_ - 1] == 'e' || src_[pos_ - 1] == 'E')))) {
        ++pos_;
      }
      t.text = src_.substr(start, pos_ - start);
      try {
        t.number = std::stod(t.text);
      } catch (const std::exception&) {
        throw ParseError(t.line, "malformed number '" + t.text + "'");
      }
      return t;
    }
    if (c == '"') {
      t.kind = TokKind::String;
      ++pos_;
      while (pos_ < src_.size() && src_[pos_] != '"') {
        t.text += src_[pos_++];
      }
      if (pos_ >= src_.size()) {
        throw ParseError(t.line, "unterminated string literal");
      }
      ++pos_;
      return t;
    }
    t.kind = TokKind::Symbol;
    t.text = std::string(1, c);
    ++pos_;
    return t;
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
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') {
          ++pos_;
        }
      } else {
        break;
      }
    }
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

struct GateSpec {
  GateKind kind;
  bool parameterized;
  int numArgs; // register references
};

std::optional<GateSpec> lookupGate(const std::string& name) {
  if (name == "x") return GateSpec{GateKind::X, false, 1};
  if (name == "y") return GateSpec{GateKind::Y, false, 1};
  if (name == "z") return GateSpec{GateKind::Z, false, 1};
  if (name == "h") return GateSpec{GateKind::H, false, 1};
  if (name == "s") return GateSpec{GateKind::S, false, 1};
  if (name == "sdg") return GateSpec{GateKind::Sdg, false, 1};
  if (name == "t") return GateSpec{GateKind::T, false, 1};
  if (name == "tdg") return GateSpec{GateKind::Tdg, false, 1};
  if (name == "rx") return GateSpec{GateKind::Rx, true, 1};
  if (name == "ry") return GateSpec{GateKind::Ry, true, 1};
  if (name == "rz") return GateSpec{GateKind::Rz, true, 1};
  if (name == "p" || name == "u1" || name == "phase") {
    return GateSpec{GateKind::Phase, true, 1};
  }
  if (name == "cx" || name == "CX") return GateSpec{GateKind::Cx, false, 2};
  if (name == "cz") return GateSpec{GateKind::Cz, false, 2};
  if (name == "cp" || name == "cu1") return GateSpec{GateKind::CPhase, true, 2};
  if (name == "swap") return GateSpec{GateKind::Swap, false, 2};
  return std::nullopt;
}

class Parser {
public:
  explicit Parser(const std::string& src) : lex_(src) { advance(); }

  ParseResult parse() {
    // optional OPENQASM 2.0; header
    if (cur_.kind == TokKind::Identifier && cur_.text == "OPENQASM") {
      advance();
      if (cur_.kind != TokKind::Number || cur_.text != "2.0") {
        throw ParseError(cur_.line, "unsupported OPENQASM version");
      }
      advance();
      expectSymbol(";");
    }
    while (cur_.kind != TokKind::End) {
      statement();
    }
    if (result_.circuit.n == 0) {
      throw ParseError(lastLine_, "no qreg declared");
    }
    return std::move(result_);
  }

private:
  void advance() {
    lastLine_ = cur_.line;
    cur_ = lex_.next();
  }

  void expectSymbol(const std::string& s) {
    if (cur_.kind != TokKind::Symbol || cur_.text != s) {
      throw ParseError(cur_.line, "expected '" + s + "'");
    }
    advance();
  }

  void skipStatement() {
    while (cur_.kind != TokKind::End &&
           !(cur_.kind == TokKind::Symbol && cur_.text == ";")) {
      advance();
    }
    if (cur_.kind == TokKind::End) {
      throw ParseError(lastLine_, "missing ';'");
    }
    advance();
  }

  void statement() {
    if (cur_.kind != TokKind::Identifier) {
      throw ParseError(cur_.line, "expected a statement");
    }
    const auto name = cur_.text;
    const auto line = cur_.line;
    if (name == "include") {
      advance();
      if (cur_.kind != TokKind::String) {
        throw ParseError(cur_.line, "include expects a string");
      }
      advance();
      expectSymbol(";");
      return;
    }
    if (name == "qreg") {
      if (result_.circuit.n != 0) {
        throw ParseError(line, "multiple qreg declarations are not supported");
      }
      advance();
      declareQreg();
      return;
    }
    if (name == "creg" || name == "measure" || name == "barrier") {
      result_.warnings.push_back("line " + std::to_string(line) + ": '" + name +
                                 "' ignored");
      advance();
      skipStatement();
      return;
    }
    const auto spec = lookupGate(name);
    if (!spec) {
      throw ParseError(line, "unknown gate '" + name + "'");
    }
    advance();
    gateApplication(*spec, name, line);
  }

  void declareQreg() {
    if (cur_.kind != TokKind::Identifier) {
      throw ParseError(cur_.line, "qreg expects a register name");
    }
    qregName_ = cur_.text;
    advance();
    expectSymbol("[");
    if (cur_.kind != TokKind::Number || cur_.number < 1 ||
        cur_.number != std::floor(cur_.number)) {
      throw ParseError(cur_.line, "qreg size must be a positive integer");
    }
    result_.circuit.n = static_cast<std::size_t>(cur_.number);
    advance();
    expectSymbol("]");
    expectSymbol(";");
  }

  Qubit qubitRef() {
    if (result_.circuit.n == 0) {
      throw ParseError(cur_.line, "gate before qreg declaration");
    }
    if (cur_.kind != TokKind::Identifier || cur_.text != qregName_) {
      throw ParseError(cur_.line, "expected register '" + qregName_ + "'");
    }
    advance();
    expectSymbol("[");
    if (cur_.kind != TokKind::Number ||
        cur_.number != std::floor(cur_.number)) {
      throw ParseError(cur_.line, "qubit index must be an integer");
    }
    const auto idx = static_cast<long long>(cur_.number);
    if (idx < 0 || static_cast<std::size_t>(idx) >= result_.circuit.n) {
      throw ParseError(cur_.line, "qubit index out of range");
    }
    advance();
    expectSymbol("]");
    return static_cast<Qubit>(idx);
  }

  void gateApplication(const GateSpec& spec, const std::string& name, int line) {
    fp angle = 0.0;
    if (cur_.kind == TokKind::Symbol && cur_.text == "(") {
      if (!spec.parameterized) {
        throw ParseError(line, "gate '" + name + "' takes no parameter");
      }
      advance();
      angle = expression();
      expectSymbol(")");
    } else if (spec.parameterized) {
      throw ParseError(line, "gate '" + name + "' requires a parameter");
    }

    std::vector<Qubit> args;
    args.push_back(qubitRef());
    while (cur_.kind == TokKind::Symbol && cur_.text == ",") {
      advance();
      args.push_back(qubitRef());
    }
    expectSymbol(";");
    if (static_cast<int>(args.size()) != spec.numArgs) {
      throw ParseError(line, "gate '" + name + "' expects " +
                                 std::to_string(spec.numArgs) + " operand(s)");
    }

    Gate g;
    g.kind = spec.kind;
    g.angle = angle;
    if (spec.kind == GateKind::Swap) {
      g.targets = {args[0], args[1]};
    } else if (spec.numArgs == 2) {
      g.controls = {args[0]}; // control first, per cx convention
      g.targets = {args[1]};
    } else {
      g.targets = {args[0]};
    }
    try {
      validateGate(g, result_.circuit.n);
    } catch (const Error& err) {
      throw ParseError(line, err.what());
    }
    result_.circuit.gates.push_back(std::move(g));
  }

  // expr := term (('+'|'-') term)*
  fp expression() {
    fp v = term();
    while (cur_.kind == TokKind::Symbol && (cur_.text == "+" || cur_.text == "-")) {
      const auto op = cur_.text;
      advance();
      const fp rhs = term();
      v = op == "+" ? v + rhs : v - rhs;
    }
    return v;
  }

  fp term() {
    fp v = factor();
    while (cur_.kind == TokKind::Symbol && (cur_.text == "*" || cur_.text == "/")) {
      const auto op = cur_.text;
      const auto line = cur_.line;
      advance();
      const fp rhs = factor();
      if (op == "/") {
        if (rhs == 0.0) {
          throw ParseError(line, "division by zero in parameter");
        }
        v /= rhs;
      } else {
        v *= rhs;
      }
    }
    return v;
  }

  fp factor() {
    if (cur_.kind == TokKind::Symbol && (cur_.text == "-" || cur_.text == "+")) {
      const bool neg = cur_.text == "-";
      advance();
      const fp v = factor();
      return neg ? -v : v;
    }
    if (cur_.kind == TokKind::Symbol && cur_.text == "(") {
      advance();
      const fp v = expression();
      expectSymbol(")");
      return v;
    }
    if (cur_.kind == TokKind::Number) {
      const fp v = cur_.number;
      advance();
      return v;
    }
    if (cur_.kind == TokKind::Identifier && cur_.text == "pi") {
      advance();
      return std::numbers::pi;
    }
    throw ParseError(cur_.line, "malformed parameter expression");
  }

  Lexer lex_;
  Token cur_;
  int lastLine_ = 1;
  std::string qregName_;
  ParseResult result_;
};

} // namespace

ParseResult parseQasm(const std::string& text) { return Parser(text).parse(); }

std::string emitQasm(const Circuit& c) {
  validateCircuit(c);
  std::string out = "OPENQASM 2.0;\n";
  out += "qreg q[" + std::to_string(c.n) + "];\n";
  char buf[64];
  for (const auto& g : c.gates) {
    out += gateName(g.kind);
    if (gateIsParameterized(g.kind)) {
      std::snprintf(buf, sizeof buf, "(%.17g)", g.angle);
      out += buf;
    }
    out += " ";
    bool first = true;
    for (const auto q : g.controls) {
      out += (first ? "" : ",") + ("q[" + std::to_string(q) + "]");
      first = false;
    }
    for (const auto q : g.targets) {
      out += (first ? "" : ",") + ("q[" + std::to_string(q) + "]");
      first = false;
    }
    out += ";\n";
  }
  return out;
}

} // namespace qdd
