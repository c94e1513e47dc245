/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <set>
#include <unordered_map>

#include "hyqa/qasm.hpp"

namespace hyqa {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class TokenKind { Identifier, Integer, Real, String, Symbol, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourceSpan span;
};

const char* describe(const Token& tok) {
  switch (tok.kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Integer: return "integer";
    case TokenKind::Real: return "real";
    case TokenKind::String: return "string";
    case TokenKind::Symbol: return "symbol";
    case TokenKind::End: return "end of input";
  }
  return "token";
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> tokenize() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token tok;
      tok.span = {line_, column_};
      if (pos_ >= text_.size()) {
        tok.kind = TokenKind::End;
        out.push_back(std::move(tok));
        return out;
      }
      char c = text_[pos_];
      if (is_ident_start(c)) {
        tok.kind = TokenKind::Identifier;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) tok.text += advance();
      } else if (is_digit(c) || (c == '.' && pos_ + 1 < text_.size() && is_digit(text_[pos_ + 1]))) {
        lex_number(tok);
      } else if (c == '"') {
        tok.kind = TokenKind::String;
        advance();
        while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') tok.text += advance();
        if (pos_ >= text_.size() || text_[pos_] != '"') {
          throw QasmError(QasmErrorKind::Syntax, tok.span, "unterminated string literal");
        }
        advance();
      } else if (starts_with("->") || starts_with("==")) {
        tok.kind = TokenKind::Symbol;
        tok.text += advance();
        tok.text += advance();
      } else if (std::string_view(";,[](){}+-*/^").find(c) != std::string_view::npos) {
        tok.kind = TokenKind::Symbol;
        tok.text += advance();
      } else {
        throw QasmError(QasmErrorKind::Syntax, tok.span,
                        std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(tok));
    }
  }

 private:
  bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (starts_with("//")) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  void lex_number(Token& tok) {
    tok.kind = TokenKind::Integer;
    while (pos_ < text_.size() && is_digit(text_[pos_])) tok.text += advance();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      tok.kind = TokenKind::Real;
      tok.text += advance();
      while (pos_ < text_.size() && is_digit(text_[pos_])) tok.text += advance();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && is_digit(text_[look])) {
        tok.kind = TokenKind::Real;
        while (pos_ < look) tok.text += advance();
        while (pos_ < text_.size() && is_digit(text_[pos_])) tok.text += advance();
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

// ---------------------------------------------------------------------------
// Builtin gate table
// ---------------------------------------------------------------------------

const std::unordered_map<std::string_view, BuiltinGate>& qelib_gates() {
  static const std::unordered_map<std::string_view, BuiltinGate> table = {
      {"u3", {3, 1}},   {"u2", {2, 1}},    {"u1", {1, 1}},    {"cx", {0, 2}},   {"id", {0, 1}},
      {"u0", {1, 1}},   {"u", {3, 1}},     {"p", {1, 1}},     {"x", {0, 1}},    {"y", {0, 1}},
      {"z", {0, 1}},    {"h", {0, 1}},     {"s", {0, 1}},     {"sdg", {0, 1}},  {"t", {0, 1}},
      {"tdg", {0, 1}},  {"rx", {1, 1}},    {"ry", {1, 1}},    {"rz", {1, 1}},   {"sx", {0, 1}},
      {"sxdg", {0, 1}}, {"cz", {0, 2}},    {"cy", {0, 2}},    {"swap", {0, 2}}, {"ch", {0, 2}},
      {"ccx", {0, 3}},  {"cswap", {0, 3}}, {"crx", {1, 2}},   {"cry", {1, 2}},  {"crz", {1, 2}},
      {"cu1", {1, 2}},  {"cp", {1, 2}},    {"cu3", {3, 2}},   {"csx", {0, 2}},  {"cu", {4, 2}},
      {"rxx", {1, 2}},  {"rzz", {1, 2}},   {"rccx", {0, 3}},  {"rc3x", {0, 4}}, {"c3x", {0, 4}},
      {"c3sqrtx", {0, 4}}, {"c4x", {0, 5}},
  };
  return table;
}

bool is_unary_function(std::string_view name) {
  return name == "sin" || name == "cos" || name == "tan" || name == "exp" || name == "ln" ||
         name == "sqrt";
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Operand {
  std::string reg;
  std::optional<std::size_t> index;
  SourceSpan span;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string_view path) : tokens_(std::move(tokens)) {
    circuit_.source_path = std::string(path);
    auto stem = std::filesystem::path(std::string(path)).stem().string();
    circuit_.name = stem.empty() ? "circuit" : stem;
  }

  QuantumCircuit run() {
    parse_header();
    while (peek().kind != TokenKind::End) parse_statement();
    return std::move(circuit_);
  }

 private:
  // -- token helpers --------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }

  Token take() {
    Token tok = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return tok;
  }

  bool at_symbol(std::string_view s) const {
    return peek().kind == TokenKind::Symbol && peek().text == s;
  }

  bool at_keyword(std::string_view s) const {
    return peek().kind == TokenKind::Identifier && peek().text == s;
  }

  [[noreturn]] void fail_expected(std::string_view what) const {
    const Token& tok = peek();
    std::string found = tok.kind == TokenKind::End ? "end of input"
                                                   : std::string(describe(tok)) + " '" + tok.text + "'";
    throw QasmError(QasmErrorKind::Syntax, tok.span,
                    "expected " + std::string(what) + " but found " + found);
  }

  Token expect_symbol(std::string_view s) {
    if (!at_symbol(s)) fail_expected("'" + std::string(s) + "'");
    return take();
  }

  Token expect_identifier() {
    if (peek().kind != TokenKind::Identifier) fail_expected("identifier");
    return take();
  }

  std::size_t expect_integer() {
    if (peek().kind != TokenKind::Integer) fail_expected("integer");
    Token tok = take();
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size()) {
      throw QasmError(QasmErrorKind::Syntax, tok.span, "integer out of range: " + tok.text);
    }
    return value;
  }

  // -- statements -----------------------------------------------------------

  void parse_header() {
    if (!at_keyword("OPENQASM")) fail_expected("'OPENQASM' version header");
    Token header = take();
    if (peek().kind != TokenKind::Real && peek().kind != TokenKind::Integer) {
      fail_expected("version number");
    }
    Token version = take();
    if (version.text != "2.0" && version.text != "2") {
      throw QasmError(QasmErrorKind::UnsupportedVersion, header.span,
                      "unsupported OpenQASM version " + version.text + " (only 2.0 is supported)");
    }
    expect_symbol(";");
  }

  void parse_statement() {
    const Token& tok = peek();
    if (tok.kind != TokenKind::Identifier) fail_expected("statement");
    const std::string& word = tok.text;
    if (word == "OPENQASM") {
      throw QasmError(QasmErrorKind::Syntax, tok.span, "duplicate OPENQASM header");
    } else if (word == "include") {
      parse_include();
    } else if (word == "qreg" || word == "creg") {
      parse_register();
    } else if (word == "gate") {
      parse_gate_definition(false);
    } else if (word == "opaque") {
      parse_gate_definition(true);
    } else if (word == "if") {
      parse_if();
    } else if (word == "barrier") {
      parse_barrier();
    } else {
      parse_quantum_op(std::nullopt, tok.span);
    }
  }

  void parse_include() {
    Token kw = take();
    if (peek().kind != TokenKind::String) fail_expected("include file name");
    Token file = take();
    expect_symbol(";");
    if (file.text != "qelib1.inc") {
      throw QasmError(QasmErrorKind::UndefinedSymbol, kw.span,
                      "cannot resolve include \"" + file.text + "\" (only qelib1.inc is known)");
    }
    circuit_.includes_qelib = true;
  }

  void check_new_name(const Token& name) const {
    if (circuit_.find_qreg(name.text) || circuit_.find_creg(name.text) ||
        circuit_.gate_definitions.count(name.text) ||
        find_builtin_gate(name.text, circuit_.includes_qelib)) {
      throw QasmError(QasmErrorKind::Syntax, name.span, "redeclaration of '" + name.text + "'");
    }
  }

  void parse_register() {
    bool quantum = take().text == "qreg";
    Token name = expect_identifier();
    check_new_name(name);
    expect_symbol("[");
    SourceSpan size_span = peek().span;
    std::size_t size = expect_integer();
    expect_symbol("]");
    expect_symbol(";");
    if (size == 0) {
      throw QasmError(QasmErrorKind::Syntax, size_span, "register size must be positive");
    }
    auto& regs = quantum ? circuit_.qubit_registers : circuit_.clbit_registers;
    regs.push_back({name.text, size});
  }

  std::vector<std::string> parse_identifier_list() {
    std::vector<std::string> names;
    names.push_back(expect_identifier().text);
    while (at_symbol(",")) {
      take();
      names.push_back(expect_identifier().text);
    }
    return names;
  }

  void parse_gate_definition(bool opaque) {
    Token kw = take();
    Token name = expect_identifier();
    check_new_name(name);

    GateDefinition def;
    def.name = name.text;
    def.opaque = opaque;
    def.span = kw.span;
    if (at_symbol("(")) {
      take();
      if (!at_symbol(")")) def.params = parse_identifier_list();
      expect_symbol(")");
    }
    def.qargs = parse_identifier_list();
    check_unique(def.params, name.span, "parameter");
    check_unique(def.qargs, name.span, "qubit argument");

    if (opaque) {
      expect_symbol(";");
    } else {
      expect_symbol("{");
      while (!at_symbol("}")) {
        if (peek().kind == TokenKind::End) fail_expected("'}'");
        def.body.push_back(parse_gate_body_op(def));
      }
      take();
    }
    circuit_.gate_definitions.emplace(def.name, std::move(def));
  }

  static void check_unique(const std::vector<std::string>& names, SourceSpan span,
                           std::string_view what) {
    std::set<std::string> seen;
    for (const auto& n : names) {
      if (!seen.insert(n).second) {
        throw QasmError(QasmErrorKind::Syntax, span,
                        "duplicate " + std::string(what) + " '" + n + "'");
      }
    }
  }

  GateBodyOp parse_gate_body_op(const GateDefinition& def) {
    GateBodyOp op;
    Token head = expect_identifier();
    auto check_qarg = [&](const std::string& q, SourceSpan span) {
      if (std::find(def.qargs.begin(), def.qargs.end(), q) == def.qargs.end()) {
        throw QasmError(QasmErrorKind::UndefinedSymbol, span,
                        "'" + q + "' is not a qubit argument of gate '" + def.name + "'");
      }
    };

    if (head.text == "barrier") {
      op.kind = InstructionKind::Barrier;
      SourceSpan span = peek().span;
      op.qargs = parse_identifier_list();
      for (const auto& q : op.qargs) check_qarg(q, span);
      expect_symbol(";");
      return op;
    }

    op.kind = InstructionKind::Gate;
    op.gate_name = head.text;
    int expected_params = 0;
    int expected_qubits = 0;
    if (head.text == def.name) {
      // Self-reference is accepted here and rejected by expansion.
      expected_params = static_cast<int>(def.params.size());
      expected_qubits = static_cast<int>(def.qargs.size());
    } else {
      auto sig = gate_signature(head);
      expected_params = sig.num_params;
      expected_qubits = sig.num_qubits;
    }
    if (at_symbol("(")) {
      take();
      if (!at_symbol(")")) {
        op.params.push_back(parse_expression(&def.params));
        while (at_symbol(",")) {
          take();
          op.params.push_back(parse_expression(&def.params));
        }
      }
      expect_symbol(")");
    }
    SourceSpan args_span = peek().span;
    op.qargs = parse_identifier_list();
    expect_symbol(";");
    for (const auto& q : op.qargs) check_qarg(q, args_span);
    check_arity(head, static_cast<int>(op.params.size()), expected_params,
                static_cast<int>(op.qargs.size()), expected_qubits);
    check_unique(op.qargs, args_span, "qubit operand");
    return op;
  }

  BuiltinGate gate_signature(const Token& name) const {
    if (auto builtin = find_builtin_gate(name.text, circuit_.includes_qelib)) return *builtin;
    auto it = circuit_.gate_definitions.find(name.text);
    if (it == circuit_.gate_definitions.end()) {
      throw QasmError(QasmErrorKind::UndefinedSymbol, name.span,
                      "undefined gate '" + name.text + "'");
    }
    return {static_cast<int>(it->second.params.size()), static_cast<int>(it->second.qargs.size())};
  }

  static void check_arity(const Token& name, int params, int expected_params, int qubits,
                          int expected_qubits) {
    if (params != expected_params) {
      throw QasmError(QasmErrorKind::Syntax, name.span,
                      "gate '" + name.text + "' takes " + std::to_string(expected_params) +
                          " parameter(s), got " + std::to_string(params));
    }
    if (qubits != expected_qubits) {
      throw QasmError(QasmErrorKind::Syntax, name.span,
                      "gate '" + name.text + "' acts on " + std::to_string(expected_qubits) +
                          " qubit(s), got " + std::to_string(qubits));
    }
  }

  // -- expressions ----------------------------------------------------------
  //
  // Parameters are validated and kept as normalized text (tokens joined
  // without whitespace). Their values are never evaluated.

  std::string parse_expression(const std::vector<std::string>* scope) {
    std::string out = parse_term(scope);
    while (at_symbol("+") || at_symbol("-")) {
      out += take().text;
      out += parse_term(scope);
    }
    return out;
  }

  std::string parse_term(const std::vector<std::string>* scope) {
    std::string out = parse_power(scope);
    while (at_symbol("*") || at_symbol("/")) {
      out += take().text;
      out += parse_power(scope);
    }
    return out;
  }

  std::string parse_power(const std::vector<std::string>* scope) {
    std::string out = parse_unary(scope);
    if (at_symbol("^")) {
      out += take().text;
      out += parse_power(scope);
    }
    return out;
  }

  std::string parse_unary(const std::vector<std::string>* scope) {
    if (at_symbol("-") || at_symbol("+")) {
      std::string sign = take().text;
      return sign + parse_unary(scope);
    }
    return parse_primary(scope);
  }

  std::string parse_primary(const std::vector<std::string>* scope) {
    const Token& tok = peek();
    if (tok.kind == TokenKind::Integer || tok.kind == TokenKind::Real) return take().text;
    if (at_symbol("(")) {
      take();
      std::string inner = parse_expression(scope);
      expect_symbol(")");
      return "(" + inner + ")";
    }
    if (tok.kind == TokenKind::Identifier) {
      Token name = take();
      if (name.text == "pi") return name.text;
      if (is_unary_function(name.text)) {
        expect_symbol("(");
        std::string inner = parse_expression(scope);
        expect_symbol(")");
        return name.text + "(" + inner + ")";
      }
      if (scope && std::find(scope->begin(), scope->end(), name.text) != scope->end()) {
        return name.text;
      }
      throw QasmError(QasmErrorKind::UndefinedSymbol, name.span,
                      "undefined parameter '" + name.text + "'");
    }
    fail_expected("expression");
  }

  // -- quantum operations ---------------------------------------------------

  Operand parse_operand() {
    Operand op;
    Token name = expect_identifier();
    op.reg = name.text;
    op.span = name.span;
    if (at_symbol("[")) {
      take();
      op.index = expect_integer();
      expect_symbol("]");
    }
    return op;
  }

  std::vector<Operand> parse_operand_list() {
    std::vector<Operand> ops;
    ops.push_back(parse_operand());
    while (at_symbol(",")) {
      take();
      ops.push_back(parse_operand());
    }
    return ops;
  }

  // Resolves an operand against quantum or classical registers and returns
  // its width (1 for an indexed bit, register size otherwise).
  std::size_t resolve(const Operand& op, bool quantum) const {
    const Register* reg = quantum ? circuit_.find_qreg(op.reg) : circuit_.find_creg(op.reg);
    if (!reg) {
      throw QasmError(QasmErrorKind::UndefinedSymbol, op.span,
                      std::string("undefined ") + (quantum ? "quantum" : "classical") +
                          " register '" + op.reg + "'");
    }
    if (op.index) {
      if (*op.index >= reg->size) {
        throw QasmError(QasmErrorKind::IndexOutOfRange, op.span,
                        "index " + std::to_string(*op.index) + " out of range for register '" +
                            op.reg + "' of size " + std::to_string(reg->size));
      }
      return 1;
    }
    return reg->size;
  }

  // Common broadcast length of a set of operands; indexed bits broadcast
  // against any register size.
  static std::size_t broadcast_length(const std::vector<Operand>& ops,
                                      const std::vector<std::size_t>& widths, SourceSpan span) {
    std::size_t length = 1;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (ops[i].index) continue;
      if (length != 1 && widths[i] != length) {
        throw QasmError(QasmErrorKind::Syntax, span, "register size mismatch in broadcast");
      }
      length = widths[i];
    }
    return length;
  }

  static BitRef bit_at(const Operand& op, std::size_t k) {
    return {op.reg, op.index ? *op.index : k};
  }

  void parse_if() {
    Token kw = take();
    expect_symbol("(");
    Operand reg;
    Token name = expect_identifier();
    reg.reg = name.text;
    reg.span = name.span;
    expect_symbol("==");
    unsigned long long value = expect_integer();
    expect_symbol(")");
    resolve(reg, false);
    if (at_keyword("barrier") || at_keyword("if") || at_keyword("gate") || at_keyword("opaque") ||
        at_keyword("qreg") || at_keyword("creg") || at_keyword("include")) {
      throw QasmError(QasmErrorKind::Syntax, peek().span,
                      "'" + peek().text + "' cannot be classically conditioned");
    }
    parse_quantum_op(Condition{reg.reg, value}, kw.span);
  }

  void parse_quantum_op(const std::optional<Condition>& condition, SourceSpan span) {
    if (at_keyword("measure")) {
      take();
      Operand q = parse_operand();
      expect_symbol("->");
      Operand c = parse_operand();
      expect_symbol(";");
      std::size_t qw = resolve(q, true);
      std::size_t cw = resolve(c, false);
      if (qw != cw) {
        throw QasmError(QasmErrorKind::Syntax, span, "measure operand sizes differ");
      }
      for (std::size_t k = 0; k < qw; ++k) {
        Instruction inst;
        inst.kind = InstructionKind::Measure;
        inst.qubits = {bit_at(q, k)};
        inst.clbits = {bit_at(c, k)};
        inst.condition = condition;
        inst.span = span;
        circuit_.instructions.push_back(std::move(inst));
      }
      return;
    }
    if (at_keyword("reset")) {
      take();
      Operand q = parse_operand();
      expect_symbol(";");
      std::size_t qw = resolve(q, true);
      for (std::size_t k = 0; k < qw; ++k) {
        Instruction inst;
        inst.kind = InstructionKind::Reset;
        inst.qubits = {bit_at(q, k)};
        inst.condition = condition;
        inst.span = span;
        circuit_.instructions.push_back(std::move(inst));
      }
      return;
    }
    parse_gate_call(condition, span);
  }

  void parse_gate_call(const std::optional<Condition>& condition, SourceSpan span) {
    Token name = expect_identifier();
    BuiltinGate sig = gate_signature(name);
    std::vector<std::string> params;
    if (at_symbol("(")) {
      take();
      if (!at_symbol(")")) {
        params.push_back(parse_expression(nullptr));
        while (at_symbol(",")) {
          take();
          params.push_back(parse_expression(nullptr));
        }
      }
      expect_symbol(")");
    }
    std::vector<Operand> ops = parse_operand_list();
    expect_symbol(";");
    check_arity(name, static_cast<int>(params.size()), sig.num_params,
                static_cast<int>(ops.size()), sig.num_qubits);

    std::vector<std::size_t> widths;
    for (const auto& op : ops) widths.push_back(resolve(op, true));
    std::size_t length = broadcast_length(ops, widths, span);
    for (std::size_t k = 0; k < length; ++k) {
      Instruction inst;
      inst.kind = InstructionKind::Gate;
      inst.gate_name = name.text;
      inst.params = params;
      for (const auto& op : ops) {
        BitRef bit = bit_at(op, k);
        if (std::find(inst.qubits.begin(), inst.qubits.end(), bit) != inst.qubits.end()) {
          throw QasmError(QasmErrorKind::Syntax, op.span,
                          "duplicate qubit operand " + bit.reg + "[" + std::to_string(bit.index) +
                              "] in gate '" + name.text + "'");
        }
        inst.qubits.push_back(std::move(bit));
      }
      inst.condition = condition;
      inst.span = span;
      circuit_.instructions.push_back(std::move(inst));
    }
  }

  void parse_barrier() {
    Token kw = take();
    std::vector<Operand> ops = parse_operand_list();
    expect_symbol(";");
    Instruction inst;
    inst.kind = InstructionKind::Barrier;
    inst.span = kw.span;
    for (const auto& op : ops) {
      std::size_t width = resolve(op, true);
      for (std::size_t k = 0; k < width; ++k) {
        BitRef bit = op.index ? BitRef{op.reg, *op.index} : BitRef{op.reg, k};
        if (std::find(inst.qubits.begin(), inst.qubits.end(), bit) == inst.qubits.end()) {
          inst.qubits.push_back(std::move(bit));
        }
      }
    }
    circuit_.instructions.push_back(std::move(inst));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  QuantumCircuit circuit_;
};

// ---------------------------------------------------------------------------
// Expansion
// ---------------------------------------------------------------------------

// Replaces whole-word occurrences of formal parameter names in an expression
// with the parenthesized actual argument text.
std::string substitute_params(const std::string& expr, const std::vector<std::string>& formals,
                              const std::vector<std::string>& actuals) {
  std::string out;
  std::size_t i = 0;
  while (i < expr.size()) {
    char c = expr[i];
    if (is_digit(c) || c == '.') {
      std::size_t start = i;
      while (i < expr.size() && (is_digit(expr[i]) || expr[i] == '.')) ++i;
      if (i < expr.size() && (expr[i] == 'e' || expr[i] == 'E')) {
        ++i;
        if (i < expr.size() && (expr[i] == '+' || expr[i] == '-')) ++i;
        while (i < expr.size() && is_digit(expr[i])) ++i;
      }
      out.append(expr, start, i - start);
    } else if (is_ident_start(c)) {
      std::size_t start = i;
      while (i < expr.size() && is_ident_char(expr[i])) ++i;
      std::string word = expr.substr(start, i - start);
      auto it = std::find(formals.begin(), formals.end(), word);
      if (it != formals.end()) {
        out += "(" + actuals[static_cast<std::size_t>(it - formals.begin())] + ")";
      } else {
        out += word;
      }
    } else {
      out += c;
      ++i;
    }
  }
  return out;
}

class Expander {
 public:
  Expander(const GateDefinitionTable& defs) : defs_(defs) {}

  void expand(const Instruction& inst, std::vector<Instruction>& out) {
    const GateDefinition* def = user_gate(inst.gate_name);
    if (inst.kind != InstructionKind::Gate || !def) {
      out.push_back(inst);
      return;
    }
    std::vector<std::string> stack;
    expand_call(*def, inst.params, inst.qubits, inst, stack, out);
  }

 private:
  const GateDefinition* user_gate(const std::string& name) const {
    auto it = defs_.find(name);
    if (it == defs_.end() || it->second.opaque) return nullptr;
    return &it->second;
  }

  void expand_call(const GateDefinition& def, const std::vector<std::string>& params,
                   const std::vector<BitRef>& qubits, const Instruction& origin,
                   std::vector<std::string>& stack, std::vector<Instruction>& out) {
    if (std::find(stack.begin(), stack.end(), def.name) != stack.end()) {
      throw QasmError(QasmErrorKind::RecursionLimit, origin.span,
                      "gate '" + def.name + "' is defined in terms of itself");
    }
    if (static_cast<int>(stack.size()) >= kMaxGateExpansionDepth) {
      throw QasmError(QasmErrorKind::RecursionLimit, origin.span,
                      "gate expansion deeper than " + std::to_string(kMaxGateExpansionDepth) +
                          " levels at '" + def.name + "'");
    }
    stack.push_back(def.name);
    auto map_qarg = [&](const std::string& formal) {
      auto it = std::find(def.qargs.begin(), def.qargs.end(), formal);
      return qubits.at(static_cast<std::size_t>(it - def.qargs.begin()));
    };
    for (const auto& op : def.body) {
      std::vector<BitRef> actual;
      for (const auto& q : op.qargs) actual.push_back(map_qarg(q));
      std::vector<std::string> actual_params;
      for (const auto& p : op.params) actual_params.push_back(substitute_params(p, def.params, params));

      if (op.kind == InstructionKind::Gate) {
        if (const GateDefinition* inner = user_gate(op.gate_name)) {
          expand_call(*inner, actual_params, actual, origin, stack, out);
          continue;
        }
      }
      Instruction inst;
      inst.kind = op.kind;
      inst.gate_name = op.kind == InstructionKind::Gate ? op.gate_name : std::string{};
      inst.params = std::move(actual_params);
      inst.qubits = std::move(actual);
      if (op.kind != InstructionKind::Barrier) inst.condition = origin.condition;
      inst.span = origin.span;
      out.push_back(std::move(inst));
    }
    stack.pop_back();
  }

  const GateDefinitionTable& defs_;
};

std::string bit_text(const BitRef& bit) {
  return bit.reg + "[" + std::to_string(bit.index) + "]";
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

const char* to_string(QasmErrorKind kind) {
  switch (kind) {
    case QasmErrorKind::Syntax: return "SyntaxError";
    case QasmErrorKind::UnsupportedVersion: return "UnsupportedVersion";
    case QasmErrorKind::UndefinedSymbol: return "UndefinedSymbol";
    case QasmErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case QasmErrorKind::RecursionLimit: return "RecursionLimit";
  }
  return "QasmError";
}

QasmError::QasmError(QasmErrorKind kind, SourceSpan span, const std::string& message)
    : std::runtime_error(std::to_string(span.line) + ":" + std::to_string(span.column) + ": " +
                         to_string(kind) + ": " + message),
      kind_(kind),
      span_(span),
      detail_(message) {}

std::optional<BuiltinGate> find_builtin_gate(std::string_view name, bool with_qelib) {
  if (name == "U") return BuiltinGate{3, 1};
  if (name == "CX") return BuiltinGate{0, 2};
  if (!with_qelib) return std::nullopt;
  const auto& table = qelib_gates();
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

QuantumCircuit parse_qasm(std::string_view text, std::string_view path) {
  Parser parser(Lexer(text).tokenize(), path);
  return parser.run();
}

QuantumCircuit expand_user_gates(const QuantumCircuit& circuit,
                                 const GateDefinitionTable& definitions) {
  QuantumCircuit out = circuit;
  out.instructions.clear();
  Expander expander(definitions);
  for (const auto& inst : circuit.instructions) expander.expand(inst, out.instructions);
  out.gates_expanded = true;
  return out;
}

QuantumCircuit expand_user_gates(const QuantumCircuit& circuit) {
  return expand_user_gates(circuit, circuit.gate_definitions);
}

std::string to_qasm(const QuantumCircuit& circuit) {
  std::string out = "OPENQASM 2.0;\n";
  if (circuit.includes_qelib) out += "include \"qelib1.inc\";\n";
  for (const auto& r : circuit.qubit_registers) {
    out += "qreg " + r.name + "[" + std::to_string(r.size) + "];\n";
  }
  for (const auto& r : circuit.clbit_registers) {
    out += "creg " + r.name + "[" + std::to_string(r.size) + "];\n";
  }

  // Definitions may only refer to earlier ones, so keep source order.
  std::vector<const GateDefinition*> defs;
  for (const auto& [name, def] : circuit.gate_definitions) defs.push_back(&def);
  std::sort(defs.begin(), defs.end(), [](const GateDefinition* a, const GateDefinition* b) {
    return std::pair(a->span.line, a->span.column) < std::pair(b->span.line, b->span.column);
  });
  for (const GateDefinition* def : defs) {
    out += def->opaque ? "opaque " : "gate ";
    out += def->name;
    if (!def->params.empty()) out += "(" + join(def->params, ",") + ")";
    out += " " + join(def->qargs, ",");
    if (def->opaque) {
      out += ";\n";
      continue;
    }
    out += " {\n";
    for (const auto& op : def->body) {
      out += "  ";
      if (op.kind == InstructionKind::Barrier) {
        out += "barrier";
      } else {
        out += op.gate_name;
        if (!op.params.empty()) out += "(" + join(op.params, ",") + ")";
      }
      out += " " + join(op.qargs, ",") + ";\n";
    }
    out += "}\n";
  }

  for (const auto& inst : circuit.instructions) {
    if (inst.condition) {
      out += "if(" + inst.condition->reg + "==" + std::to_string(inst.condition->value) + ") ";
    }
    std::vector<std::string> qubits;
    for (const auto& q : inst.qubits) qubits.push_back(bit_text(q));
    switch (inst.kind) {
      case InstructionKind::Gate:
        out += inst.gate_name;
        if (!inst.params.empty()) out += "(" + join(inst.params, ",") + ")";
        out += " " + join(qubits, ",") + ";\n";
        break;
      case InstructionKind::Measure:
        out += "measure " + bit_text(inst.qubits.at(0)) + " -> " + bit_text(inst.clbits.at(0)) + ";\n";
        break;
      case InstructionKind::Reset:
        out += "reset " + bit_text(inst.qubits.at(0)) + ";\n";
        break;
      case InstructionKind::Barrier:
        out += "barrier " + join(qubits, ",") + ";\n";
        break;
    }
  }
  return out;
}

}  // namespace hyqa
