/*
 * SPDX-License-Identifier: Apache-2.0
 */

// OpenQASM 2.0 frontend: parsing, user-gate expansion and reserialization.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hyqa/circuit.hpp"

namespace hyqa {

enum class QasmErrorKind {
  Syntax,
  UnsupportedVersion,
  UndefinedSymbol,
  IndexOutOfRange,
  RecursionLimit,
};

const char* to_string(QasmErrorKind kind);

class QasmError : public std::runtime_error {
 public:
  QasmError(QasmErrorKind kind, SourceSpan span, const std::string& message);

  QasmErrorKind kind() const noexcept { return kind_; }
  const SourceSpan& span() const noexcept { return span_; }
  /// Message without the position prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  QasmErrorKind kind_;
  SourceSpan span_;
  std::string detail_;
};

/// Parses an OpenQASM 2.0 program. `path` only labels the circuit; the
/// circuit name is the file stem of `path` (or "circuit" when empty).
///
/// Register-wide operands (`h q;`, `measure q -> c;`) are broadcast into one
/// instruction per bit. `barrier` stays a single instruction over all named
/// qubits. User gate calls are kept as single Gate instructions.
QuantumCircuit parse_qasm(std::string_view text, std::string_view path = {});

/// Maximum nesting depth accepted by expand_user_gates.
inline constexpr int kMaxGateExpansionDepth = 32;

/// Replaces every call to a user-defined (non-opaque) gate with its body,
/// recursively. Built-in and opaque gates are left alone. Throws QasmError
/// with kind RecursionLimit on self-reference or nesting deeper than
/// kMaxGateExpansionDepth.
QuantumCircuit expand_user_gates(const QuantumCircuit& circuit,
                                 const GateDefinitionTable& definitions);
QuantumCircuit expand_user_gates(const QuantumCircuit& circuit);

/// Prints the circuit back as an OpenQASM 2.0 program.
std::string to_qasm(const QuantumCircuit& circuit);

/// Signature of a gate known without a user definition.
struct BuiltinGate {
  int num_params = 0;
  int num_qubits = 0;
};

/// `U` and `CX` are always available; the qelib1.inc set only when included.
std::optional<BuiltinGate> find_builtin_gate(std::string_view name, bool with_qelib);

}  // namespace hyqa
