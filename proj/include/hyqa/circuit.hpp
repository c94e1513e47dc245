/*
 * SPDX-License-Identifier: Apache-2.0
 */

// Intermediate representation of one OpenQASM 2.0 program.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hyqa {

/// 1-based position in a source file.
struct SourceSpan {
  int line = 1;
  int column = 1;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

/// A single bit of a named register, e.g. `q[3]`.
struct BitRef {
  std::string reg;
  std::size_t index = 0;

  friend bool operator==(const BitRef&, const BitRef&) = default;
};

struct Register {
  std::string name;
  std::size_t size = 0;

  friend bool operator==(const Register&, const Register&) = default;
};

/// Classical guard of an `if (creg == value)` statement.
struct Condition {
  std::string reg;
  unsigned long long value = 0;

  friend bool operator==(const Condition&, const Condition&) = default;
};

enum class InstructionKind { Gate, Measure, Reset, Barrier };

const char* to_string(InstructionKind kind);

struct Instruction {
  InstructionKind kind = InstructionKind::Gate;
  std::string gate_name;            // Gate only
  std::vector<std::string> params;  // Gate only; normalized expression text
  std::vector<BitRef> qubits;
  std::vector<BitRef> clbits;
  std::optional<Condition> condition;
  SourceSpan span;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

/// One statement inside a `gate` body. Operands name the gate's formal
/// qubit arguments.
struct GateBodyOp {
  InstructionKind kind = InstructionKind::Gate;  // Gate or Barrier
  std::string gate_name;
  std::vector<std::string> params;
  std::vector<std::string> qargs;

  friend bool operator==(const GateBodyOp&, const GateBodyOp&) = default;
};

/// A user `gate` (or `opaque`) declaration.
struct GateDefinition {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::string> qargs;
  std::vector<GateBodyOp> body;
  bool opaque = false;
  SourceSpan span;

  friend bool operator==(const GateDefinition&, const GateDefinition&) = default;
};

using GateDefinitionTable = std::map<std::string, GateDefinition>;

struct QuantumCircuit {
  std::string name;
  std::string source_path;
  std::vector<Register> qubit_registers;
  std::vector<Register> clbit_registers;
  std::vector<Instruction> instructions;
  GateDefinitionTable gate_definitions;
  bool includes_qelib = false;
  bool gates_expanded = false;

  std::size_t num_qubits() const;
  std::size_t num_clbits() const;

  const Register* find_qreg(const std::string& name) const;
  const Register* find_creg(const std::string& name) const;

  /// Flat wire index of a qubit across all quantum registers, in declaration
  /// order. Throws std::out_of_range for unknown bits.
  std::size_t qubit_index(const BitRef& bit) const;
  std::size_t clbit_index(const BitRef& bit) const;

  friend bool operator==(const QuantumCircuit&, const QuantumCircuit&) = default;
};

}  // namespace hyqa
