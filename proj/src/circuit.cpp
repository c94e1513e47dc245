/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include "hyqa/circuit.hpp"

#include <numeric>
#include <stdexcept>

namespace hyqa {

namespace {

std::size_t total_size(const std::vector<Register>& regs) {
  return std::accumulate(regs.begin(), regs.end(), std::size_t{0},
                         [](std::size_t acc, const Register& r) { return acc + r.size; });
}

const Register* find_register(const std::vector<Register>& regs, const std::string& name) {
  for (const auto& r : regs) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

std::size_t flat_index(const std::vector<Register>& regs, const BitRef& bit) {
  std::size_t offset = 0;
  for (const auto& r : regs) {
    if (r.name == bit.reg) {
      if (bit.index >= r.size) break;
      return offset + bit.index;
    }
    offset += r.size;
  }
  throw std::out_of_range("unknown bit " + bit.reg + "[" + std::to_string(bit.index) + "]");
}

}  // namespace

const char* to_string(InstructionKind kind) {
  switch (kind) {
    case InstructionKind::Gate: return "gate";
    case InstructionKind::Measure: return "measure";
    case InstructionKind::Reset: return "reset";
    case InstructionKind::Barrier: return "barrier";
  }
  return "unknown";
}

std::size_t QuantumCircuit::num_qubits() const { return total_size(qubit_registers); }
std::size_t QuantumCircuit::num_clbits() const { return total_size(clbit_registers); }

const Register* QuantumCircuit::find_qreg(const std::string& reg) const {
  return find_register(qubit_registers, reg);
}

const Register* QuantumCircuit::find_creg(const std::string& reg) const {
  return find_register(clbit_registers, reg);
}

std::size_t QuantumCircuit::qubit_index(const BitRef& bit) const {
  return flat_index(qubit_registers, bit);
}

std::size_t QuantumCircuit::clbit_index(const BitRef& bit) const {
  return flat_index(clbit_registers, bit);
}

}  // namespace hyqa
