/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include "hyqa/quantum_metrics.hpp"

#include <algorithm>
#include <cctype>

namespace hyqa {

namespace {

bool is_operation(const Instruction& inst) { return inst.kind != InstructionKind::Barrier; }

bool starts_with_ci(std::string_view text, std::string_view prefix) {
  if (prefix.size() > text.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(text[i])) !=
        std::tolower(static_cast<unsigned char>(prefix[i]))) {
      return false;
    }
  }
  return true;
}

// Flags for each qubit marking whether a mid-circuit reset targets it.
std::vector<bool> midcircuit_reset_targets(const QuantumCircuit& circuit) {
  std::vector<bool> touched(circuit.num_qubits(), false);
  std::vector<bool> targets(circuit.num_qubits(), false);
  for (const auto& inst : circuit.instructions) {
    if (inst.kind == InstructionKind::Reset) {
      std::size_t q = circuit.qubit_index(inst.qubits.front());
      if (touched[q]) targets[q] = true;
    } else if (is_operation(inst)) {
      for (const auto& bit : inst.qubits) touched[circuit.qubit_index(bit)] = true;
    }
  }
  return targets;
}

}  // namespace

std::size_t circuit_width(const QuantumCircuit& circuit) { return circuit.num_qubits(); }

std::size_t circuit_depth(const QuantumCircuit& circuit) {
  const std::size_t nq = circuit.num_qubits();
  // Qubit wires first, then classical wires.
  std::vector<std::size_t> layer(nq + circuit.num_clbits(), 0);
  std::vector<std::size_t> wires;

  for (const auto& inst : circuit.instructions) {
    wires.clear();
    for (const auto& bit : inst.qubits) wires.push_back(circuit.qubit_index(bit));
    if (inst.kind == InstructionKind::Barrier) {
      std::size_t level = 0;
      for (auto w : wires) level = std::max(level, layer[w]);
      for (auto w : wires) layer[w] = level;
      continue;
    }
    for (const auto& bit : inst.clbits) wires.push_back(nq + circuit.clbit_index(bit));
    if (inst.condition) {
      const Register* reg = circuit.find_creg(inst.condition->reg);
      for (std::size_t k = 0; reg && k < reg->size; ++k) {
        wires.push_back(nq + circuit.clbit_index({reg->name, k}));
      }
    }
    std::size_t level = 0;
    for (auto w : wires) level = std::max(level, layer[w]);
    ++level;
    for (auto w : wires) layer[w] = level;
  }
  return layer.empty() ? 0 : *std::max_element(layer.begin(), layer.end());
}

GateComplexity gate_complexity(const QuantumCircuit& circuit) {
  GateComplexity out;
  for (const auto& inst : circuit.instructions) {
    if (inst.kind != InstructionKind::Gate) continue;
    ++out.total;
    if (inst.qubits.size() >= 2) {
      ++out.multi;
    } else {
      ++out.single;
    }
    out.score += inst.qubits.size();
  }
  return out;
}

ConditionalMetrics conditional_metrics(const QuantumCircuit& circuit) {
  ConditionalMetrics out;
  out.conditional_count = static_cast<std::size_t>(
      std::count_if(circuit.instructions.begin(), circuit.instructions.end(),
                    [](const Instruction& inst) { return inst.condition.has_value(); }));
  out.quantum_cyclomatic = out.conditional_count + 1;
  return out;
}

MeasurementMetrics measurement_metrics(const QuantumCircuit& circuit) {
  MeasurementMetrics out;
  // Walk backwards so "something happens later on this wire" is a flag.
  std::vector<bool> used_later(circuit.num_qubits(), false);
  for (auto it = circuit.instructions.rbegin(); it != circuit.instructions.rend(); ++it) {
    if (!is_operation(*it)) continue;
    if (it->kind == InstructionKind::Measure) {
      ++out.measure_count;
      if (used_later[circuit.qubit_index(it->qubits.front())]) ++out.nonterminal_count;
    }
    for (const auto& bit : it->qubits) used_later[circuit.qubit_index(bit)] = true;
  }
  return out;
}

ResetMetrics reset_metrics(const QuantumCircuit& circuit) {
  ResetMetrics out;
  std::vector<bool> touched(circuit.num_qubits(), false);
  for (const auto& inst : circuit.instructions) {
    if (inst.kind == InstructionKind::Reset) {
      ++out.reset_count;
      if (touched[circuit.qubit_index(inst.qubits.front())]) ++out.midcircuit_count;
    } else if (is_operation(inst)) {
      for (const auto& bit : inst.qubits) touched[circuit.qubit_index(bit)] = true;
    }
  }
  return out;
}

std::size_t auxiliary_qubits(const QuantumCircuit& circuit,
                             const std::vector<std::string>& prefixes) {
  const std::size_t nq = circuit.num_qubits();
  std::vector<bool> in_multi(nq, false);
  std::vector<bool> measured(nq, false);
  for (const auto& inst : circuit.instructions) {
    if (inst.kind == InstructionKind::Gate && inst.qubits.size() >= 2) {
      for (const auto& bit : inst.qubits) in_multi[circuit.qubit_index(bit)] = true;
    } else if (inst.kind == InstructionKind::Measure) {
      measured[circuit.qubit_index(inst.qubits.front())] = true;
    }
  }
  const bool any_measured = std::find(measured.begin(), measured.end(), true) != measured.end();
  std::vector<bool> aux = midcircuit_reset_targets(circuit);
  for (std::size_t q = 0; q < nq; ++q) {
    if (any_measured && in_multi[q] && !measured[q]) aux[q] = true;
  }

  std::size_t offset = 0;
  for (const auto& reg : circuit.qubit_registers) {
    bool named = std::any_of(prefixes.begin(), prefixes.end(),
                             [&](const std::string& p) { return starts_with_ci(reg.name, p); });
    if (named) {
      for (std::size_t k = 0; k < reg.size; ++k) aux[offset + k] = true;
    }
    offset += reg.size;
  }
  return static_cast<std::size_t>(std::count(aux.begin(), aux.end(), true));
}

QuantumMetricSet compute_quantum_metrics(const QuantumCircuit& circuit,
                                         const std::vector<std::string>& auxiliary_prefixes) {
  QuantumMetricSet m;
  m.circuit_name = circuit.name;
  m.source_path = circuit.source_path;
  m.gates_expanded = circuit.gates_expanded;
  m.width = circuit_width(circuit);
  m.depth = circuit_depth(circuit);

  GateComplexity gates = gate_complexity(circuit);
  m.gate_count_total = gates.total;
  m.gate_count_single = gates.single;
  m.gate_count_multi = gates.multi;
  m.gate_complexity_score = gates.score;

  ConditionalMetrics cond = conditional_metrics(circuit);
  m.conditional_count = cond.conditional_count;
  m.quantum_cyclomatic = cond.quantum_cyclomatic;

  MeasurementMetrics meas = measurement_metrics(circuit);
  m.measure_count = meas.measure_count;
  m.nonterminal_measure_count = meas.nonterminal_count;

  ResetMetrics resets = reset_metrics(circuit);
  m.reset_count = resets.reset_count;
  m.midcircuit_reset_count = resets.midcircuit_count;

  m.auxiliary_qubit_count = auxiliary_qubits(circuit, auxiliary_prefixes);
  return m;
}

}  // namespace hyqa
