/*
 * SPDX-License-Identifier: Apache-2.0
 */

// Per-circuit measurements for the quantum analysability properties.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hyqa/circuit.hpp"

namespace hyqa {

struct GateComplexity {
  std::size_t total = 0;
  std::size_t single = 0;
  std::size_t multi = 0;
  std::size_t score = 0;  // sum of qubit operands over all gates
};

struct ConditionalMetrics {
  std::size_t conditional_count = 0;
  std::size_t quantum_cyclomatic = 1;
};

struct MeasurementMetrics {
  std::size_t measure_count = 0;
  std::size_t nonterminal_count = 0;
};

struct ResetMetrics {
  std::size_t reset_count = 0;
  std::size_t midcircuit_count = 0;
};

struct QuantumMetricSet {
  std::string circuit_name;
  std::string source_path;
  std::size_t width = 0;
  std::size_t depth = 0;
  std::size_t gate_count_total = 0;
  std::size_t gate_count_single = 0;
  std::size_t gate_count_multi = 0;
  std::size_t gate_complexity_score = 0;
  std::size_t conditional_count = 0;
  std::size_t quantum_cyclomatic = 1;
  std::size_t measure_count = 0;
  std::size_t nonterminal_measure_count = 0;
  std::size_t reset_count = 0;
  std::size_t midcircuit_reset_count = 0;
  std::size_t auxiliary_qubit_count = 0;
  bool gates_expanded = false;

  friend bool operator==(const QuantumMetricSet&, const QuantumMetricSet&) = default;
};

/// Register-name prefixes that mark qubits as auxiliary regardless of usage.
inline const std::vector<std::string> kDefaultAuxiliaryPrefixes = {"anc", "aux"};

std::size_t circuit_width(const QuantumCircuit& circuit);

/// Greedy wire layering. Gates, measures and resets occupy a layer one above
/// the highest wire they touch (qubits, the measured clbit, and every bit of
/// a condition register). Barriers only level their qubits' wires.
std::size_t circuit_depth(const QuantumCircuit& circuit);

GateComplexity gate_complexity(const QuantumCircuit& circuit);
ConditionalMetrics conditional_metrics(const QuantumCircuit& circuit);

/// A measure is nonterminal when a later gate, measure or reset acts on the
/// measured qubit.
MeasurementMetrics measurement_metrics(const QuantumCircuit& circuit);

/// A reset is mid-circuit when a gate or measure precedes it on its qubit.
ResetMetrics reset_metrics(const QuantumCircuit& circuit);

/// Counts qubits that (a) take part in a multi-qubit gate and are never
/// measured while some other qubit is, (b) are the target of a mid-circuit
/// reset, or (c) live in a register whose name starts with one of
/// `prefixes` (case-insensitive).
std::size_t auxiliary_qubits(const QuantumCircuit& circuit,
                             const std::vector<std::string>& prefixes = kDefaultAuxiliaryPrefixes);

QuantumMetricSet compute_quantum_metrics(
    const QuantumCircuit& circuit,
    const std::vector<std::string>& auxiliary_prefixes = kDefaultAuxiliaryPrefixes);

}  // namespace hyqa
