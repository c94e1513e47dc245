/*
 * SPDX-License-Identifier: Apache-2.0
 */

// Project discovery and ingestion.

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyqa/circuit.hpp"
#include "hyqa/classical_source.hpp"
#include "hyqa/model_config.hpp"

namespace hyqa {

class ScanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SkippedEntry {
  std::string path;  // relative to the project root, generic separators
  std::string reason;

  friend bool operator==(const SkippedEntry&, const SkippedEntry&) = default;
};

/// File lists are relative to `root`, with '/' separators, sorted
/// lexicographically.
struct ProjectInventory {
  std::filesystem::path root;
  std::vector<std::string> circuit_files;
  std::vector<std::string> classical_files;
  std::vector<SkippedEntry> skipped;
};

/// Recursive walk. `.qasm` files are circuits; files with a configured
/// classical extension are classical sources. Hidden and ignored
/// directories are skipped and recorded; symlinks are not followed.
/// Unreadable subtrees are recorded as skipped. Throws ScanError when `root`
/// is not a readable directory.
ProjectInventory scan(const std::filesystem::path& root, const ModelConfig& config);

struct Diagnostic {
  std::string path;
  std::optional<SourceSpan> span;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct IngestOptions {
  bool expand_gates = false;
  DecisionRules decision_rules;
  unsigned worker_threads = 0;  // 0 picks hardware concurrency
};

struct IngestResult {
  std::vector<QuantumCircuit> circuits;
  std::vector<ClassicalFileFacts> classical;
  std::vector<Diagnostic> diagnostics;
};

/// Parses every inventoried file. Files that fail to read or parse are left
/// out and reported as diagnostics. Output order follows the inventory.
IngestResult ingest(const ProjectInventory& inventory, const IngestOptions& options = {});

}  // namespace hyqa
