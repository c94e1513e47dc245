/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include "hyqa/project.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>
#include <variant>

#include "hyqa/qasm.hpp"

namespace hyqa {

namespace fs = std::filesystem;

namespace {

bool is_hidden(const fs::path& p) {
  const auto name = p.filename().string();
  return name.size() > 1 && name.front() == '.';
}

void walk(const fs::path& root, const fs::path& dir, const ModelConfig& config,
          ProjectInventory& inv) {
  std::error_code ec;
  fs::directory_iterator it(dir, fs::directory_options::none, ec);
  const std::string rel_dir = fs::relative(dir, root).generic_string();
  if (ec) {
    inv.skipped.push_back({rel_dir, "unreadable directory: " + ec.message()});
    return;
  }

  std::vector<fs::directory_entry> entries;
  for (; it != fs::directory_iterator(); it.increment(ec)) {
    if (ec) {
      inv.skipped.push_back({rel_dir, "directory listing failed: " + ec.message()});
      break;
    }
    entries.push_back(*it);
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.path().filename() < b.path().filename(); });

  for (const auto& entry : entries) {
    const fs::path& p = entry.path();
    const std::string rel = fs::relative(p, root).generic_string();
    std::error_code sec;
    if (entry.is_symlink(sec)) continue;
    if (entry.is_directory(sec)) {
      const std::string name = p.filename().string();
      const auto& ignored = config.ignore_directories;
      if (std::find(ignored.begin(), ignored.end(), name) != ignored.end()) {
        inv.skipped.push_back({rel, "ignored directory"});
      } else if (is_hidden(p)) {
        inv.skipped.push_back({rel, "hidden directory"});
      } else {
        walk(root, p, config, inv);
      }
      continue;
    }
    if (!entry.is_regular_file(sec)) continue;
    const std::string ext = p.extension().string();
    if (ext == ".qasm") {
      inv.circuit_files.push_back(rel);
    } else {
      const auto& exts = config.classical_extensions;
      if (std::find(exts.begin(), exts.end(), ext) != exts.end()) inv.classical_files.push_back(rel);
    }
  }
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return buffer.str();
}

using CircuitOutcome = std::variant<QuantumCircuit, Diagnostic>;
using ClassicalOutcome = std::variant<ClassicalFileFacts, Diagnostic>;

CircuitOutcome load_circuit(const fs::path& root, const std::string& rel, bool expand) {
  auto text = read_file(root / rel);
  if (!text) return Diagnostic{rel, std::nullopt, "cannot read file"};
  try {
    QuantumCircuit circuit = parse_qasm(*text, rel);
    if (expand) circuit = expand_user_gates(circuit);
    return circuit;
  } catch (const QasmError& e) {
    return Diagnostic{rel, e.span(), std::string(to_string(e.kind())) + ": " + e.detail()};
  }
}

ClassicalOutcome load_classical(const fs::path& root, const std::string& rel,
                                const DecisionRules& rules) {
  auto text = read_file(root / rel);
  if (!text) return Diagnostic{rel, std::nullopt, "cannot read file"};
  try {
    return analyze_source(*text, rel, rules);
  } catch (const NotTextError&) {
    return Diagnostic{rel, std::nullopt, "NotText: file is not UTF-8 text"};
  }
}

// Runs `job(i)` for i in [0, n) on a small worker pool.
template <typename Job>
void parallel_for(std::size_t n, unsigned workers, Job job) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) job(i);
    });
  }
}

}  // namespace

ProjectInventory scan(const fs::path& root, const ModelConfig& config) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw ScanError("not a directory: " + root.string());
  }
  ProjectInventory inv;
  inv.root = root;
  walk(root, root, config, inv);
  std::sort(inv.circuit_files.begin(), inv.circuit_files.end());
  std::sort(inv.classical_files.begin(), inv.classical_files.end());
  std::sort(inv.skipped.begin(), inv.skipped.end(),
            [](const auto& a, const auto& b) { return a.path < b.path; });
  return inv;
}

IngestResult ingest(const ProjectInventory& inventory, const IngestOptions& options) {
  std::vector<std::optional<CircuitOutcome>> circuits(inventory.circuit_files.size());
  std::vector<std::optional<ClassicalOutcome>> classical(inventory.classical_files.size());
  const std::size_t nc = circuits.size();

  parallel_for(nc + classical.size(), options.worker_threads, [&](std::size_t i) {
    if (i < nc) {
      circuits[i] = load_circuit(inventory.root, inventory.circuit_files[i], options.expand_gates);
    } else {
      classical[i - nc] = load_classical(inventory.root, inventory.classical_files[i - nc],
                                         options.decision_rules);
    }
  });

  IngestResult result;
  for (auto& outcome : circuits) {
    if (auto* c = std::get_if<QuantumCircuit>(&*outcome)) {
      result.circuits.push_back(std::move(*c));
    } else {
      result.diagnostics.push_back(std::get<Diagnostic>(std::move(*outcome)));
    }
  }
  for (auto& outcome : classical) {
    if (auto* f = std::get_if<ClassicalFileFacts>(&*outcome)) {
      result.classical.push_back(std::move(*f));
    } else {
      result.diagnostics.push_back(std::get<Diagnostic>(std::move(*outcome)));
    }
  }
  std::stable_sort(result.diagnostics.begin(), result.diagnostics.end(),
                   [](const auto& a, const auto& b) { return a.path < b.path; });
  return result;
}

}  // namespace hyqa
