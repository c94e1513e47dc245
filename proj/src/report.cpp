/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include "hyqa/report.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "hyqa/errors.hpp"

#ifndef HYQA_VERSION
#define HYQA_VERSION "0.0.0"
#endif

namespace hyqa {

namespace {

using nlohmann::json;

double circuit_metric(const QuantumMetricSet& m, const std::string& metric) {
  if (metric == "width") return static_cast<double>(m.width);
  if (metric == "depth") return static_cast<double>(m.depth);
  if (metric == "gate_count_total") return static_cast<double>(m.gate_count_total);
  if (metric == "gate_count_single") return static_cast<double>(m.gate_count_single);
  if (metric == "gate_count_multi") return static_cast<double>(m.gate_count_multi);
  if (metric == "gate_complexity_score") return static_cast<double>(m.gate_complexity_score);
  if (metric == "conditional_count") return static_cast<double>(m.conditional_count);
  if (metric == "quantum_cyclomatic") return static_cast<double>(m.quantum_cyclomatic);
  if (metric == "measure_count") return static_cast<double>(m.measure_count);
  if (metric == "nonterminal_measure_count") return static_cast<double>(m.nonterminal_measure_count);
  if (metric == "reset_count") return static_cast<double>(m.reset_count);
  if (metric == "midcircuit_reset_count") return static_cast<double>(m.midcircuit_reset_count);
  if (metric == "auxiliary_qubit_count") return static_cast<double>(m.auxiliary_qubit_count);
  throw ConfigError("not a circuit metric: " + metric);
}

json nullable(bool present, double value) { return present ? json(round6(value)) : json(nullptr); }

}  // namespace

const char* tool_version() { return HYQA_VERSION; }

double round6(double value) {
  double r = std::round(value * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;  // no negative zero
}

std::vector<MetricRecord> collect_records(const PropertyConfig& property,
                                          const std::vector<QuantumMetricSet>& circuits,
                                          const std::vector<ClassicalMetricSet>& classical) {
  std::vector<MetricRecord> records;
  const auto scope = metric_scope(property.metric);
  if (!scope) throw ConfigError("unknown metric '" + property.metric + "'");

  switch (*scope) {
    case ArtifactScope::Circuit:
      for (const auto& c : circuits) {
        records.push_back({c.source_path, property.metric, circuit_metric(c, property.metric)});
      }
      break;
    case ArtifactScope::Function:
      for (const auto& f : classical) {
        const auto& values =
            property.metric == "cyclomatic" ? f.function_complexities : f.function_sizes;
        for (const auto& v : values) {
          records.push_back({f.path + "::" + v.name + ":" + std::to_string(v.start_line),
                             property.metric, static_cast<double>(v.value)});
        }
      }
      break;
    case ArtifactScope::File:
      for (const auto& f : classical) {
        if (f.comment_lines + f.code_lines == 0) continue;
        double value = property.metric == "comment_deficit_percent"
                           ? 100.0 * (1.0 - f.comment_density)
                           : 100.0 * f.duplicate_token_ratio;
        records.push_back({f.path, property.metric, value});
      }
      break;
  }
  return records;
}

std::vector<PropertyEvaluation> evaluate_properties(const ModelConfig& config,
                                                    const std::vector<QuantumMetricSet>& circuits,
                                                    const std::vector<ClassicalMetricSet>& classical) {
  std::vector<PropertyEvaluation> out;
  for (const PropertyConfig* p : config.enabled_properties()) {
    auto records = collect_records(*p, circuits, classical);
    PropertyEvaluation eval = evaluate_property(p->name, records, p->thresholds, p->bands);
    eval.metric = p->metric;
    eval.weight = p->weight;
    out.push_back(std::move(eval));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.property_name < b.property_name; });
  return out;
}

AnalysabilityReport build_report(const ProjectInventory& inventory, const IngestResult& ingested,
                                 const ModelConfig& config) {
  AnalysabilityReport report;
  report.project_path = inventory.root.generic_string();
  report.tool_version = tool_version();
  report.config_fingerprint = config.fingerprint();

  for (const auto& c : ingested.circuits) {
    report.circuits.push_back(compute_quantum_metrics(c, config.auxiliary_register_prefixes));
  }
  std::sort(report.circuits.begin(), report.circuits.end(),
            [](const auto& a, const auto& b) { return a.source_path < b.source_path; });

  report.classical_files = compute_classical_metrics(ingested.classical, config.duplicate_shingle_size);
  std::sort(report.classical_files.begin(), report.classical_files.end(),
            [](const auto& a, const auto& b) { return a.path < b.path; });

  report.properties = evaluate_properties(config, report.circuits, report.classical_files);

  report.diagnostics = ingested.diagnostics;
  for (const auto& s : inventory.skipped) {
    report.diagnostics.push_back({s.path, std::nullopt, "skipped: " + s.reason});
  }
  std::stable_sort(report.diagnostics.begin(), report.diagnostics.end(),
                   [](const auto& a, const auto& b) { return a.path < b.path; });

  Analysability result = aggregate(report.properties, config.level_cut_points);
  report.analysability_value = result.value;
  report.analysability_level = result.level;
  return report;
}

std::string render_json(const AnalysabilityReport& report) {
  json circuits = json::array();
  for (const auto& c : report.circuits) {
    circuits.push_back({
        {"path", c.source_path},
        {"name", c.circuit_name},
        {"width", c.width},
        {"depth", c.depth},
        {"gate_count_total", c.gate_count_total},
        {"gate_count_single", c.gate_count_single},
        {"gate_count_multi", c.gate_count_multi},
        {"gate_complexity_score", c.gate_complexity_score},
        {"conditional_count", c.conditional_count},
        {"quantum_cyclomatic", c.quantum_cyclomatic},
        {"measure_count", c.measure_count},
        {"nonterminal_measure_count", c.nonterminal_measure_count},
        {"reset_count", c.reset_count},
        {"midcircuit_reset_count", c.midcircuit_reset_count},
        {"auxiliary_qubit_count", c.auxiliary_qubit_count},
        {"gates_expanded", c.gates_expanded},
    });
  }

  json files = json::array();
  for (const auto& f : report.classical_files) {
    json functions = json::array();
    for (std::size_t i = 0; i < f.function_complexities.size(); ++i) {
      functions.push_back({
          {"name", f.function_complexities[i].name},
          {"start_line", f.function_complexities[i].start_line},
          {"cyclomatic", f.function_complexities[i].value},
          {"code_lines", f.function_sizes.at(i).value},
      });
    }
    files.push_back({
        {"path", f.path},
        {"comment_lines", f.comment_lines},
        {"code_lines", f.code_lines},
        {"comment_density", round6(f.comment_density)},
        {"duplicate_ratio", round6(f.duplicate_token_ratio)},
        {"functions", functions},
    });
  }

  json properties = json::array();
  for (const auto& p : report.properties) {
    properties.push_back({
        {"name", p.property_name},
        {"metric", p.metric},
        {"weight", round6(p.weight)},
        {"applicable", p.applicable},
        {"n_total", p.n_total},
        {"nc1", p.nc1},
        {"nc2", p.nc2},
        {"nc3", p.nc3},
        {"dc1", nullable(p.applicable, p.dc1)},
        {"dc2", nullable(p.applicable, p.dc2)},
        {"dc3", nullable(p.applicable, p.dc3)},
        {"band", p.applicable ? json(p.band) : json(nullptr)},
        {"quality", nullable(p.applicable, p.quality)},
    });
  }

  json diagnostics = json::array();
  for (const auto& d : report.diagnostics) {
    diagnostics.push_back({
        {"path", d.path},
        {"line", d.span ? json(d.span->line) : json(nullptr)},
        {"column", d.span ? json(d.span->column) : json(nullptr)},
        {"message", d.message},
    });
  }

  json doc = {
      {"tool_version", report.tool_version},
      {"config_fingerprint", report.config_fingerprint},
      {"project", report.project_path},
      {"circuits", circuits},
      {"classical_files", files},
      {"properties", properties},
      {"analysability_value", round6(report.analysability_value)},
      {"analysability_level", report.analysability_level},
      {"diagnostics", diagnostics},
  };
  return doc.dump(2) + "\n";
}

std::string render_text(const AnalysabilityReport& report) {
  std::string out;
  out += fmt::format("Analysability report: {}\n", report.project_path);
  out += fmt::format("hyqa {}  config {}\n", report.tool_version,
                     report.config_fingerprint.substr(0, 12));
  out += fmt::format("{} circuit(s), {} classical file(s)\n\n", report.circuits.size(),
                     report.classical_files.size());

  out += fmt::format("{:<31} {:>5} {:>14} {:>18} {:>4} {:>8}\n", "property", "n",
                     "NC 1/2/3", "DC% 1/2/3", "band", "quality");
  for (const auto& p : report.properties) {
    const std::string nc = fmt::format("{}/{}/{}", p.nc1, p.nc2, p.nc3);
    if (!p.applicable) {
      out += fmt::format("{:<31} {:>5} {:>14} {:>18} {:>4} {:>8}\n", p.property_name, p.n_total,
                         nc, "-", "-", "n/a");
      continue;
    }
    const std::string dc = fmt::format("{:.1f}/{:.1f}/{:.1f}", p.dc1, p.dc2, p.dc3);
    out += fmt::format("{:<31} {:>5} {:>14} {:>18} {:>4} {:>8.2f}\n", p.property_name, p.n_total,
                       nc, dc, p.band, p.quality);
  }
  out += fmt::format("\nanalysability value: {:.2f}\n", report.analysability_value);
  out += fmt::format("analysability level: {} of 5\n", report.analysability_level);

  if (!report.diagnostics.empty()) {
    out += "\ndiagnostics:\n";
    for (const auto& d : report.diagnostics) {
      if (d.span) {
        out += fmt::format("  {}:{}:{}: {}\n", d.path, d.span->line, d.span->column, d.message);
      } else {
        out += fmt::format("  {}: {}\n", d.path, d.message);
      }
    }
  }
  return out;
}

}  // namespace hyqa
