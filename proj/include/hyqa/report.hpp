/*
 * SPDX-License-Identifier: Apache-2.0
 */

// Project evaluation and report rendering.

#pragma once

#include <string>
#include <vector>

#include "hyqa/classical_metrics.hpp"
#include "hyqa/model_config.hpp"
#include "hyqa/project.hpp"
#include "hyqa/quantum_metrics.hpp"
#include "hyqa/scoring.hpp"

namespace hyqa {

const char* tool_version();

struct AnalysabilityReport {
  std::string project_path;
  std::vector<QuantumMetricSet> circuits;          // by source path
  std::vector<ClassicalMetricSet> classical_files;  // by path
  std::vector<PropertyEvaluation> properties;      // every enabled property, by name
  double analysability_value = 0.0;
  int analysability_level = 1;
  std::string config_fingerprint;
  std::string tool_version;
  std::vector<Diagnostic> diagnostics;
};

/// Records feeding `property`: one per circuit, function or file depending
/// on the selected metric. Files without comment or code lines contribute no
/// file-scope records.
std::vector<MetricRecord> collect_records(const PropertyConfig& property,
                                          const std::vector<QuantumMetricSet>& circuits,
                                          const std::vector<ClassicalMetricSet>& classical);

/// Evaluates every enabled property (inapplicable ones included, flagged).
std::vector<PropertyEvaluation> evaluate_properties(const ModelConfig& config,
                                                    const std::vector<QuantumMetricSet>& circuits,
                                                    const std::vector<ClassicalMetricSet>& classical);

/// Computes all metrics for the ingested project and scores them. Skipped
/// inventory entries are appended to the diagnostics. Throws
/// NoApplicablePropertiesError when nothing can be aggregated.
AnalysabilityReport build_report(const ProjectInventory& inventory, const IngestResult& ingested,
                                 const ModelConfig& config);

/// Canonical JSON: sorted keys, no timestamps, fractional values rounded to
/// 6 digits. Ends with a newline.
std::string render_json(const AnalysabilityReport& report);

/// Human-readable summary table.
std::string render_text(const AnalysabilityReport& report);

/// Rounds to 6 fractional digits, as used for every fractional JSON field.
double round6(double value);

}  // namespace hyqa
