/*
 * SPDX-License-Identifier: Apache-2.0
 */

// Configuration of the analysability model: which properties are evaluated,
// the metric feeding each one, severity thresholds, profile bands, weights,
// and the scanner/frontend tuning knobs.

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hyqa/classical_source.hpp"
#include "hyqa/scoring.hpp"

namespace hyqa {

/// What kind of artifact a metric is measured on. The property's artifact
/// count (the density denominator) is the number of such artifacts.
enum class ArtifactScope { Circuit, Function, File };

const char* to_string(ArtifactScope scope);

/// Scope of a selectable metric name, or nullopt for unknown names.
std::optional<ArtifactScope> metric_scope(std::string_view metric);

/// All selectable metric names, sorted.
std::vector<std::string> metric_names();

struct PropertyConfig {
  std::string name;
  bool enabled = true;
  std::string metric;
  double weight = 1.0;
  SeverityThresholds thresholds;
  ProfileBands bands;

  friend bool operator==(const PropertyConfig&, const PropertyConfig&) = default;
};

struct ModelConfig {
  std::map<std::string, PropertyConfig> properties;
  std::vector<double> level_cut_points = kDefaultLevelCutPoints;
  std::vector<std::string> auxiliary_register_prefixes = {"anc", "aux"};
  std::size_t duplicate_shingle_size = 30;
  std::vector<std::string> classical_extensions = {".py"};
  std::vector<std::string> ignore_directories = {"venv", "node_modules", ".git", "build", "target"};
  DecisionRules decision_rules;

  /// Shipped defaults: circuit width uses the reference thresholds and
  /// profile; every other property uses tool defaults.
  static ModelConfig defaults();

  /// Overlays a JSON document on the defaults. Unknown keys are rejected.
  /// Throws ConfigError.
  static ModelConfig from_json(const nlohmann::json& doc);

  /// Complete effective configuration with stable keys.
  nlohmann::json to_json() const;

  /// SHA-256 (hex) of the canonical effective configuration.
  std::string fingerprint() const;

  /// Throws ConfigError on the first violated invariant.
  void validate() const;

  std::vector<const PropertyConfig*> enabled_properties() const;
};

/// Reads and parses a JSON configuration file. Throws ConfigError.
ModelConfig load_model_config(const std::filesystem::path& path);

/// Property names reserved for model properties that have no metric
/// implementation. They may appear in a configuration only as disabled.
inline const std::vector<std::string> kReservedProperties = {"coding_rules",
                                                             "package_class_structuring"};

}  // namespace hyqa
