/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include "hyqa/model_config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "hyqa/errors.hpp"

namespace hyqa {

namespace {

using nlohmann::json;

struct MetricInfo {
  std::string_view name;
  ArtifactScope scope;
};

constexpr MetricInfo kMetrics[] = {
    {"width", ArtifactScope::Circuit},
    {"depth", ArtifactScope::Circuit},
    {"gate_count_total", ArtifactScope::Circuit},
    {"gate_count_single", ArtifactScope::Circuit},
    {"gate_count_multi", ArtifactScope::Circuit},
    {"gate_complexity_score", ArtifactScope::Circuit},
    {"conditional_count", ArtifactScope::Circuit},
    {"quantum_cyclomatic", ArtifactScope::Circuit},
    {"measure_count", ArtifactScope::Circuit},
    {"nonterminal_measure_count", ArtifactScope::Circuit},
    {"reset_count", ArtifactScope::Circuit},
    {"midcircuit_reset_count", ArtifactScope::Circuit},
    {"auxiliary_qubit_count", ArtifactScope::Circuit},
    {"cyclomatic", ArtifactScope::Function},
    {"code_lines", ArtifactScope::Function},
    {"comment_deficit_percent", ArtifactScope::File},
    {"duplicate_percent", ArtifactScope::File},
};

struct PropertyDefault {
  const char* name;
  const char* metric;
  double level3_max;
  double level2_max;
};

// circuit_width carries the reference model values. The rest are tool
// defaults, to be overridden by calibrated configurations.
constexpr PropertyDefault kPropertyDefaults[] = {
    {"circuit_width", "width", 8, 15},
    {"circuit_depth", "depth", 25, 60},
    {"gate_complexity", "gate_complexity_score", 30, 100},
    {"conditional_instructions", "conditional_count", 0, 2},
    {"quantum_cyclomatic_complexity", "quantum_cyclomatic", 2, 4},
    {"measurement_operations", "nonterminal_measure_count", 0, 1},
    {"initialization_reset", "midcircuit_reset_count", 0, 2},
    {"auxiliary_qubits", "auxiliary_qubit_count", 2, 4},
    {"cyclomatic_complexity", "cyclomatic", 10, 20},
    {"method_size", "code_lines", 30, 60},
    {"code_documentation", "comment_deficit_percent", 40, 75},
    {"duplicate_code", "duplicate_percent", 5, 15},
};

[[noreturn]] void unknown_key(const std::string& where, const std::string& key) {
  throw ConfigError("unknown configuration key '" + key + "' in " + where);
}

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
}

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + " must be a number");
  return j.get<double>();
}

std::vector<std::string> strings_at(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw ConfigError(where + " must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

void apply_property(const json& entry, PropertyConfig& prop) {
  const std::string where = "properties." + prop.name;
  require_object(entry, where);
  for (const auto& [key, value] : entry.items()) {
    if (key == "enabled") {
      if (!value.is_boolean()) throw ConfigError(where + ".enabled must be a boolean");
      prop.enabled = value.get<bool>();
    } else if (key == "metric") {
      if (!value.is_string()) throw ConfigError(where + ".metric must be a string");
      prop.metric = value.get<std::string>();
    } else if (key == "weight") {
      prop.weight = number_at(value, where + ".weight");
    } else if (key == "thresholds") {
      require_object(value, where + ".thresholds");
      for (const auto& [tkey, tvalue] : value.items()) {
        if (tkey == "level3_max") {
          prop.thresholds.level3_max = number_at(tvalue, where + ".thresholds.level3_max");
        } else if (tkey == "level2_max") {
          prop.thresholds.level2_max = number_at(tvalue, where + ".thresholds.level2_max");
        } else {
          unknown_key(where + ".thresholds", tkey);
        }
      }
    } else if (key == "bands") {
      if (!value.is_array() || value.size() != 4) {
        throw ConfigError(where + ".bands must be an array of 4 {t1, t2} objects (bands 1..4)");
      }
      std::array<std::array<double, 2>, 4> limits{};
      for (std::size_t i = 0; i < 4; ++i) {
        const std::string bw = where + ".bands[" + std::to_string(i) + "]";
        require_object(value[i], bw);
        bool has_t1 = false;
        bool has_t2 = false;
        for (const auto& [bkey, bvalue] : value[i].items()) {
          if (bkey == "t1") {
            limits[i][0] = number_at(bvalue, bw + ".t1");
            has_t1 = true;
          } else if (bkey == "t2") {
            limits[i][1] = number_at(bvalue, bw + ".t2");
            has_t2 = true;
          } else {
            unknown_key(bw, bkey);
          }
        }
        if (!has_t1 || !has_t2) throw ConfigError(bw + " requires both t1 and t2");
      }
      prop.bands = ProfileBands::with_thresholds(prop.name, limits);
    } else {
      unknown_key(where, key);
    }
  }
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0x0F];
  }
  return out;
}

}  // namespace

const char* to_string(ArtifactScope scope) {
  switch (scope) {
    case ArtifactScope::Circuit: return "circuit";
    case ArtifactScope::Function: return "function";
    case ArtifactScope::File: return "file";
  }
  return "unknown";
}

std::optional<ArtifactScope> metric_scope(std::string_view metric) {
  for (const auto& m : kMetrics) {
    if (m.name == metric) return m.scope;
  }
  return std::nullopt;
}

std::vector<std::string> metric_names() {
  std::vector<std::string> out;
  for (const auto& m : kMetrics) out.emplace_back(m.name);
  std::sort(out.begin(), out.end());
  return out;
}

ModelConfig ModelConfig::defaults() {
  ModelConfig cfg;
  for (const auto& d : kPropertyDefaults) {
    PropertyConfig prop;
    prop.name = d.name;
    prop.metric = d.metric;
    prop.thresholds = {d.name, d.level3_max, d.level2_max};
    prop.bands = ProfileBands::circuit_width();
    prop.bands.property_name = d.name;
    cfg.properties.emplace(prop.name, std::move(prop));
  }
  return cfg;
}

ModelConfig ModelConfig::from_json(const json& doc) {
  ModelConfig cfg = defaults();
  try {
    require_object(doc, "configuration");
    for (const auto& [key, value] : doc.items()) {
      if (key == "properties") {
        require_object(value, "properties");
        for (const auto& [name, entry] : value.items()) {
          if (std::find(kReservedProperties.begin(), kReservedProperties.end(), name) !=
              kReservedProperties.end()) {
            require_object(entry, "properties." + name);
            for (const auto& [rkey, rvalue] : entry.items()) {
              if (rkey != "enabled") unknown_key("properties." + name, rkey);
              if (!rvalue.is_boolean() || rvalue.get<bool>()) {
                throw ConfigError("property '" + name +
                                  "' has no metric implementation and can only be disabled");
              }
            }
            continue;
          }
          auto it = cfg.properties.find(name);
          if (it == cfg.properties.end()) unknown_key("properties", name);
          apply_property(entry, it->second);
        }
      } else if (key == "level_cut_points") {
        if (!value.is_array()) throw ConfigError("level_cut_points must be an array of numbers");
        cfg.level_cut_points.clear();
        for (const auto& v : value) cfg.level_cut_points.push_back(number_at(v, "level_cut_points"));
      } else if (key == "auxiliary_register_prefixes") {
        cfg.auxiliary_register_prefixes = strings_at(value, key);
      } else if (key == "duplicate_shingle_size") {
        if (!value.is_number_integer() || value.get<long long>() < 0) {
          throw ConfigError("duplicate_shingle_size must be a non-negative integer");
        }
        cfg.duplicate_shingle_size = value.get<std::size_t>();
      } else if (key == "classical_extensions") {
        cfg.classical_extensions = strings_at(value, key);
      } else if (key == "ignore_directories") {
        cfg.ignore_directories = strings_at(value, key);
      } else if (key == "decision_keywords") {
        cfg.decision_rules.keywords = strings_at(value, key);
      } else if (key == "count_case_arms") {
        if (!value.is_boolean()) throw ConfigError("count_case_arms must be a boolean");
        cfg.decision_rules.count_case_arms = value.get<bool>();
      } else {
        unknown_key("configuration", key);
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

json ModelConfig::to_json() const {
  json props = json::object();
  for (const auto& [name, p] : properties) {
    json bands = json::array();
    for (const auto& b : p.bands.bands) bands.push_back({{"t1", b.t1}, {"t2", b.t2}});
    props[name] = {
        {"enabled", p.enabled},
        {"metric", p.metric},
        {"weight", p.weight},
        {"thresholds",
         {{"level3_max", p.thresholds.level3_max}, {"level2_max", p.thresholds.level2_max}}},
        {"bands", bands},
    };
  }
  return {
      {"properties", props},
      {"level_cut_points", level_cut_points},
      {"auxiliary_register_prefixes", auxiliary_register_prefixes},
      {"duplicate_shingle_size", duplicate_shingle_size},
      {"classical_extensions", classical_extensions},
      {"ignore_directories", ignore_directories},
      {"decision_keywords", decision_rules.keywords},
      {"count_case_arms", decision_rules.count_case_arms},
  };
}

std::string ModelConfig::fingerprint() const { return sha256_hex(to_json().dump()); }

void ModelConfig::validate() const {
  double weight_sum = 0.0;
  bool any_enabled = false;
  for (const auto& [name, p] : properties) {
    if (!p.enabled) continue;
    any_enabled = true;
    if (!metric_scope(p.metric)) {
      throw ConfigError("property '" + name + "' selects unknown metric '" + p.metric + "'");
    }
    if (!(p.weight >= 0.0)) throw ConfigError("property '" + name + "' has a negative weight");
    weight_sum += p.weight;
    p.thresholds.validate();
    p.bands.validate();
  }
  if (!any_enabled) throw ConfigError("no property is enabled");
  if (weight_sum <= 0.0) throw ConfigError("weights of enabled properties are all zero");

  if (level_cut_points.size() != 4) {
    throw ConfigError("level_cut_points must hold exactly 4 values");
  }
  for (std::size_t i = 0; i < level_cut_points.size(); ++i) {
    double c = level_cut_points[i];
    if (!(c > 0.0 && c < 100.0)) throw ConfigError("level_cut_points must lie in (0, 100)");
    if (i > 0 && !(level_cut_points[i - 1] < c)) {
      throw ConfigError("level_cut_points must be strictly ascending");
    }
  }
  if (duplicate_shingle_size < 2) throw ConfigError("duplicate_shingle_size must be at least 2");
  if (classical_extensions.empty()) throw ConfigError("classical_extensions must not be empty");
  for (const auto& ext : classical_extensions) {
    if (ext.size() < 2 || ext.front() != '.') {
      throw ConfigError("classical extension '" + ext + "' must start with '.'");
    }
    if (ext == ".qasm") throw ConfigError("'.qasm' is reserved for circuit files");
  }
}

std::vector<const PropertyConfig*> ModelConfig::enabled_properties() const {
  std::vector<const PropertyConfig*> out;
  for (const auto& [name, p] : properties) {
    if (p.enabled) out.push_back(&p);
  }
  return out;
}

ModelConfig load_model_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("configuration file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return ModelConfig::from_json(doc);
}

}  // namespace hyqa
