/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "hyqa/errors.hpp"
#include "hyqa/model_config.hpp"

namespace hyqa {
namespace {

using nlohmann::json;

TEST(ModelConfigDefaults, CircuitWidthUsesReferenceValues) {
  auto cfg = ModelConfig::defaults();
  const auto& width = cfg.properties.at("circuit_width");
  EXPECT_TRUE(width.enabled);
  EXPECT_EQ(width.metric, "width");
  EXPECT_DOUBLE_EQ(width.thresholds.level3_max, 8);
  EXPECT_DOUBLE_EQ(width.thresholds.level2_max, 15);
  EXPECT_EQ(width.bands, ProfileBands::circuit_width());
  EXPECT_EQ(cfg.properties.size(), 12u);
  EXPECT_EQ(cfg.level_cut_points, (std::vector<double>{20, 40, 60, 80}));
  EXPECT_EQ(cfg.duplicate_shingle_size, 30u);
  EXPECT_NO_THROW(cfg.validate());
}

TEST(ModelConfigDefaults, EveryPropertySelectsAKnownMetric) {
  for (const auto& [name, p] : ModelConfig::defaults().properties) {
    EXPECT_TRUE(metric_scope(p.metric).has_value()) << name;
    EXPECT_EQ(p.name, name);
  }
  EXPECT_EQ(metric_scope("width"), ArtifactScope::Circuit);
  EXPECT_EQ(metric_scope("cyclomatic"), ArtifactScope::Function);
  EXPECT_EQ(metric_scope("duplicate_percent"), ArtifactScope::File);
  EXPECT_FALSE(metric_scope("nonsense"));
  auto names = metric_names();
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
}

TEST(ModelConfigJson, OverlaysOnDefaults) {
  auto cfg = ModelConfig::from_json(json::parse(R"({
    "properties": {
      "circuit_depth": {"weight": 3, "thresholds": {"level3_max": 10, "level2_max": 20}},
      "duplicate_code": {"enabled": false}
    },
    "duplicate_shingle_size": 12,
    "auxiliary_register_prefixes": ["tmp"],
    "count_case_arms": false
  })"));
  EXPECT_DOUBLE_EQ(cfg.properties.at("circuit_depth").weight, 3);
  EXPECT_DOUBLE_EQ(cfg.properties.at("circuit_depth").thresholds.level3_max, 10);
  EXPECT_FALSE(cfg.properties.at("duplicate_code").enabled);
  EXPECT_EQ(cfg.duplicate_shingle_size, 12u);
  EXPECT_EQ(cfg.auxiliary_register_prefixes, std::vector<std::string>{"tmp"});
  EXPECT_FALSE(cfg.decision_rules.count_case_arms);
  EXPECT_EQ(cfg.properties.at("circuit_width"), ModelConfig::defaults().properties.at("circuit_width"));
}

TEST(ModelConfigJson, CustomBands) {
  auto cfg = ModelConfig::from_json(json::parse(R"({"properties": {"method_size": {"bands": [
    {"t1": 30, "t2": 50}, {"t1": 20, "t2": 40}, {"t1": 10, "t2": 30}, {"t1": 5, "t2": 20}]}}})"));
  const auto& b = cfg.properties.at("method_size").bands;
  EXPECT_DOUBLE_EQ(b.band(1).t1, 30);
  EXPECT_DOUBLE_EQ(b.band(4).t2, 20);
  EXPECT_DOUBLE_EQ(b.band(2).quality_low, 33);
}

TEST(ModelConfigJson, RejectsInvalidDocuments) {
  const char* bad[] = {
      R"([])",
      R"({"colour": 1})",
      R"({"properties": {"unknown_property": {}}})",
      R"({"properties": {"circuit_width": {"wieght": 2}}})",
      R"({"properties": {"circuit_width": {"weight": -1}}})",
      R"({"properties": {"circuit_width": {"metric": "nope"}}})",
      R"({"properties": {"circuit_width": {"thresholds": {"level3_max": 9, "level2_max": 9}}}})",
      R"({"properties": {"circuit_width": {"bands": [{"t1": 1, "t2": 2}]}}})",
      R"({"level_cut_points": [10, 20, 30]})",
      R"({"level_cut_points": [40, 20, 60, 80]})",
      R"({"duplicate_shingle_size": 1})",
      R"({"duplicate_shingle_size": "30"})",
      R"({"classical_extensions": ["py"]})",
      R"({"classical_extensions": [".qasm"]})",
      R"({"count_case_arms": "yes"})",
  };
  for (const char* doc : bad) {
    EXPECT_THROW(ModelConfig::from_json(json::parse(doc)), ConfigError) << doc;
  }
}

TEST(ModelConfigJson, AllDisabledOrWeightlessRejected) {
  json all_off = {{"properties", json::object()}};
  json zero = {{"properties", json::object()}};
  for (const auto& [name, p] : ModelConfig::defaults().properties) {
    all_off["properties"][name] = {{"enabled", false}};
    zero["properties"][name] = {{"weight", 0}};
  }
  EXPECT_THROW(ModelConfig::from_json(all_off), ConfigError);
  EXPECT_THROW(ModelConfig::from_json(zero), ConfigError);
}

TEST(ModelConfigJson, ReservedPropertiesOnlyDisabled) {
  EXPECT_NO_THROW(ModelConfig::from_json(
      json::parse(R"({"properties": {"coding_rules": {"enabled": false}}})")));
  EXPECT_THROW(ModelConfig::from_json(
                   json::parse(R"({"properties": {"coding_rules": {"enabled": true}}})")),
               ConfigError);
  EXPECT_THROW(ModelConfig::from_json(json::parse(
                   R"({"properties": {"package_class_structuring": {"weight": 1}}})")),
               ConfigError);
}

TEST(ModelConfigJson, RoundTripAndFingerprint) {
  auto defaults = ModelConfig::defaults();
  auto again = ModelConfig::from_json(defaults.to_json());
  EXPECT_EQ(again.to_json(), defaults.to_json());
  EXPECT_EQ(again.fingerprint(), defaults.fingerprint());
  EXPECT_EQ(defaults.fingerprint().size(), 64u);
  EXPECT_EQ(ModelConfig::from_json(json::object()).fingerprint(), defaults.fingerprint());

  auto changed = ModelConfig::from_json(json::parse(R"({"duplicate_shingle_size": 31})"));
  EXPECT_NE(changed.fingerprint(), defaults.fingerprint());
}

TEST(ModelConfigFile, LoadAndErrors) {
  testing::TempDir dir("config");
  auto good = dir.path() / "good.json";
  testing::write_text(good, R"({"properties": {"circuit_depth": {"weight": 2}}})");
  EXPECT_DOUBLE_EQ(load_model_config(good).properties.at("circuit_depth").weight, 2);

  auto broken = dir.path() / "broken.json";
  testing::write_text(broken, "{ not json");
  EXPECT_THROW(load_model_config(broken), ConfigError);
  EXPECT_THROW(load_model_config(dir.path() / "missing.json"), ConfigError);
}

TEST(ModelConfig, EnabledPropertiesSortedByName) {
  auto cfg = ModelConfig::from_json(json::parse(R"({"properties": {"circuit_depth": {"enabled": false}}})"));
  auto enabled = cfg.enabled_properties();
  EXPECT_EQ(enabled.size(), 11u);
  for (std::size_t i = 1; i < enabled.size(); ++i) EXPECT_LT(enabled[i - 1]->name, enabled[i]->name);
}

}  // namespace
}  // namespace hyqa
