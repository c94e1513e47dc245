/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include "hyqa/scoring.hpp"

#include <algorithm>

#include "hyqa/errors.hpp"

namespace hyqa {

void SeverityThresholds::validate() const {
  if (!(level3_max < level2_max)) {
    throw ConfigError("thresholds for '" + property_name + "': level3_max (" +
                      std::to_string(level3_max) + ") must be below level2_max (" +
                      std::to_string(level2_max) + ")");
  }
}

Severity classify(double value, const SeverityThresholds& thresholds) {
  if (value <= thresholds.level3_max) return Severity::Level3;
  if (value <= thresholds.level2_max) return Severity::Level2;
  return Severity::Level1;
}

ProfileBands ProfileBands::with_thresholds(std::string property_name,
                                           const std::array<std::array<double, 2>, 4>& thresholds) {
  static constexpr std::array<std::array<double, 2>, 4> kQuality = {
      {{0.0, 33.0}, {33.0, 66.0}, {66.0, 100.0}, {100.0, 100.0}}};
  ProfileBands out;
  out.property_name = std::move(property_name);
  for (std::size_t i = 0; i < 4; ++i) {
    out.bands[i] = {thresholds[i][0], thresholds[i][1], kQuality[i][0], kQuality[i][1]};
  }
  return out;
}

ProfileBands ProfileBands::circuit_width() {
  return with_thresholds("circuit_width", {{{20, 40}, {15, 30}, {10, 20}, {7, 15}}});
}

void ProfileBands::validate() const {
  for (std::size_t i = 0; i + 1 < bands.size(); ++i) {
    if (!(bands[i].t1 > bands[i + 1].t1) || !(bands[i].t2 > bands[i + 1].t2)) {
      throw ConfigError("profile bands for '" + property_name +
                        "': thresholds must strictly decrease from band 1 to band 4");
    }
  }
  for (const auto& b : bands) {
    if (b.t1 < 0 || b.t2 < 0 || b.t1 > 100 || b.t2 > 100) {
      throw ConfigError("profile bands for '" + property_name +
                        "': thresholds must be percentages in [0, 100]");
    }
  }
}

std::optional<Densities> compute_densities(std::size_t nc1, std::size_t nc2, std::size_t nc3) {
  const std::size_t total = nc1 + nc2 + nc3;
  if (total == 0) return std::nullopt;
  const double n = static_cast<double>(total);
  return Densities{100.0 * static_cast<double>(nc1) / n, 100.0 * static_cast<double>(nc2) / n,
                   100.0 * static_cast<double>(nc3) / n};
}

ProfileResult profile_quality(double dc1, double dc2, const ProfileBands& bands) {
  int band = 0;
  for (int b = 4; b >= 1; --b) {
    const auto& row = bands.band(b);
    if (dc1 <= row.t1 && dc2 <= row.t2) {
      band = b;
      break;
    }
  }
  if (band == 0) return {0, 0.0};
  if (band == 4) return {4, 100.0};

  const auto& row = bands.band(band);
  const auto& next = bands.band(band + 1);
  auto slack = [](double limit, double next_limit, double density) {
    return std::clamp((limit - density) / (limit - next_limit), 0.0, 1.0);
  };
  const double s = std::min(slack(row.t1, next.t1, dc1), slack(row.t2, next.t2, dc2));
  return {band, row.quality_low + s * (row.quality_high - row.quality_low)};
}

PropertyEvaluation evaluate_property(const std::string& property_name,
                                     std::span<const MetricRecord> records,
                                     const SeverityThresholds& thresholds,
                                     const ProfileBands& bands) {
  PropertyEvaluation eval;
  eval.property_name = property_name;
  if (!records.empty()) eval.metric = records.front().metric;
  for (const auto& r : records) {
    switch (classify(r.value, thresholds)) {
      case Severity::Level1: ++eval.nc1; break;
      case Severity::Level2: ++eval.nc2; break;
      case Severity::Level3: ++eval.nc3; break;
    }
  }
  eval.n_total = records.size();
  auto densities = compute_densities(eval.nc1, eval.nc2, eval.nc3);
  if (!densities) return eval;

  eval.applicable = true;
  eval.dc1 = densities->dc1;
  eval.dc2 = densities->dc2;
  eval.dc3 = densities->dc3;
  auto profile = profile_quality(eval.dc1, eval.dc2, bands);
  eval.band = profile.band;
  eval.quality = profile.quality;
  return eval;
}

int analysability_level(double value, std::span<const double> cut_points) {
  return 1 + static_cast<int>(std::count_if(cut_points.begin(), cut_points.end(),
                                            [&](double cut) { return cut <= value; }));
}

Analysability aggregate(std::span<const PropertyEvaluation> evaluations,
                        std::span<const double> cut_points) {
  double weighted = 0.0;
  double total_weight = 0.0;
  for (const auto& e : evaluations) {
    if (!e.applicable || e.weight <= 0.0) continue;
    weighted += e.weight * e.quality;
    total_weight += e.weight;
  }
  if (total_weight <= 0.0) {
    throw NoApplicablePropertiesError("no applicable property with positive weight to aggregate");
  }
  Analysability out;
  out.value = std::clamp(weighted / total_weight, 0.0, 100.0);
  out.level = analysability_level(out.value, cut_points);
  return out;
}

}  // namespace hyqa
