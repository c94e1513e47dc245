/*
 * SPDX-License-Identifier: Apache-2.0
 */

// Evaluation calculus of the analysability model.
//
// Each artifact (circuit, function or file) is classified into a severity
// level from its measured value. The per-level counts become densities over
// all artifacts, and a banded profile function maps the level-1 and level-2
// densities to a 0..100 quality value. Weighted property qualities aggregate
// into one analysability value and a 1..5 level.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hyqa {

/// 3 is the lowest severity (best), 1 the highest.
enum class Severity : int { Level1 = 1, Level2 = 2, Level3 = 3 };

/// Higher measured values are worse. Boundaries are inclusive on the better
/// side: value <= level3_max is level 3, value <= level2_max is level 2.
struct SeverityThresholds {
  std::string property_name;
  double level3_max = 0.0;
  double level2_max = 0.0;

  /// Throws ConfigError unless level3_max < level2_max.
  void validate() const;

  friend bool operator==(const SeverityThresholds&, const SeverityThresholds&) = default;
};

Severity classify(double value, const SeverityThresholds& thresholds);

/// One row of a profile function: the maximum accepted level-1 and level-2
/// densities (percent) and the quality interval assigned to the row.
struct ProfileBand {
  double t1 = 0.0;
  double t2 = 0.0;
  double quality_low = 0.0;
  double quality_high = 0.0;

  friend bool operator==(const ProfileBand&, const ProfileBand&) = default;
};

struct ProfileBands {
  std::string property_name;
  std::array<ProfileBand, 4> bands;  // bands 1..4; band 0 is implicit (quality 0)

  /// Fixed quality intervals [0,33), [33,66), [66,100) and 100.
  static ProfileBands with_thresholds(std::string property_name,
                                      const std::array<std::array<double, 2>, 4>& thresholds);
  /// Circuit-width profile: (20,40), (15,30), (10,20), (7,15).
  static ProfileBands circuit_width();

  /// Throws ConfigError unless t1 and t2 strictly decrease with the band.
  void validate() const;

  const ProfileBand& band(int b) const { return bands.at(static_cast<std::size_t>(b - 1)); }

  friend bool operator==(const ProfileBands&, const ProfileBands&) = default;
};

/// Percent of artifacts at each severity level.
struct Densities {
  double dc1 = 0.0;
  double dc2 = 0.0;
  double dc3 = 0.0;
};

/// nullopt when there is nothing to divide by.
std::optional<Densities> compute_densities(std::size_t nc1, std::size_t nc2, std::size_t nc3);

struct ProfileResult {
  int band = 0;
  double quality = 0.0;
};

/// Selects the best band whose level-1 and level-2 maxima both accept the
/// densities (dc3 never constrains). Inside bands 1..3 the quality rises
/// linearly with the smaller of the two normalized slacks toward the next
/// band's thresholds.
ProfileResult profile_quality(double dc1, double dc2, const ProfileBands& bands);

/// One measured value attached to one artifact.
struct MetricRecord {
  std::string artifact;
  std::string metric;
  double value = 0.0;
};

struct PropertyEvaluation {
  std::string property_name;
  std::string metric;
  double weight = 1.0;
  std::size_t nc1 = 0;
  std::size_t nc2 = 0;
  std::size_t nc3 = 0;
  std::size_t n_total = 0;
  double dc1 = 0.0;
  double dc2 = 0.0;
  double dc3 = 0.0;
  int band = 0;
  double quality = 0.0;
  bool applicable = false;
};

PropertyEvaluation evaluate_property(const std::string& property_name,
                                     std::span<const MetricRecord> records,
                                     const SeverityThresholds& thresholds,
                                     const ProfileBands& bands);

inline const std::vector<double> kDefaultLevelCutPoints = {20.0, 40.0, 60.0, 80.0};

struct Analysability {
  double value = 0.0;
  int level = 1;
};

/// 1 + number of cut points <= value.
int analysability_level(double value, std::span<const double> cut_points);

/// Weighted mean of the applicable properties' qualities. Throws
/// NoApplicablePropertiesError when no applicable property has positive
/// weight.
Analysability aggregate(std::span<const PropertyEvaluation> evaluations,
                        std::span<const double> cut_points);

}  // namespace hyqa
