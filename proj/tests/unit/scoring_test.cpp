/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include <gtest/gtest.h>

#include <random>

#include "hyqa/errors.hpp"
#include "hyqa/scoring.hpp"

namespace hyqa {
namespace {

const SeverityThresholds kWidth{"circuit_width", 8, 15};

std::vector<MetricRecord> widths(const std::vector<double>& values) {
  std::vector<MetricRecord> records;
  for (std::size_t i = 0; i < values.size(); ++i) {
    records.push_back({"c" + std::to_string(i), "width", values[i]});
  }
  return records;
}

PropertyEvaluation applicable(double quality, double weight) {
  PropertyEvaluation e;
  e.applicable = true;
  e.quality = quality;
  e.weight = weight;
  return e;
}

TEST(Classify, CircuitWidthBoundaries) {
  EXPECT_EQ(classify(1, kWidth), Severity::Level3);
  EXPECT_EQ(classify(8, kWidth), Severity::Level3);
  EXPECT_EQ(classify(9, kWidth), Severity::Level2);
  EXPECT_EQ(classify(15, kWidth), Severity::Level2);
  EXPECT_EQ(classify(16, kWidth), Severity::Level1);
  EXPECT_EQ(classify(0, kWidth), Severity::Level3);
}

TEST(Thresholds, Validation) {
  EXPECT_NO_THROW(kWidth.validate());
  EXPECT_THROW((SeverityThresholds{"p", 5, 5}.validate()), ConfigError);
  EXPECT_THROW((SeverityThresholds{"p", 6, 5}.validate()), ConfigError);
}

TEST(Densities, Examples) {
  auto d = compute_densities(1, 2, 17);
  ASSERT_TRUE(d);
  EXPECT_DOUBLE_EQ(d->dc1, 5.0);
  EXPECT_DOUBLE_EQ(d->dc2, 10.0);
  EXPECT_DOUBLE_EQ(d->dc3, 85.0);
  for (std::size_t n : {1u, 2u, 97u}) {
    auto all_good = compute_densities(0, 0, n);
    ASSERT_TRUE(all_good);
    EXPECT_DOUBLE_EQ(all_good->dc3, 100.0);
  }
  EXPECT_FALSE(compute_densities(0, 0, 0));
}

TEST(DensitiesProperty, SumToHundred) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::size_t> count(0, 500);
  for (int i = 0; i < 1000; ++i) {
    auto a = count(rng), b = count(rng), c = count(rng);
    auto d = compute_densities(a, b, c);
    if (a + b + c == 0) {
      EXPECT_FALSE(d);
      continue;
    }
    ASSERT_TRUE(d);
    EXPECT_NEAR(d->dc1 + d->dc2 + d->dc3, 100.0, 1e-9);
  }
}

TEST(ProfileQuality, TableCorners) {
  const auto bands = ProfileBands::circuit_width();
  EXPECT_EQ(profile_quality(5, 10, bands).band, 4);
  EXPECT_DOUBLE_EQ(profile_quality(5, 10, bands).quality, 100.0);
  EXPECT_EQ(profile_quality(25, 50, bands).band, 0);
  EXPECT_DOUBLE_EQ(profile_quality(25, 50, bands).quality, 0.0);
  EXPECT_EQ(profile_quality(7, 15, bands).band, 4);
  EXPECT_EQ(profile_quality(10, 20, bands).band, 3);
  EXPECT_DOUBLE_EQ(profile_quality(10, 20, bands).quality, 66.0);
  EXPECT_EQ(profile_quality(15, 30, bands).band, 2);
  EXPECT_DOUBLE_EQ(profile_quality(15, 30, bands).quality, 33.0);
  EXPECT_EQ(profile_quality(20, 40, bands).band, 1);
  EXPECT_DOUBLE_EQ(profile_quality(20, 40, bands).quality, 0.0);
  EXPECT_EQ(profile_quality(20.001, 0, bands).band, 0);
  EXPECT_EQ(profile_quality(0, 40.001, bands).band, 0);
}

TEST(ProfileQuality, Interpolation) {
  auto r = profile_quality(8, 16, ProfileBands::circuit_width());
  EXPECT_EQ(r.band, 3);
  EXPECT_NEAR(r.quality, 66.0 + (2.0 / 3.0) * 34.0, 1e-12);
  EXPECT_NEAR(r.quality, 88.666667, 1e-4);
}

TEST(ProfileQuality, ThirdDensityNeverConstrains) {
  // dc3 is not an argument at all; a band is chosen from dc1 and dc2 alone.
  EXPECT_EQ(profile_quality(0, 0, ProfileBands::circuit_width()).band, 4);
}

TEST(ProfileBandsTest, Validation) {
  EXPECT_NO_THROW(ProfileBands::circuit_width().validate());
  auto bad = ProfileBands::with_thresholds("p", {{{20, 40}, {20, 30}, {10, 20}, {7, 15}}});
  EXPECT_THROW(bad.validate(), ConfigError);
  auto inverted = ProfileBands::with_thresholds("p", {{{7, 15}, {10, 20}, {15, 30}, {20, 40}}});
  EXPECT_THROW(inverted.validate(), ConfigError);
  const auto& b3 = ProfileBands::circuit_width().band(3);
  EXPECT_DOUBLE_EQ(b3.quality_low, 66.0);
  EXPECT_DOUBLE_EQ(b3.quality_high, 100.0);
}

TEST(ProfileQualityProperty, MonotoneInBothDensities) {
  const auto bands = ProfileBands::circuit_width();
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> density(0.0, 60.0);
  std::uniform_real_distribution<double> bump(0.0, 10.0);
  for (int i = 0; i < 10000; ++i) {
    const double d1 = density(rng), d2 = density(rng);
    const auto base = profile_quality(d1, d2, bands);
    const auto worse1 = profile_quality(d1 + bump(rng), d2, bands);
    const auto worse2 = profile_quality(d1, d2 + bump(rng), bands);
    EXPECT_LE(worse1.quality, base.quality + 1e-12);
    EXPECT_LE(worse2.quality, base.quality + 1e-12);
    EXPECT_GE(base.quality, 0.0);
    EXPECT_LE(base.quality, 100.0);
    if (base.band == 0) EXPECT_EQ(base.quality, 0.0);
    if (base.band == 4) EXPECT_EQ(base.quality, 100.0);
  }
}

TEST(EvaluateProperty, Examples) {
  std::vector<double> values = {16, 12, 12};
  for (int i = 0; i < 17; ++i) values.push_back(1 + i % 8);
  auto recs = widths(values);
  auto e = evaluate_property("circuit_width", recs, kWidth, ProfileBands::circuit_width());
  EXPECT_TRUE(e.applicable);
  EXPECT_EQ(e.metric, "width");
  EXPECT_EQ(e.nc1, 1u);
  EXPECT_EQ(e.nc2, 2u);
  EXPECT_EQ(e.nc3, 17u);
  EXPECT_EQ(e.n_total, 20u);
  EXPECT_DOUBLE_EQ(e.dc1, 5.0);
  EXPECT_DOUBLE_EQ(e.dc2, 10.0);
  EXPECT_DOUBLE_EQ(e.dc3, 85.0);
  EXPECT_EQ(e.band, 4);
  EXPECT_DOUBLE_EQ(e.quality, 100.0);

  auto single = widths({30});
  auto worst = evaluate_property("circuit_width", single, kWidth, ProfileBands::circuit_width());
  EXPECT_EQ(worst.nc1, 1u);
  EXPECT_DOUBLE_EQ(worst.dc1, 100.0);
  EXPECT_EQ(worst.band, 0);
  EXPECT_DOUBLE_EQ(worst.quality, 0.0);

  auto none = evaluate_property("circuit_width", {}, kWidth, ProfileBands::circuit_width());
  EXPECT_FALSE(none.applicable);
  EXPECT_EQ(none.n_total, 0u);
}

TEST(Aggregate, Examples) {
  std::vector<PropertyEvaluation> all_good = {applicable(100, 1), applicable(100, 2)};
  auto a = aggregate(all_good, kDefaultLevelCutPoints);
  EXPECT_DOUBLE_EQ(a.value, 100.0);
  EXPECT_EQ(a.level, 5);

  std::vector<PropertyEvaluation> all_bad = {applicable(0, 1), applicable(0, 1)};
  auto b = aggregate(all_bad, kDefaultLevelCutPoints);
  EXPECT_DOUBLE_EQ(b.value, 0.0);
  EXPECT_EQ(b.level, 1);

  std::vector<PropertyEvaluation> mixed = {applicable(100, 1), applicable(60, 3)};
  auto c = aggregate(mixed, kDefaultLevelCutPoints);
  EXPECT_DOUBLE_EQ(c.value, 70.0);
  EXPECT_EQ(c.level, 4);
}

TEST(Aggregate, SkipsInapplicableAndRejectsEmpty) {
  PropertyEvaluation off;
  off.quality = 0;
  std::vector<PropertyEvaluation> evals = {applicable(80, 1), off};
  EXPECT_DOUBLE_EQ(aggregate(evals, kDefaultLevelCutPoints).value, 80.0);

  std::vector<PropertyEvaluation> nothing = {off};
  EXPECT_THROW(aggregate(nothing, kDefaultLevelCutPoints), NoApplicablePropertiesError);
  EXPECT_THROW(aggregate({}, kDefaultLevelCutPoints), NoApplicablePropertiesError);
  std::vector<PropertyEvaluation> weightless = {applicable(50, 0)};
  EXPECT_THROW(aggregate(weightless, kDefaultLevelCutPoints), NoApplicablePropertiesError);
}

TEST(AnalysabilityLevel, CutPoints) {
  EXPECT_EQ(analysability_level(0, kDefaultLevelCutPoints), 1);
  EXPECT_EQ(analysability_level(19.999, kDefaultLevelCutPoints), 1);
  EXPECT_EQ(analysability_level(20, kDefaultLevelCutPoints), 2);
  EXPECT_EQ(analysability_level(59.9, kDefaultLevelCutPoints), 3);
  EXPECT_EQ(analysability_level(60, kDefaultLevelCutPoints), 4);
  EXPECT_EQ(analysability_level(80, kDefaultLevelCutPoints), 5);
  EXPECT_EQ(analysability_level(100, kDefaultLevelCutPoints), 5);
}

TEST(AggregateProperty, WeightScalingAndBounds) {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> quality(0, 100);
  std::uniform_real_distribution<double> weight(0.1, 5);
  for (int i = 0; i < 1000; ++i) {
    std::vector<PropertyEvaluation> evals, scaled;
    double lo = 100, hi = 0;
    for (int p = 0; p < 5; ++p) {
      auto e = applicable(quality(rng), weight(rng));
      lo = std::min(lo, e.quality);
      hi = std::max(hi, e.quality);
      evals.push_back(e);
      e.weight *= 7.5;
      scaled.push_back(e);
    }
    auto a = aggregate(evals, kDefaultLevelCutPoints);
    EXPECT_NEAR(a.value, aggregate(scaled, kDefaultLevelCutPoints).value, 1e-9);
    EXPECT_GE(a.value, lo - 1e-9);
    EXPECT_LE(a.value, hi + 1e-9);
  }
}

}  // namespace
}  // namespace hyqa
