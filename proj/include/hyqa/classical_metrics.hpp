/*
 * SPDX-License-Identifier: Apache-2.0
 */

// Per-file and per-function measurements for the classical properties.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hyqa/classical_source.hpp"

namespace hyqa {

struct FunctionMeasure {
  std::string name;
  int start_line = 1;
  std::size_t value = 0;

  friend bool operator==(const FunctionMeasure&, const FunctionMeasure&) = default;
};

struct ClassicalMetricSet {
  std::string path;
  std::vector<FunctionMeasure> function_complexities;
  std::vector<FunctionMeasure> function_sizes;
  std::size_t comment_lines = 0;
  std::size_t code_lines = 0;
  double comment_density = 0.0;
  double duplicate_token_ratio = 0.0;

  friend bool operator==(const ClassicalMetricSet&, const ClassicalMetricSet&) = default;
};

inline constexpr std::size_t kDefaultShingleSize = 30;

/// McCabe complexity per function: decision points + 1.
std::vector<FunctionMeasure> cyclomatic(const ClassicalFileFacts& facts);

std::vector<FunctionMeasure> method_sizes(const ClassicalFileFacts& facts);

/// comment / (comment + code); 0 when both are zero.
double comment_density(const ClassicalFileFacts& facts);

/// Project-wide token-shingle duplication. A token position is duplicated
/// when it lies inside a window of `shingle_size` normalized tokens whose
/// content occurs at least twice across all files. Returns one ratio per
/// file, in input order. Throws ConfigError when shingle_size < 2.
std::vector<double> duplicate_ratios(std::span<const ClassicalFileFacts> files,
                                     std::size_t shingle_size = kDefaultShingleSize);

std::vector<ClassicalMetricSet> compute_classical_metrics(
    std::span<const ClassicalFileFacts> files, std::size_t shingle_size = kDefaultShingleSize);

}  // namespace hyqa
