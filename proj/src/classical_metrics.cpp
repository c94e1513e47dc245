/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include "hyqa/classical_metrics.hpp"

#include <cstdint>
#include <cstring>
#include <string_view>
#include <unordered_map>

#include "hyqa/errors.hpp"

namespace hyqa {

std::vector<FunctionMeasure> cyclomatic(const ClassicalFileFacts& facts) {
  std::vector<FunctionMeasure> out;
  out.reserve(facts.functions.size());
  for (const auto& fn : facts.functions) {
    out.push_back({fn.name, fn.start_line, fn.decision_points + 1});
  }
  return out;
}

std::vector<FunctionMeasure> method_sizes(const ClassicalFileFacts& facts) {
  std::vector<FunctionMeasure> out;
  out.reserve(facts.functions.size());
  for (const auto& fn : facts.functions) out.push_back({fn.name, fn.start_line, fn.code_lines});
  return out;
}

double comment_density(const ClassicalFileFacts& facts) {
  const std::size_t denom = facts.comment_lines + facts.code_lines;
  if (denom == 0) return 0.0;
  return static_cast<double>(facts.comment_lines) / static_cast<double>(denom);
}

std::vector<double> duplicate_ratios(std::span<const ClassicalFileFacts> files,
                                     std::size_t shingle_size) {
  if (shingle_size < 2) {
    throw ConfigError("duplicate shingle size must be at least 2, got " +
                      std::to_string(shingle_size));
  }

  // Intern tokens so a window's content is a fixed-width byte key.
  std::unordered_map<std::string, std::uint32_t> ids;
  std::vector<std::vector<std::uint32_t>> streams;
  streams.reserve(files.size());
  for (const auto& f : files) {
    auto& s = streams.emplace_back();
    s.reserve(f.token_stream.size());
    for (const auto& tok : f.token_stream) {
      auto [it, _] = ids.emplace(tok, static_cast<std::uint32_t>(ids.size()));
      s.push_back(it->second);
    }
  }

  auto window_key = [&](const std::vector<std::uint32_t>& s, std::size_t start) {
    return std::string_view(reinterpret_cast<const char*>(s.data() + start),
                            shingle_size * sizeof(std::uint32_t));
  };

  std::unordered_map<std::string_view, std::size_t> occurrences;
  for (const auto& s : streams) {
    if (s.size() < shingle_size) continue;
    for (std::size_t p = 0; p + shingle_size <= s.size(); ++p) ++occurrences[window_key(s, p)];
  }

  std::vector<double> ratios;
  ratios.reserve(files.size());
  std::vector<bool> duplicated;
  for (const auto& s : streams) {
    if (s.size() < shingle_size) {
      ratios.push_back(0.0);
      continue;
    }
    duplicated.assign(s.size(), false);
    // Positions covered by a repeated window; `covered_until` avoids
    // re-marking overlapping windows.
    std::size_t covered_until = 0;
    for (std::size_t p = 0; p + shingle_size <= s.size(); ++p) {
      if (occurrences[window_key(s, p)] < 2) continue;
      for (std::size_t k = std::max(p, covered_until); k < p + shingle_size; ++k) duplicated[k] = true;
      covered_until = p + shingle_size;
    }
    std::size_t count = 0;
    for (bool d : duplicated) count += d ? 1 : 0;
    ratios.push_back(static_cast<double>(count) / static_cast<double>(s.size()));
  }
  return ratios;
}

std::vector<ClassicalMetricSet> compute_classical_metrics(std::span<const ClassicalFileFacts> files,
                                                          std::size_t shingle_size) {
  std::vector<double> dup = duplicate_ratios(files, shingle_size);
  std::vector<ClassicalMetricSet> out;
  out.reserve(files.size());
  for (std::size_t i = 0; i < files.size(); ++i) {
    const auto& f = files[i];
    ClassicalMetricSet m;
    m.path = f.path;
    m.function_complexities = cyclomatic(f);
    m.function_sizes = method_sizes(f);
    m.comment_lines = f.comment_lines;
    m.code_lines = f.code_lines;
    m.comment_density = comment_density(f);
    m.duplicate_token_ratio = dup[i];
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace hyqa
