/*
 * SPDX-License-Identifier: Apache-2.0
 */

// Lightweight fact extraction from indentation-structured (Python-style)
// source files.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hyqa {

/// Raised for input that is not UTF-8 text (NUL bytes or invalid sequences).
class NotTextError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FunctionUnit {
  std::string name;
  int start_line = 1;
  int end_line = 1;
  std::size_t code_lines = 0;
  std::size_t decision_points = 0;

  friend bool operator==(const FunctionUnit&, const FunctionUnit&) = default;
};

/// Placeholders used in normalized token streams.
inline constexpr std::string_view kIdentifierToken = "ID";
inline constexpr std::string_view kLiteralToken = "LIT";

struct ClassicalFileFacts {
  std::string path;
  std::size_t total_lines = 0;
  std::size_t blank_lines = 0;
  std::size_t comment_lines = 0;
  std::size_t code_lines = 0;
  std::vector<FunctionUnit> functions;  // ordered by start line
  std::vector<std::string> token_stream;

  friend bool operator==(const ClassicalFileFacts&, const ClassicalFileFacts&) = default;
};

/// Which constructs count as decision points.
struct DecisionRules {
  std::vector<std::string> keywords = {"if", "elif", "for", "while", "and", "or", "except"};
  /// Count each `case` arm of a `match` statement.
  bool count_case_arms = true;

  friend bool operator==(const DecisionRules&, const DecisionRules&) = default;
};

/// Extracts line classes, function units, decision points and the
/// normalized token stream from one source file.
///
/// Comment lines start with `#`; a triple-quoted string standing alone as the
/// first statement of the file or of a `def`/`class` body is a docstring and
/// its lines count as comment lines. Nested functions are separate units and
/// their lines are not counted in the enclosing function.
///
/// Throws NotTextError for binary or non-UTF-8 input. Never fails otherwise.
ClassicalFileFacts analyze_source(std::string_view text, std::string_view path = {},
                                  const DecisionRules& rules = {});

}  // namespace hyqa
