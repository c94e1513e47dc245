/*
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace hyqa {

enum class OutputFormat { Text, Json, Both };

enum ExitCode : int {
  kExitOk = 0,
  kExitGateFailed = 1,
  kExitUsage = 2,
  kExitNoApplicable = 3,
};

inline constexpr const char* kDefaultJsonOutput = "analysability.json";

struct CliInvocation {
  std::filesystem::path project_root;
  std::optional<std::filesystem::path> config_path;
  std::optional<std::filesystem::path> output_path;
  OutputFormat format = OutputFormat::Text;
  bool expand_gates = false;
  std::optional<int> fail_below_level;
};

/// Runs scan, metrics and scoring, writes the requested outputs and returns
/// the process exit code. Text goes to `out` unless an output path is given
/// for text-only runs; JSON goes to the output path (default
/// analysability.json). Errors are reported on `err`.
int run(const CliInvocation& invocation, std::ostream& out, std::ostream& err);

/// Parses the command line and calls run().
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hyqa
