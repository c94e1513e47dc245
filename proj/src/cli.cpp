/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include "hyqa/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "hyqa/errors.hpp"
#include "hyqa/project.hpp"
#include "hyqa/report.hpp"

namespace hyqa {

namespace {

bool write_file(const std::filesystem::path& path, const std::string& content, std::ostream& err) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (file) file << content;
  if (!file) {
    err << "hyqa: cannot write " << path.string() << "\n";
    return false;
  }
  return true;
}

}  // namespace

int run(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  if (inv.fail_below_level && (*inv.fail_below_level < 1 || *inv.fail_below_level > 5)) {
    err << "hyqa: --fail-below-level must be between 1 and 5\n";
    return kExitUsage;
  }

  ModelConfig config;
  try {
    config = inv.config_path ? load_model_config(*inv.config_path) : ModelConfig::defaults();
  } catch (const ConfigError& e) {
    err << "hyqa: " << e.what() << "\n";
    return kExitUsage;
  }

  AnalysabilityReport report;
  try {
    ProjectInventory inventory = scan(inv.project_root, config);
    IngestOptions options;
    options.expand_gates = inv.expand_gates;
    options.decision_rules = config.decision_rules;
    IngestResult ingested = ingest(inventory, options);
    for (const auto& d : ingested.diagnostics) {
      err << "hyqa: " << d.path;
      if (d.span) err << ":" << d.span->line << ":" << d.span->column;
      err << ": " << d.message << "\n";
    }
    report = build_report(inventory, ingested, config);
  } catch (const ScanError& e) {
    err << "hyqa: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NoApplicablePropertiesError& e) {
    err << "hyqa: " << e.what() << " (project has no measurable circuits or classical code)\n";
    return kExitNoApplicable;
  }

  const bool want_text = inv.format != OutputFormat::Json;
  const bool want_json = inv.format != OutputFormat::Text;
  if (want_text) {
    const std::string text = render_text(report);
    if (inv.format == OutputFormat::Text && inv.output_path) {
      if (!write_file(*inv.output_path, text, err)) return kExitUsage;
    } else {
      out << text;
    }
  }
  if (want_json) {
    const auto path = inv.output_path.value_or(kDefaultJsonOutput);
    if (!write_file(path, render_json(report), err)) return kExitUsage;
  }

  if (inv.fail_below_level && report.analysability_level < *inv.fail_below_level) {
    err << "hyqa: quality gate failed: level " << report.analysability_level << " is below "
        << *inv.fail_below_level << "\n";
    return kExitGateFailed;
  }
  return kExitOk;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analysability evaluation of hybrid quantum-classical projects", "hyqa"};
  app.set_version_flag("--version", tool_version());

  CliInvocation inv;
  std::string config_path;
  std::string output_path;
  int fail_below = 0;
  const std::map<std::string, OutputFormat> formats = {
      {"text", OutputFormat::Text}, {"json", OutputFormat::Json}, {"both", OutputFormat::Both}};

  app.add_option("project", inv.project_root, "Project root directory")->required();
  auto* config_opt = app.add_option("--config", config_path, "Model configuration (JSON)");
  app.add_option("--format", inv.format, "Output format: text, json or both")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case).description(""))
      ->option_text("FORMAT");
  auto* output_opt = app.add_option("--output", output_path, "Output file");
  app.add_flag("--expand-gates", inv.expand_gates, "Inline user-defined gate calls before measuring");
  auto* gate_opt = app.add_option("--fail-below-level", fail_below,
                                  "Exit with status 1 when the level is below this value")
                       ->check(CLI::Range(1, 5));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*config_opt) inv.config_path = config_path;
  if (*output_opt) inv.output_path = output_path;
  if (*gate_opt) inv.fail_below_level = fail_below;
  return run(inv, out, err);
}

}  // namespace hyqa
