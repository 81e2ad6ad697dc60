// dyntest: dynamic coupling / execution frequency vs. test-suite metrics.
//
//   dyntest trace validate --trace T
//   dyntest metrics  --trace T [--include P] [--exclude P] --out DIR
//   dyntest scan     --src S --out DIR
//   dyntest link     --src S --out DIR
//   dyntest analyze  --out DIR [--alpha A]
//   dyntest report   --out DIR [--format text|structured|tsv]
//   dyntest run      --config FILE | --trace T --src S ... --out DIR
//
// Exit codes: 0 success, 1 usage error, 2 input/parse error, 3 no observations.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dyntest/dyntest.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kInput = 2, kEmpty = 3 };

struct OptionSet {
  std::string config;
  std::map<std::string, std::vector<std::string>> values;
  std::map<std::string, CLI::Option*> options;
};

void add_pipeline_options(CLI::App& sub, OptionSet& set) {
  sub.add_option("--config", set.config, "Configuration file (key = value lines)");
  struct Spec {
    const char* key;
    const char* help;
  };
  static const Spec specs[] = {
      {"trace", "Trace file; repeat to concatenate scenarios"},
      {"src", "Source tree root"},
      {"include", "In-scope class prefix (repeatable)"},
      {"exclude", "Excluded class prefix (repeatable, wins over --include)"},
      {"alpha", "Significance level, default 0.05"},
      {"format", "Report format: text, structured or tsv"},
      {"out", "Output directory for artifacts"},
      {"top-k", "Number of key classes to list, or 'all'"},
      {"tloc-mode", "sloc (default) or raw physical lines"},
      {"naming-mode", "suffix (default) or suffix_or_prefix"},
      {"extension", "Source file extension (repeatable)"},
      {"package-pattern", "Regex capturing the package name"},
      {"class-pattern", "Regex capturing a class name"},
      {"test-case-pattern", "Regex matching one test case"},
      {"comment-prefix", "Line comment prefix (repeatable)"},
      {"block-comment", "Block comment delimiters 'OPEN CLOSE' or 'none'"},
      {"string-delims", "Characters opening string literals"},
      {"test-suffix", "Test class name suffix, default Test"},
      {"test-file-marker", "Path regex marking test files (repeatable)"},
  };
  for (const auto& s : specs) {
    set.options[s.key] = sub.add_option(std::string("--") + s.key, set.values[s.key], s.help)->take_all();
  }
}

dyntest::PipelineConfig resolve_config(const OptionSet& set) {
  dyntest::Settings flags;
  for (const auto& [key, opt] : set.options) {
    if (opt->count() > 0) flags[key] = set.values.at(key);
  }
  dyntest::Settings file;
  if (!set.config.empty()) file = dyntest::load_settings_file(set.config);
  return dyntest::build_config(dyntest::merge_settings(std::move(file), flags));
}

void print_warnings(const std::vector<dyntest::ScanWarning>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w.path.generic_string() << ": " << w.message << '\n';
}

int validate_traces(const dyntest::PipelineConfig& config) {
  if (config.trace_paths.empty()) throw dyntest::UsageError("no trace file given (--trace)");
  bool clean = true;
  for (const auto& path : config.trace_paths) {
    const auto trace = dyntest::parse_trace_file(path);
    const auto r = dyntest::validate_trace(trace);
    std::cout << path.string() << ": events=" << r.events << " classes=" << r.distinct_classes
              << " threads=" << r.distinct_threads << " entry_points=" << r.entry_points
              << " violations=" << r.violations.size() << '\n';
    for (const auto& v : r.violations) std::cout << "  event " << v.index << ": " << v.message << '\n';
    clean = clean && r.ok();
  }
  return clean ? kOk : kInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic class metrics and test-suite correlation analysis", "dyntest"};
  app.require_subcommand(1);

  OptionSet trace_set, metrics_set, scan_set, link_set, analyze_set, report_set, run_set;
  auto* trace_cmd = app.add_subcommand("trace", "Trace file utilities");
  trace_cmd->require_subcommand(1);
  auto* validate_cmd = trace_cmd->add_subcommand("validate", "Parse traces and report invariant violations");
  add_pipeline_options(*validate_cmd, trace_set);
  auto* metrics_cmd = app.add_subcommand("metrics", "Compute IC, EC and EF per class from traces");
  add_pipeline_options(*metrics_cmd, metrics_set);
  auto* scan_cmd = app.add_subcommand("scan", "Classify source units and summarize the corpus");
  add_pipeline_options(*scan_cmd, scan_set);
  auto* link_cmd = app.add_subcommand("link", "Link test classes to production classes; TLOC and NTC");
  add_pipeline_options(*link_cmd, link_set);
  auto* analyze_cmd = app.add_subcommand("analyze", "Join metrics and run the correlation battery");
  add_pipeline_options(*analyze_cmd, analyze_set);
  auto* report_cmd = app.add_subcommand("report", "Render analysis results");
  add_pipeline_options(*report_cmd, report_set);
  auto* run_cmd = app.add_subcommand("run", "Run the full pipeline");
  add_pipeline_options(*run_cmd, run_set);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (validate_cmd->parsed()) return validate_traces(resolve_config(trace_set));
    if (metrics_cmd->parsed()) {
      const auto config = resolve_config(metrics_set);
      const auto metrics = dyntest::run_metrics_stage(config);
      std::cout << "classes measured: " << metrics.size() << " -> " << (config.out_dir / "metrics.tsv").string()
                << '\n';
      return kOk;
    }
    if (scan_cmd->parsed()) {
      const auto config = resolve_config(scan_set);
      const auto scan = dyntest::run_scan_stage(config);
      print_warnings(scan.warnings);
      std::cout << "units: " << scan.units.size() << " -> " << (config.out_dir / "units.tsv").string() << '\n';
      return kOk;
    }
    if (link_cmd->parsed()) {
      const auto config = resolve_config(link_set);
      const auto metrics = dyntest::run_link_stage(config);
      std::cout << "linked production classes: " << metrics.size() << " -> "
                << (config.out_dir / "test_metrics.tsv").string() << '\n';
      return kOk;
    }
    if (analyze_cmd->parsed()) {
      const auto config = resolve_config(analyze_set);
      const auto matrix = dyntest::run_analyze_stage(config);
      std::cout << "observations: " << matrix.n << " -> " << (config.out_dir / "correlations.json").string()
                << '\n';
      return kOk;
    }
    if (report_cmd->parsed()) {
      std::cout << dyntest::run_report_stage(resolve_config(report_set));
      return kOk;
    }
    if (run_cmd->parsed()) {
      const auto result = dyntest::run_pipeline(resolve_config(run_set));
      print_warnings(result.warnings);
      std::cout << result.report;
      return kOk;
    }
  } catch (const dyntest::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const dyntest::ArgumentError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const dyntest::EmptyObservationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kEmpty;
  } catch (const dyntest::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kUsage;
}
