#pragma once

// Pipeline stages. Each stage reads and writes the documented file formats
// in the output directory, so any stage can be swapped for an external tool:
//
//   metrics  traces           -> metrics.tsv, key_classes.tsv
//   scan     source tree      -> units.tsv, corpus_summary.tsv
//   link     source tree      -> test_metrics.tsv
//   analyze  metrics.tsv, test_metrics.tsv
//                             -> observations.tsv, correlations.json, boxplots.tsv
//   report   correlations.json (boxplots.tsv for tsv)
//                             -> report.txt | report.json | report.tsv

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dyntest/analysis.hpp"
#include "dyntest/config.hpp"
#include "dyntest/dynamic_metrics.hpp"
#include "dyntest/error.hpp"
#include "dyntest/report.hpp"
#include "dyntest/test_linker.hpp"
#include "dyntest/trace_model.hpp"

namespace dyntest {

namespace artifact {
inline constexpr const char* metrics = "metrics.tsv";
inline constexpr const char* key_classes = "key_classes.tsv";
inline constexpr const char* units = "units.tsv";
inline constexpr const char* corpus_summary = "corpus_summary.tsv";
inline constexpr const char* test_metrics = "test_metrics.tsv";
inline constexpr const char* observations = "observations.tsv";
inline constexpr const char* correlations = "correlations.json";
inline constexpr const char* boxplots = "boxplots.tsv";
}  // namespace artifact

/// Writes `content` to dir/name through a temporary file and a rename.
inline std::filesystem::path write_artifact(const std::filesystem::path& dir, const std::string& name,
                                            const std::string& content) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  const auto target = dir / name;
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw IoError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + target.string() + ": " + ec.message());
  return target;
}

inline std::string read_artifact(const std::filesystem::path& dir, const std::string& name) {
  std::ifstream in(dir / name, std::ios::binary);
  if (!in) throw IoError("missing input " + (dir / name).string() + " (run the producing stage first)");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class Fn>
std::string render(Fn&& fn) {
  std::ostringstream out;
  fn(out);
  return out.str();
}

inline Trace load_traces(const PipelineConfig& config) {
  if (config.trace_paths.empty()) throw UsageError("no trace file given (--trace)");
  std::vector<Trace> parts;
  for (const auto& p : config.trace_paths) parts.push_back(parse_trace_file(p));
  return concatenate(parts);
}

inline MetricsByClass run_metrics_stage(const PipelineConfig& config) {
  const auto trace = load_traces(config);
  auto metrics = compute_class_metrics(trace, config.scope);
  write_artifact(config.out_dir, artifact::metrics, render([&](std::ostream& o) { write_metrics(o, metrics); }));
  const auto ranking = rank_key_classes(metrics, config.top_k);
  write_artifact(config.out_dir, artifact::key_classes, render([&](std::ostream& o) { write_ranking(o, ranking); }));
  return metrics;
}

inline ScanResult scan_configured_sources(const PipelineConfig& config) {
  if (!config.source_root) throw UsageError("no source root given (--src)");
  return scan_sources(*config.source_root, config.profile);
}

inline ScanResult run_scan_stage(const PipelineConfig& config) {
  auto scan = scan_configured_sources(config);
  write_artifact(config.out_dir, artifact::units,
                 render([&](std::ostream& o) { write_units(o, scan.units, config.profile, config.tloc_mode); }));
  const auto summary = summarize_corpus(scan.units, config.profile, config.tloc_mode);
  write_artifact(config.out_dir, artifact::corpus_summary,
                 render([&](std::ostream& o) { write_corpus_summary(o, summary); }));
  return scan;
}

inline std::vector<TestSuiteMetrics> run_link_stage(const PipelineConfig& config) {
  const auto scan = scan_configured_sources(config);
  const auto links = link_tests(scan.units, config.profile, config.naming_mode);
  auto metrics = aggregate_test_metrics(links, scan.units, config.profile, config.tloc_mode);
  write_artifact(config.out_dir, artifact::test_metrics,
                 render([&](std::ostream& o) { write_test_metrics(o, metrics); }));
  return metrics;
}

inline CorrelationMatrix run_analyze_stage(const PipelineConfig& config) {
  std::istringstream dyn_in(read_artifact(config.out_dir, artifact::metrics));
  std::istringstream tests_in(read_artifact(config.out_dir, artifact::test_metrics));
  const auto table = build_observation_table(read_metrics(dyn_in), read_test_metrics(tests_in));
  write_artifact(config.out_dir, artifact::observations,
                 render([&](std::ostream& o) { write_observations(o, table); }));
  if (table.empty()) throw EmptyObservationError();
  const auto matrix = correlate_all(table, config.alpha);
  write_artifact(config.out_dir, artifact::correlations, render_structured(matrix));
  const auto boxes = boxplot_summary(table);
  write_artifact(config.out_dir, artifact::boxplots, render([&](std::ostream& o) { write_boxplots(o, boxes); }));
  return matrix;
}

inline std::string report_file_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::text: return "report.txt";
    case OutputFormat::structured: return "report.json";
    case OutputFormat::tsv: return "report.tsv";
  }
  return "report";
}

/// Renders the analysis results in the configured format and writes them to
/// report.<ext>. Returns the rendered text.
inline std::string run_report_stage(const PipelineConfig& config) {
  std::string text;
  if (config.output_format == OutputFormat::tsv) {
    text = read_artifact(config.out_dir, artifact::boxplots);
  } else {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(read_artifact(config.out_dir, artifact::correlations));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(0, std::string(artifact::correlations) + ": " + e.what());
    }
    const auto matrix = matrix_from_json(doc);
    text = config.output_format == OutputFormat::text ? render_text(matrix) : render_structured(matrix);
  }
  write_artifact(config.out_dir, report_file_name(config.output_format), text);
  return text;
}

struct PipelineResult {
  std::vector<ScanWarning> warnings;
  std::string report;
};

/// parse -> scope -> metrics -> scan -> link -> aggregate -> join ->
/// correlate -> report.
inline PipelineResult run_pipeline(const PipelineConfig& config) {
  if (config.trace_paths.empty()) throw UsageError("run needs at least one --trace");
  if (!config.source_root) throw UsageError("run needs --src");
  PipelineResult result;
  run_metrics_stage(config);
  result.warnings = run_scan_stage(config).warnings;
  run_link_stage(config);
  run_analyze_stage(config);
  result.report = run_report_stage(config);
  return result;
}

}  // namespace dyntest
