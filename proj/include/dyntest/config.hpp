#pragma once

// Pipeline configuration. The config file is UTF-8 `key = value` lines with
// `#` comments; a key may repeat to build a list. Keys share the names of the
// command-line flags, and a flag replaces every file value for its key.
// Relative paths in a config file resolve against the file's directory.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dyntest/error.hpp"
#include "dyntest/report.hpp"
#include "dyntest/test_linker.hpp"
#include "dyntest/trace_model.hpp"

namespace dyntest {

using Settings = std::map<std::string, std::vector<std::string>>;

inline const std::set<std::string>& config_keys() {
  static const std::set<std::string> keys{
      "trace",          "src",           "include",        "exclude",           "alpha",
      "format",         "out",           "top-k",          "tloc-mode",         "naming-mode",
      "extension",      "package-pattern", "class-pattern", "test-case-pattern", "comment-prefix",
      "block-comment",  "string-delims", "test-suffix",    "test-file-marker"};
  return keys;
}

inline bool is_path_key(const std::string& key) { return key == "trace" || key == "src" || key == "out"; }

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace detail

inline Settings parse_settings(std::istream& in, const std::filesystem::path& base_dir = {}) {
  Settings out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
    const auto key = detail::trim(std::string_view(text).substr(0, eq));
    auto value = detail::trim(std::string_view(text).substr(eq + 1));
    if (!config_keys().contains(key)) {
      throw UsageError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (is_path_key(key) && !value.empty()) {
      std::filesystem::path p(value);
      if (p.is_relative() && !base_dir.empty()) value = (base_dir / p).lexically_normal().string();
    }
    out[key].push_back(std::move(value));
  }
  return out;
}

inline Settings load_settings_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  return parse_settings(in, path.parent_path());
}

/// `overrides` replaces whole keys of `base`.
inline Settings merge_settings(Settings base, const Settings& overrides) {
  for (const auto& [key, values] : overrides) base[key] = values;
  return base;
}

struct PipelineConfig {
  std::vector<std::filesystem::path> trace_paths;
  std::optional<std::filesystem::path> source_root;
  ScopeFilter scope;
  LanguageProfile profile;
  double alpha = 0.05;
  TlocMode tloc_mode = TlocMode::sloc;
  NamingMode naming_mode = NamingMode::suffix;
  OutputFormat output_format = OutputFormat::text;
  std::optional<std::size_t> top_k;  // nullopt = all
  std::filesystem::path out_dir = ".";
};

inline PipelineConfig build_config(const Settings& settings) {
  PipelineConfig c;
  auto last = [&settings](const std::string& key) -> std::optional<std::string> {
    auto it = settings.find(key);
    if (it == settings.end() || it->second.empty()) return std::nullopt;
    return it->second.back();
  };
  auto all = [&settings](const std::string& key) {
    std::vector<std::string> values;
    if (auto it = settings.find(key); it != settings.end()) {
      for (const auto& v : it->second) {
        if (!v.empty()) values.push_back(v);
      }
    }
    return values;
  };

  for (const auto& key : settings) {
    if (!config_keys().contains(key.first)) throw UsageError("unknown setting '" + key.first + "'");
  }
  for (const auto& t : all("trace")) c.trace_paths.emplace_back(t);
  if (auto s = last("src")) c.source_root = *s;
  c.scope.include_prefixes = all("include");
  c.scope.exclude_prefixes = all("exclude");
  if (auto o = last("out")) c.out_dir = *o;

  if (auto a = last("alpha")) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(a->data(), a->data() + a->size(), v);
    if (ec != std::errc{} || p != a->data() + a->size()) throw UsageError("alpha is not a number: " + *a);
    if (!(v > 0.0 && v < 1.0)) throw UsageError("alpha must lie in (0, 1), got " + *a);
    c.alpha = v;
  }
  if (auto f = last("format")) {
    if (*f == "text") c.output_format = OutputFormat::text;
    else if (*f == "structured") c.output_format = OutputFormat::structured;
    else if (*f == "tsv") c.output_format = OutputFormat::tsv;
    else throw UsageError("format must be text, structured or tsv, got " + *f);
  }
  if (auto k = last("top-k"); k && *k != "all") {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(k->data(), k->data() + k->size(), v);
    if (ec != std::errc{} || p != k->data() + k->size() || v == 0) {
      throw UsageError("top-k must be a positive integer or 'all', got " + *k);
    }
    c.top_k = v;
  }
  if (auto m = last("tloc-mode")) {
    if (*m == "sloc") c.tloc_mode = TlocMode::sloc;
    else if (*m == "raw") c.tloc_mode = TlocMode::raw;
    else throw UsageError("tloc-mode must be sloc or raw, got " + *m);
  }
  if (auto m = last("naming-mode")) {
    if (*m == "suffix") c.naming_mode = NamingMode::suffix;
    else if (*m == "suffix_or_prefix") c.naming_mode = NamingMode::suffix_or_prefix;
    else throw UsageError("naming-mode must be suffix or suffix_or_prefix, got " + *m);
  }

  auto& prof = c.profile;
  if (auto v = all("extension"); !v.empty()) prof.extensions = v;
  if (auto v = last("package-pattern")) prof.package_pattern = *v;
  if (auto v = last("class-pattern")) prof.class_decl_pattern = *v;
  if (auto v = last("test-case-pattern")) prof.test_case_pattern = *v;
  if (settings.contains("comment-prefix")) prof.comment_prefixes = all("comment-prefix");
  if (auto v = last("block-comment")) {
    if (*v == "none") {
      prof.block_comment_delims.reset();
    } else {
      std::istringstream parts(*v);
      std::string open;
      std::string close;
      if (!(parts >> open >> close)) throw UsageError("block-comment needs 'OPEN CLOSE' or 'none'");
      prof.block_comment_delims = std::pair{open, close};
    }
  }
  if (settings.contains("string-delims")) prof.string_delims = last("string-delims").value_or("");
  if (auto v = last("test-suffix")) prof.test_suffix = *v;
  if (settings.contains("test-file-marker")) prof.test_file_markers = all("test-file-marker");
  try {
    prof.validate();
  } catch (const ArgumentError& e) {
    throw UsageError(e.what());
  }
  return c;
}

}  // namespace dyntest
