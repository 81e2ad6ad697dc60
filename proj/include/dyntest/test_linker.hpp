#pragma once

// Test-suite side of the analysis: finds classes in a source tree, sizes the
// test classes (TLOC, NTC) and links them to the production classes they
// exercise, by naming convention and by direct lexical reference.

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "dyntest/error.hpp"
#include "dyntest/trace_model.hpp"

namespace dyntest {

namespace fs = std::filesystem;

enum class UnitKind { production, test };
enum class TlocMode { sloc, raw };
enum class NamingMode { suffix, suffix_or_prefix };
enum class LinkSource { naming, callgraph, both };
enum class SizeBand { small, medium, large, extra_large };

inline std::string_view to_string(UnitKind k) { return k == UnitKind::test ? "test" : "production"; }

inline std::string_view to_string(LinkSource s) {
  switch (s) {
    case LinkSource::naming: return "naming";
    case LinkSource::callgraph: return "callgraph";
    case LinkSource::both: return "both";
  }
  return "?";
}

inline std::string_view to_string(SizeBand b) {
  switch (b) {
    case SizeBand::small: return "small";
    case SizeBand::medium: return "medium";
    case SizeBand::large: return "large";
    case SizeBand::extra_large: return "extra-large";
  }
  return "?";
}

/// Lexical description of a source language and its unit-test idiom.
/// Defaults describe Java with JUnit 3/4.
struct LanguageProfile {
  std::vector<std::string> extensions{".java"};
  std::string package_pattern = R"(^\s*package\s+([\w.]+)\s*;)";
  // Capture group 1 is the class name. Applied to comment-free lines.
  std::string class_decl_pattern =
      R"(^\s*(?:(?:public|protected|private|abstract|final|static|sealed|strictfp)\s+)*)"
      R"((?:class|interface|enum|record)\s+([A-Za-z_$][\w$]*))";
  // One match per test case, applied to the comment-free text of a unit.
  // An annotated JUnit 4 method is consumed whole so a `testX` name after
  // `@Test` is not counted twice.
  std::string test_case_pattern =
      R"(@Test\b(?:\s*\([^)]*\))?\s+(?:(?:public|protected|private|static|final)\s+)*void\s+\w+\s*\()"
      R"(|\bvoid\s+test\w*\s*\()";
  std::vector<std::string> comment_prefixes{"//"};
  std::optional<std::pair<std::string, std::string>> block_comment_delims{{"/*", "*/"}};
  std::string string_delims = "\"'";
  std::string test_suffix = "Test";
  // Regexes searched in the root-relative path (with '/' separators).
  std::vector<std::string> test_file_markers{R"((^|/)tests?/)"};

  void validate() const {
    if (test_suffix.empty()) throw ArgumentError("test_suffix must not be empty");
    if (extensions.empty()) throw ArgumentError("profile needs at least one source extension");
    auto check = [](const std::string& what, const std::string& pattern) {
      try {
        std::regex re(pattern);
      } catch (const std::regex_error& e) {
        throw ArgumentError(what + " is not a valid regular expression: " + e.what());
      }
    };
    check("package_pattern", package_pattern);
    check("class_decl_pattern", class_decl_pattern);
    check("test_case_pattern", test_case_pattern);
    for (const auto& m : test_file_markers) check("test_file_marker", m);
    if (block_comment_delims && (block_comment_delims->first.empty() || block_comment_delims->second.empty())) {
      throw ArgumentError("block comment delimiters must not be empty");
    }
  }
};

struct SourceUnit {
  fs::path path;  // relative to the scanned root
  std::string class_id;
  std::string simple_name;
  UnitKind kind = UnitKind::production;
  std::vector<std::string> lines;  // declaration line through closing brace
};

struct ScanWarning {
  fs::path path;
  std::string message;
};

struct ScanResult {
  std::vector<SourceUnit> units;  // sorted by class_id, then path
  std::vector<ScanWarning> warnings;
};

// --------------------------------------------------------------------------
// Comment and literal stripping

/// Removes comments and the contents of string/char literals, line by line.
/// Block comments may span lines. The output has one entry per input line;
/// a line that held only comment text becomes empty or whitespace.
inline std::vector<std::string> code_only(const std::vector<std::string>& lines, const LanguageProfile& profile) {
  std::vector<std::string> out;
  out.reserve(lines.size());
  bool in_block = false;
  const auto* block = profile.block_comment_delims ? &*profile.block_comment_delims : nullptr;

  for (const auto& raw : lines) {
    std::string code;
    std::string_view s = raw;
    std::size_t i = 0;
    while (i < s.size()) {
      if (in_block) {
        auto end = s.find(block->second, i);
        if (end == std::string_view::npos) {
          i = s.size();
        } else {
          in_block = false;
          i = end + block->second.size();
        }
        continue;
      }
      auto starts = [&](const std::string& tok) { return s.substr(i).starts_with(tok); };
      if (std::any_of(profile.comment_prefixes.begin(), profile.comment_prefixes.end(), starts)) break;
      if (block && starts(block->first)) {
        in_block = true;
        i += block->first.size();
        continue;
      }
      const char ch = s[i];
      if (profile.string_delims.find(ch) != std::string::npos) {
        std::size_t j = i + 1;
        while (j < s.size() && s[j] != ch) j += (s[j] == '\\') ? 2 : 1;
        code += ch;
        code += ch;
        i = j + 1;
        continue;
      }
      code += ch;
      ++i;
    }
    out.push_back(std::move(code));
  }
  return out;
}

namespace detail {

inline std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

inline std::string join_lines(const std::vector<std::string>& lines) {
  std::string text;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) text += '\n';
    text += lines[i];
  }
  return text;
}

inline bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '$';
}

inline std::string_view simple_name(std::string_view class_id) {
  auto dot = class_id.rfind('.');
  return dot == std::string_view::npos ? class_id : class_id.substr(dot + 1);
}

inline std::string_view package_of(std::string_view class_id) {
  auto dot = class_id.rfind('.');
  return dot == std::string_view::npos ? std::string_view{} : class_id.substr(0, dot);
}

}  // namespace detail

/// Splits one file into top-level class units. Nested declarations stay in
/// their outermost class. Braces inside comments and literals are ignored.
inline std::vector<SourceUnit> units_in_file(const std::vector<std::string>& lines, const fs::path& rel_path,
                                             const LanguageProfile& profile) {
  const std::regex decl(profile.class_decl_pattern);
  const std::regex pkg(profile.package_pattern);
  std::vector<std::regex> markers;
  for (const auto& m : profile.test_file_markers) markers.emplace_back(m);

  const auto code = code_only(lines, profile);
  std::string package;
  for (const auto& c : code) {
    std::smatch m;
    if (std::regex_search(c, m, pkg) && m.size() > 1) {
      package = m[1].str();
      break;
    }
  }
  const std::string rel = rel_path.generic_string();
  const bool marked = std::any_of(markers.begin(), markers.end(),
                                  [&rel](const std::regex& re) { return std::regex_search(rel, re); });

  std::vector<SourceUnit> units;
  long depth = 0;
  std::optional<std::size_t> start;
  std::string name;
  auto close = [&](std::size_t last) {
    SourceUnit u;
    u.path = rel_path;
    u.simple_name = name;
    u.class_id = package.empty() ? name : package + "." + name;
    u.kind = (name.ends_with(profile.test_suffix) || marked) ? UnitKind::test : UnitKind::production;
    u.lines.assign(lines.begin() + static_cast<std::ptrdiff_t>(*start),
                   lines.begin() + static_cast<std::ptrdiff_t>(last) + 1);
    units.push_back(std::move(u));
    start.reset();
  };

  for (std::size_t i = 0; i < code.size(); ++i) {
    if (depth == 0 && !start) {
      std::smatch m;
      if (std::regex_search(code[i], m, decl) && m.size() > 1 && m[1].matched) {
        start = i;
        name = m[1].str();
      }
    }
    for (char ch : code[i]) {
      if (ch == '{') {
        ++depth;
      } else if (ch == '}' && depth > 0) {
        --depth;
        if (depth == 0 && start) close(i);
      }
    }
  }
  if (start) close(code.size() - 1);  // unterminated: runs to end of file
  return units;
}

inline ScanResult scan_sources(const fs::path& root, const LanguageProfile& profile) {
  profile.validate();
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw IoError("source root is not a readable directory: " + root.string());

  std::vector<fs::path> files;
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw IoError("cannot scan " + root.string() + ": " + ec.message());
  for (const auto& entry : it) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    if (std::find(profile.extensions.begin(), profile.extensions.end(), ext) != profile.extensions.end()) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  ScanResult result;
  for (const auto& file : files) {
    auto rel = fs::relative(file, root);
    auto units = units_in_file(detail::read_lines(file), rel, profile);
    if (units.empty()) {
      result.warnings.push_back({rel, "no class declaration; skipped"});
      continue;
    }
    for (auto& u : units) result.units.push_back(std::move(u));
  }
  std::sort(result.units.begin(), result.units.end(), [](const SourceUnit& a, const SourceUnit& b) {
    return std::tie(a.class_id, a.path) < std::tie(b.class_id, b.path);
  });
  return result;
}

// --------------------------------------------------------------------------
// Size measures

/// Physical lines of the unit. In sloc mode blank and comment-only lines are
/// not counted; a code line with a trailing comment is.
inline std::size_t compute_tloc(const SourceUnit& unit, const LanguageProfile& profile,
                                TlocMode mode = TlocMode::sloc) {
  if (mode == TlocMode::raw) return unit.lines.size();
  const auto code = code_only(unit.lines, profile);
  return static_cast<std::size_t>(
      std::count_if(code.begin(), code.end(), [](const std::string& c) { return !detail::is_blank(c); }));
}

/// Non-overlapping matches of the test-case pattern in the unit's code.
inline std::size_t compute_ntc(const SourceUnit& unit, const LanguageProfile& profile) {
  if (unit.kind != UnitKind::test) throw ArgumentError("compute_ntc needs a test unit: " + unit.class_id);
  const std::regex marker(profile.test_case_pattern);
  const auto text = detail::join_lines(code_only(unit.lines, profile));
  return static_cast<std::size_t>(
      std::distance(std::sregex_iterator(text.begin(), text.end(), marker), std::sregex_iterator()));
}

// --------------------------------------------------------------------------
// Linking

struct TestLink {
  std::string test_class;
  std::string production_class;
  LinkSource source = LinkSource::naming;

  auto operator<=>(const TestLink&) const = default;
};

/// Naming convention: FooTest tests Foo. A same-package partner is preferred;
/// otherwise a production class with that simple name is used when it is
/// unique. In suffix_or_prefix mode TestFoo also tests Foo.
inline std::vector<TestLink> link_by_name(const std::vector<SourceUnit>& tests, const std::vector<SourceUnit>& prods,
                                          const LanguageProfile& profile,
                                          NamingMode mode = NamingMode::suffix) {
  std::set<std::string, std::less<>> prod_ids;
  std::map<std::string, std::vector<std::string>, std::less<>> by_simple;
  for (const auto& p : prods) {
    if (p.kind != UnitKind::production) continue;
    prod_ids.insert(p.class_id);
    by_simple[p.simple_name].push_back(p.class_id);
  }
  const auto& sfx = profile.test_suffix;

  auto resolve = [&](std::string_view pkg, const std::string& base) -> std::optional<std::string> {
    if (base.empty()) return std::nullopt;
    std::string qualified = pkg.empty() ? base : std::string(pkg) + "." + base;
    if (prod_ids.contains(qualified)) return qualified;
    auto it = by_simple.find(base);
    if (it != by_simple.end() && it->second.size() == 1) return it->second.front();
    return std::nullopt;
  };

  std::vector<TestLink> links;
  for (const auto& t : tests) {
    if (t.kind != UnitKind::test) continue;
    const auto& name = t.simple_name;
    const auto pkg = detail::package_of(t.class_id);
    std::optional<std::string> partner;
    if (name.size() > sfx.size() && name.ends_with(sfx)) partner = resolve(pkg, name.substr(0, name.size() - sfx.size()));
    if (!partner && mode == NamingMode::suffix_or_prefix && name.size() > sfx.size() && name.starts_with(sfx)) {
      partner = resolve(pkg, name.substr(sfx.size()));
    }
    if (partner) links.push_back({t.class_id, *partner, LinkSource::naming});
  }
  std::sort(links.begin(), links.end());
  return links;
}

/// Direct references: every production class whose simple name appears as a
/// whole identifier in the test's code (comments and literals removed).
inline std::vector<TestLink> link_by_callgraph(const SourceUnit& test, const std::set<std::string>& prod_class_names,
                                               const LanguageProfile& profile) {
  if (test.kind != UnitKind::test) throw ArgumentError("link_by_callgraph needs a test unit: " + test.class_id);
  std::map<std::string, std::vector<std::string>, std::less<>> by_simple;
  for (const auto& id : prod_class_names) by_simple[std::string(detail::simple_name(id))].push_back(id);

  std::set<std::string> hit;
  for (const auto& line : code_only(test.lines, profile)) {
    std::size_t i = 0;
    while (i < line.size()) {
      if (!detail::is_ident_char(line[i])) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && detail::is_ident_char(line[j])) ++j;
      auto it = by_simple.find(std::string_view(line).substr(i, j - i));
      if (it != by_simple.end()) hit.insert(it->second.begin(), it->second.end());
      i = j;
    }
  }
  std::vector<TestLink> links;
  for (const auto& p : hit) {
    if (p != test.class_id) links.push_back({test.class_id, p, LinkSource::callgraph});
  }
  return links;
}

/// Union of both techniques; a pair found by both is tagged `both`.
inline std::vector<TestLink> merge_links(const std::vector<TestLink>& naming, const std::vector<TestLink>& callgraph) {
  std::map<std::pair<std::string, std::string>, LinkSource> merged;
  auto add = [&merged](const TestLink& l) {
    auto [it, fresh] = merged.emplace(std::pair{l.production_class, l.test_class}, l.source);
    if (!fresh && it->second != l.source) it->second = LinkSource::both;
  };
  for (const auto& l : naming) add(l);
  for (const auto& l : callgraph) add(l);
  std::vector<TestLink> out;
  for (const auto& [key, src] : merged) out.push_back({key.second, key.first, src});
  std::sort(out.begin(), out.end());
  return out;
}

/// Runs both techniques over a scanned tree.
inline std::vector<TestLink> link_tests(const std::vector<SourceUnit>& units, const LanguageProfile& profile,
                                        NamingMode mode = NamingMode::suffix) {
  std::vector<SourceUnit> tests;
  std::vector<SourceUnit> prods;
  std::set<std::string> prod_names;
  for (const auto& u : units) {
    if (u.kind == UnitKind::test) {
      tests.push_back(u);
    } else {
      prods.push_back(u);
      prod_names.insert(u.class_id);
    }
  }
  std::vector<TestLink> callgraph;
  for (const auto& t : tests) {
    auto found = link_by_callgraph(t, prod_names, profile);
    callgraph.insert(callgraph.end(), found.begin(), found.end());
  }
  return merge_links(link_by_name(tests, prods, profile, mode), callgraph);
}

// --------------------------------------------------------------------------
// Aggregation

struct TestSuiteMetrics {
  std::string production_class;
  std::vector<std::pair<std::string, LinkSource>> linked_tests;  // sorted by test class
  std::size_t tloc = 0;
  std::size_t ntc = 0;

  bool operator==(const TestSuiteMetrics&) const = default;
};

/// Per production class, sums TLOC and NTC over every linked test class. A
/// test linked to several production classes counts fully for each.
inline std::vector<TestSuiteMetrics> aggregate_test_metrics(const std::vector<TestLink>& links,
                                                            const std::vector<SourceUnit>& tests,
                                                            const LanguageProfile& profile,
                                                            TlocMode mode = TlocMode::sloc) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> sizes;  // test -> (tloc, ntc)
  for (const auto& t : tests) {
    if (t.kind != UnitKind::test) continue;
    auto& s = sizes[t.class_id];
    s.first += compute_tloc(t, profile, mode);
    s.second += compute_ntc(t, profile);
  }

  std::map<std::string, std::map<std::string, LinkSource>> grouped;
  for (const auto& l : links) {
    if (!sizes.contains(l.test_class)) throw ArgumentError("link refers to unknown test class " + l.test_class);
    auto [it, fresh] = grouped[l.production_class].emplace(l.test_class, l.source);
    if (!fresh && it->second != l.source) it->second = LinkSource::both;
  }

  std::vector<TestSuiteMetrics> out;
  for (const auto& [prod, linked] : grouped) {
    TestSuiteMetrics m;
    m.production_class = prod;
    for (const auto& [test, src] : linked) {
      m.linked_tests.emplace_back(test, src);
      m.tloc += sizes[test].first;
      m.ntc += sizes[test].second;
    }
    out.push_back(std::move(m));
  }
  return out;
}

// Export format:
// production_class<TAB>TLOC<TAB>NTC<TAB>tests(comma-joined)<TAB>sources(comma-joined)
inline void write_test_metrics(std::ostream& out, const std::vector<TestSuiteMetrics>& metrics) {
  for (const auto& m : metrics) {
    out << m.production_class << '\t' << m.tloc << '\t' << m.ntc << '\t';
    for (std::size_t i = 0; i < m.linked_tests.size(); ++i) out << (i ? "," : "") << m.linked_tests[i].first;
    out << '\t';
    for (std::size_t i = 0; i < m.linked_tests.size(); ++i) {
      out << (i ? "," : "") << to_string(m.linked_tests[i].second);
    }
    out << '\n';
  }
}

inline std::vector<TestSuiteMetrics> read_test_metrics(std::istream& in) {
  auto split = [](std::string_view s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      auto comma = s.find(',', start);
      parts.emplace_back(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos) return parts;
      start = comma + 1;
    }
  };
  auto count = [](std::string_view f, std::size_t line_no) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc{} || p != f.data() + f.size()) throw ParseError(line_no, "bad count '" + std::string(f) + "'");
    return v;
  };

  std::vector<TestSuiteMetrics> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_blank(line) || line.front() == '#') continue;
    auto fields = detail::split_tabs(line);
    if (fields.size() != 5) throw ParseError(line_no, "test-metrics row needs 5 fields");
    TestSuiteMetrics m;
    m.production_class = fields[0];
    m.tloc = count(fields[1], line_no);
    m.ntc = count(fields[2], line_no);
    auto tests = split(fields[3]);
    auto sources = split(fields[4]);
    if (tests.size() != sources.size()) throw ParseError(line_no, "linked tests and sources differ in length");
    for (std::size_t i = 0; i < tests.size(); ++i) {
      LinkSource src;
      if (sources[i] == "naming") src = LinkSource::naming;
      else if (sources[i] == "callgraph") src = LinkSource::callgraph;
      else if (sources[i] == "both") src = LinkSource::both;
      else throw ParseError(line_no, "unknown link source '" + sources[i] + "'");
      m.linked_tests.emplace_back(tests[i], src);
    }
    out.push_back(std::move(m));
  }
  return out;
}

// --------------------------------------------------------------------------
// Corpus characteristics

/// Half-open KLOC bands: [0,1) small, [1,10) medium, [10,100) large.
inline SizeBand size_band(double kloc) {
  if (kloc < 1.0) return SizeBand::small;
  if (kloc < 10.0) return SizeBand::medium;
  if (kloc < 100.0) return SizeBand::large;
  return SizeBand::extra_large;
}

struct CorpusSummary {
  double kloc = 0.0;
  std::size_t noc = 0;
  std::size_t test_class_count = 0;
  std::size_t total_ntc = 0;
  double test_kloc = 0.0;
  SizeBand band = SizeBand::small;
};

inline CorpusSummary summarize_corpus(const std::vector<SourceUnit>& units, const LanguageProfile& profile,
                                      TlocMode mode = TlocMode::sloc) {
  CorpusSummary s;
  std::size_t prod_lines = 0;
  std::size_t test_lines = 0;
  for (const auto& u : units) {
    const auto lines = compute_tloc(u, profile, mode);
    if (u.kind == UnitKind::test) {
      ++s.test_class_count;
      test_lines += lines;
      s.total_ntc += compute_ntc(u, profile);
    } else {
      ++s.noc;
      prod_lines += lines;
    }
  }
  s.kloc = static_cast<double>(prod_lines) / 1000.0;
  s.test_kloc = static_cast<double>(test_lines) / 1000.0;
  s.band = size_band(s.kloc);
  return s;
}

inline void write_corpus_summary(std::ostream& out, const CorpusSummary& s) {
  std::ostringstream k;
  k << std::fixed << std::setprecision(3) << s.kloc;
  std::ostringstream tk;
  tk << std::fixed << std::setprecision(3) << s.test_kloc;
  out << "kloc\t" << k.str() << "\nnoc\t" << s.noc << "\ntest_classes\t" << s.test_class_count << "\ntotal_ntc\t"
      << s.total_ntc << "\ntest_kloc\t" << tk.str() << "\nsize_band\t" << to_string(s.band) << '\n';
}

/// One row per unit: class_id, kind, line count, NTC (`-` for production), path.
inline void write_units(std::ostream& out, const std::vector<SourceUnit>& units, const LanguageProfile& profile,
                        TlocMode mode = TlocMode::sloc) {
  for (const auto& u : units) {
    out << u.class_id << '\t' << to_string(u.kind) << '\t' << compute_tloc(u, profile, mode) << '\t';
    if (u.kind == UnitKind::test) out << compute_ntc(u, profile);
    else out << '-';
    out << '\t' << u.path.generic_string() << '\n';
  }
}

}  // namespace dyntest
