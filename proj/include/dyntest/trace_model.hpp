#pragma once

// Trace event model and the tab-separated trace wire format.
//
//   seq<TAB>thread<TAB>caller_class<TAB>caller_method<TAB>callee_class<TAB>callee_method
//
// An absent caller (program entry point or external code) is written as `-`
// in both caller positions. Lines starting with `#` are comments.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dyntest/error.hpp"

namespace dyntest {

inline constexpr std::string_view kAbsentField = "-";

struct TraceEvent {
  std::uint64_t seq = 0;
  std::string thread;
  std::optional<std::string> caller_class;
  std::optional<std::string> caller_method;
  std::string callee_class;
  std::string callee_method;

  /// True when both caller fields are present.
  bool has_caller() const noexcept { return caller_class.has_value() && caller_method.has_value(); }

  bool operator==(const TraceEvent&) const = default;
};

struct Trace {
  std::vector<TraceEvent> events;  // ascending seq
  std::string source_label;

  bool operator==(const Trace&) const = default;
};

/// Restricts measurement to core classes. Exclusion wins over inclusion; an
/// empty include list admits every class. Matching is plain string prefix.
struct ScopeFilter {
  std::vector<std::string> include_prefixes;
  std::vector<std::string> exclude_prefixes;
};

inline bool in_scope(std::string_view class_id, const ScopeFilter& filter) {
  auto matches = [class_id](const std::string& prefix) { return class_id.starts_with(prefix); };
  const auto& inc = filter.include_prefixes;
  const auto& exc = filter.exclude_prefixes;
  if (!inc.empty() && std::none_of(inc.begin(), inc.end(), matches)) return false;
  return std::none_of(exc.begin(), exc.end(), matches);
}

namespace detail {

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

inline bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\r\n\f\v") == std::string_view::npos;
}

}  // namespace detail

/// Parses one record. Throws ParseError for a missing field or a bad seq.
inline TraceEvent parse_trace_line(std::string_view line, std::size_t line_no) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  auto fields = detail::split_tabs(line);
  if (fields.size() != 6) {
    throw ParseError(line_no, "expected 6 tab-separated fields, found " + std::to_string(fields.size()));
  }
  static constexpr const char* kNames[] = {"seq", "thread", "caller_class", "caller_method", "callee_class",
                                           "callee_method"};
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].empty()) throw ParseError(line_no, std::string("missing ") + kNames[i]);
  }

  TraceEvent ev;
  auto seq_text = fields[0];
  auto [ptr, ec] = std::from_chars(seq_text.data(), seq_text.data() + seq_text.size(), ev.seq);
  if (ec != std::errc{} || ptr != seq_text.data() + seq_text.size()) {
    throw ParseError(line_no, "seq is not a non-negative integer: '" + std::string(seq_text) + "'");
  }
  ev.thread = fields[1];
  if (fields[2] != kAbsentField) ev.caller_class = std::string(fields[2]);
  if (fields[3] != kAbsentField) ev.caller_method = std::string(fields[3]);
  if (fields[4] == kAbsentField) throw ParseError(line_no, "missing callee_class");
  if (fields[5] == kAbsentField) throw ParseError(line_no, "missing callee_method");
  ev.callee_class = fields[4];
  ev.callee_method = fields[5];
  return ev;
}

/// Reads a whole trace. Events are returned in ascending seq order; a
/// repeated seq raises ValidationError naming both lines.
inline Trace parse_trace(std::istream& in, std::string source_label = {}) {
  Trace trace;
  trace.source_label = std::move(source_label);
  std::unordered_map<std::uint64_t, std::size_t> seen;  // seq -> line
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_blank(line) || line.front() == '#') continue;
    auto ev = parse_trace_line(line, line_no);
    auto [it, fresh] = seen.emplace(ev.seq, line_no);
    if (!fresh) {
      throw ValidationError(trace.source_label + ": duplicate seq " + std::to_string(ev.seq) + " on lines " +
                            std::to_string(it->second) + " and " + std::to_string(line_no));
    }
    trace.events.push_back(std::move(ev));
  }
  std::stable_sort(trace.events.begin(), trace.events.end(),
                   [](const TraceEvent& a, const TraceEvent& b) { return a.seq < b.seq; });
  return trace;
}

inline Trace parse_trace_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read trace file " + path.string());
  return parse_trace(in, path.string());
}

inline void write_trace_event(std::ostream& out, const TraceEvent& ev) {
  out << ev.seq << '\t' << ev.thread << '\t' << ev.caller_class.value_or(std::string(kAbsentField)) << '\t'
      << ev.caller_method.value_or(std::string(kAbsentField)) << '\t' << ev.callee_class << '\t'
      << ev.callee_method << '\n';
}

inline void write_trace(std::ostream& out, const Trace& trace) {
  for (const auto& ev : trace.events) write_trace_event(out, ev);
}

/// Joins several traces into one logical trace: file order first, then seq.
/// The result is renumbered 0..n-1 so seq stays unique across files.
inline Trace concatenate(const std::vector<Trace>& parts) {
  Trace all;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) all.source_label += ',';
    all.source_label += parts[i].source_label;
    all.events.insert(all.events.end(), parts[i].events.begin(), parts[i].events.end());
  }
  for (std::size_t i = 0; i < all.events.size(); ++i) all.events[i].seq = i;
  return all;
}

struct Violation {
  enum class Kind { duplicate_seq, unsorted_seq, empty_callee, partial_caller };
  Kind kind;
  std::size_t index;  // position in Trace::events
  std::string message;
};

struct ValidationReport {
  std::size_t events = 0;
  std::size_t distinct_classes = 0;
  std::size_t distinct_threads = 0;
  std::size_t entry_points = 0;
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

inline std::set<std::string> distinct_classes(const Trace& trace) {
  std::set<std::string> out;
  for (const auto& ev : trace.events) {
    out.insert(ev.callee_class);
    if (ev.caller_class) out.insert(*ev.caller_class);
  }
  return out;
}

inline ValidationReport validate_trace(const Trace& trace) {
  ValidationReport report;
  report.events = trace.events.size();
  report.distinct_classes = distinct_classes(trace).size();

  std::set<std::string_view> threads;
  std::map<std::uint64_t, std::size_t> first_at;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const auto& ev = trace.events[i];
    threads.insert(ev.thread);
    if (!ev.caller_class && !ev.caller_method) ++report.entry_points;

    auto [it, fresh] = first_at.emplace(ev.seq, i);
    if (!fresh) {
      report.violations.push_back({Violation::Kind::duplicate_seq, i,
                                   "seq " + std::to_string(ev.seq) + " repeats event " + std::to_string(it->second)});
    } else if (i > 0 && ev.seq < trace.events[i - 1].seq) {
      report.violations.push_back({Violation::Kind::unsorted_seq, i,
                                   "seq " + std::to_string(ev.seq) + " follows " +
                                       std::to_string(trace.events[i - 1].seq)});
    }
    if (ev.callee_class.empty() || ev.callee_method.empty()) {
      report.violations.push_back({Violation::Kind::empty_callee, i, "callee class or method is empty"});
    }
    if (ev.caller_class.has_value() != ev.caller_method.has_value()) {
      report.violations.push_back({Violation::Kind::partial_caller, i,
                                   ev.caller_class ? "caller_class present without caller_method"
                                                   : "caller_method present without caller_class"});
    }
  }
  report.distinct_threads = threads.size();
  return report;
}

/// Downstream operations reject traces that carry violations.
inline void require_valid(const Trace& trace) {
  auto report = validate_trace(trace);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw ValidationError(trace.source_label + ": event " + std::to_string(v.index) + ": " + v.message + " (" +
                          std::to_string(report.violations.size()) + " violation(s))");
  }
}

}  // namespace dyntest
