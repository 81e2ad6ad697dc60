#pragma once

// Runtime class metrics computed from invocation records:
//
//   IC(C)  invocations C receives from other in-scope classes
//   EC(C)  invocations C sends to other in-scope classes
//   EF(C)  executions of C's methods, i.e. the sum of per-method counts
//
// Self-invocations count toward EF only. Coupling needs both endpoints in
// scope; EF only needs the callee in scope. Every occurrence counts once.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dyntest/error.hpp"
#include "dyntest/trace_model.hpp"

namespace dyntest {

struct MethodFrequency {
  std::string class_id;
  std::string method;
  std::uint64_t count = 0;

  auto operator<=>(const MethodFrequency&) const = default;
};

struct ClassDynamicMetrics {
  std::string class_id;
  std::uint64_t ic = 0;
  std::uint64_t ec = 0;
  std::uint64_t ef = 0;

  bool operator==(const ClassDynamicMetrics&) const = default;
};

using MetricsByClass = std::map<std::string, ClassDynamicMetrics>;

namespace detail {

// Memoizes in_scope per class identifier for one pass over a trace.
class ScopeCache {
 public:
  explicit ScopeCache(const ScopeFilter& filter) : filter_(filter) {}

  bool operator()(const std::string& class_id) {
    auto it = memo_.find(class_id);
    if (it == memo_.end()) it = memo_.emplace(class_id, in_scope(class_id, filter_)).first;
    return it->second;
  }

 private:
  const ScopeFilter& filter_;
  std::unordered_map<std::string, bool> memo_;
};

}  // namespace detail

/// Counts executions of each in-scope (class, method) pair. Sorted by class
/// then method; pairs that never execute are absent.
inline std::vector<MethodFrequency> per_method_frequency(const Trace& trace, const ScopeFilter& filter) {
  require_valid(trace);
  detail::ScopeCache scoped(filter);
  std::map<std::pair<std::string, std::string>, std::uint64_t> counts;
  for (const auto& ev : trace.events) {
    if (scoped(ev.callee_class)) ++counts[{ev.callee_class, ev.callee_method}];
  }
  std::vector<MethodFrequency> out;
  out.reserve(counts.size());
  for (const auto& [key, count] : counts) out.push_back({key.first, key.second, count});
  return out;
}

inline MetricsByClass compute_class_metrics(const Trace& trace, const ScopeFilter& filter) {
  require_valid(trace);
  detail::ScopeCache scoped(filter);
  MetricsByClass out;
  auto slot = [&out](const std::string& id) -> ClassDynamicMetrics& {
    auto& m = out[id];
    m.class_id = id;
    return m;
  };

  for (const auto& ev : trace.events) {
    const bool callee_in = scoped(ev.callee_class);
    if (callee_in) ++slot(ev.callee_class).ef;
    if (!ev.has_caller()) continue;
    const auto& caller = *ev.caller_class;
    if (caller == ev.callee_class || !callee_in || !scoped(caller)) continue;
    ++slot(ev.callee_class).ic;
    ++slot(caller).ec;
  }
  return out;
}

/// Classes ordered by EF, highest first. Ties go to the lexicographically
/// smaller class id. `top_k` truncates (never pads); nullopt keeps all.
struct KeyClassRanking {
  std::vector<std::pair<std::string, std::uint64_t>> entries;
};

inline KeyClassRanking rank_key_classes(const MetricsByClass& metrics, std::optional<std::size_t> top_k = {}) {
  if (top_k && *top_k == 0) throw ArgumentError("top_k must be positive");
  KeyClassRanking ranking;
  ranking.entries.reserve(metrics.size());
  for (const auto& [id, m] : metrics) ranking.entries.emplace_back(id, m.ef);
  std::stable_sort(ranking.entries.begin(), ranking.entries.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (top_k && ranking.entries.size() > *top_k) ranking.entries.resize(*top_k);
  return ranking;
}

// Export format: class_id<TAB>IC<TAB>EC<TAB>EF, sorted by class_id.
inline void write_metrics(std::ostream& out, const MetricsByClass& metrics) {
  for (const auto& [id, m] : metrics) out << id << '\t' << m.ic << '\t' << m.ec << '\t' << m.ef << '\n';
}

inline MetricsByClass read_metrics(std::istream& in) {
  MetricsByClass out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_blank(line) || line.front() == '#') continue;
    auto fields = detail::split_tabs(line);
    if (fields.size() != 4) throw ParseError(line_no, "metrics row needs 4 fields");
    ClassDynamicMetrics m;
    m.class_id = fields[0];
    std::uint64_t* slots[] = {&m.ic, &m.ec, &m.ef};
    for (int i = 0; i < 3; ++i) {
      auto f = fields[i + 1];
      auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), *slots[i]);
      if (ec != std::errc{} || p != f.data() + f.size()) throw ParseError(line_no, "bad count '" + std::string(f) + "'");
    }
    out[m.class_id] = m;
  }
  return out;
}

inline void write_ranking(std::ostream& out, const KeyClassRanking& ranking) {
  for (const auto& [id, ef] : ranking.entries) out << id << '\t' << ef << '\n';
}

}  // namespace dyntest
