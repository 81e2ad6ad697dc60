#pragma once

// Joins runtime metrics with test-suite metrics and runs the correlation
// battery: {IC, EC, EF} x {TLOC, NTC} plus {IC, EC} x {EF}.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dyntest/dynamic_metrics.hpp"
#include "dyntest/error.hpp"
#include "dyntest/kendall.hpp"
#include "dyntest/shapiro_wilk.hpp"
#include "dyntest/test_linker.hpp"

namespace dyntest {

/// A production class that has linked tests and was seen at runtime.
struct ObservationRow {
  std::string class_id;
  std::uint64_t ic = 0;
  std::uint64_t ec = 0;
  std::uint64_t ef = 0;
  std::uint64_t tloc = 0;
  std::uint64_t ntc = 0;

  bool operator==(const ObservationRow&) const = default;
};

enum class Variable { ic, ec, ef, tloc, ntc };

inline constexpr std::array<Variable, 5> kAllVariables{Variable::ic, Variable::ec, Variable::ef, Variable::tloc,
                                                       Variable::ntc};

inline std::string_view to_string(Variable v) {
  switch (v) {
    case Variable::ic: return "IC";
    case Variable::ec: return "EC";
    case Variable::ef: return "EF";
    case Variable::tloc: return "TLOC";
    case Variable::ntc: return "NTC";
  }
  return "?";
}

inline std::vector<double> column(const std::vector<ObservationRow>& table, Variable v) {
  std::vector<double> out;
  out.reserve(table.size());
  for (const auto& r : table) {
    std::uint64_t value = 0;
    switch (v) {
      case Variable::ic: value = r.ic; break;
      case Variable::ec: value = r.ec; break;
      case Variable::ef: value = r.ef; break;
      case Variable::tloc: value = r.tloc; break;
      case Variable::ntc: value = r.ntc; break;
    }
    out.push_back(static_cast<double>(value));
  }
  return out;
}

/// One row per class present in both inputs, sorted by class id.
inline std::vector<ObservationRow> build_observation_table(const MetricsByClass& dynamic_metrics,
                                                           const std::vector<TestSuiteMetrics>& tests) {
  std::vector<ObservationRow> rows;
  for (const auto& t : tests) {
    if (t.linked_tests.empty()) continue;
    auto it = dynamic_metrics.find(t.production_class);
    if (it == dynamic_metrics.end()) continue;
    const auto& m = it->second;
    if (m.ic == 0 && m.ec == 0 && m.ef == 0) continue;
    rows.push_back({t.production_class, m.ic, m.ec, m.ef, t.tloc, t.ntc});
  }
  std::sort(rows.begin(), rows.end(),
            [](const ObservationRow& a, const ObservationRow& b) { return a.class_id < b.class_id; });
  return rows;
}

struct CorrelationCell {
  Variable first;
  Variable second;
  std::optional<CorrelationResult> result;  // empty when a column is constant

  std::string pair_name() const { return std::string(to_string(first)) + "-" + std::string(to_string(second)); }
  bool degenerate() const { return !result.has_value(); }
};

struct NormalityCell {
  Variable variable;
  std::size_t n = 0;
  std::optional<NormalityResult> result;  // empty when n < 3 or constant
};

inline constexpr std::array<std::pair<Variable, Variable>, 8> kCorrelationPairs{{
    {Variable::ic, Variable::tloc},
    {Variable::ic, Variable::ntc},
    {Variable::ec, Variable::tloc},
    {Variable::ec, Variable::ntc},
    {Variable::ef, Variable::tloc},
    {Variable::ef, Variable::ntc},
    {Variable::ic, Variable::ef},
    {Variable::ec, Variable::ef},
}};

struct CorrelationMatrix {
  std::size_t n = 0;
  double alpha = 0.05;
  std::vector<CorrelationCell> cells;        // kCorrelationPairs order
  std::vector<NormalityCell> normality;      // kAllVariables order

  const CorrelationCell& cell(Variable a, Variable b) const {
    for (const auto& c : cells) {
      if (c.first == a && c.second == b) return c;
    }
    throw ArgumentError("no correlation cell " + std::string(to_string(a)) + "-" + std::string(to_string(b)));
  }
};

/// Kendall tau-b on the eight pairs. Shapiro-Wilk runs on each variable as
/// an advisory normality gate; it never changes the test used.
inline CorrelationMatrix correlate_all(const std::vector<ObservationRow>& table, double alpha = 0.05) {
  if (table.size() < 2) {
    throw InsufficientDataError("correlation needs at least 2 observations, have " + std::to_string(table.size()));
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");

  auto constant = [](const std::vector<double>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
  };

  CorrelationMatrix m;
  m.n = table.size();
  m.alpha = alpha;
  for (auto v : kAllVariables) {
    NormalityCell nc{v, table.size(), std::nullopt};
    const auto values = column(table, v);
    if (values.size() >= 3 && !constant(values)) nc.result = shapiro_wilk(values, alpha);
    m.normality.push_back(nc);
  }
  for (const auto& [a, b] : kCorrelationPairs) {
    CorrelationCell cell{a, b, std::nullopt};
    const auto x = column(table, a);
    const auto y = column(table, b);
    if (!constant(x) && !constant(y)) cell.result = kendall_tau_b(x, y, alpha);
    m.cells.push_back(cell);
  }
  return m;
}

/// Five-number summary with Tukey fences at 1.5 IQR. min and max are the
/// extreme values inside the fences, widened to the quartiles when a gap
/// would otherwise end a whisker inside the box.
struct BoxplotSummary {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  std::vector<double> outliers;  // ascending
};

/// Linear interpolation between order statistics (sample quantile type 7).
inline double quantile_linear(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw InsufficientDataError("quantile of an empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double t = h - static_cast<double>(lo);
  const double a = sorted[lo];
  const double b = sorted[lo + 1];
  // Interpolate from the nearer end.
  return t < 0.5 ? a + (b - a) * t : b - (b - a) * (1.0 - t);
}

inline BoxplotSummary summarize_distribution(std::span<const double> values) {
  if (values.empty()) throw InsufficientDataError("boxplot of an empty sample");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  BoxplotSummary s;
  s.q1 = quantile_linear(v, 0.25);
  s.median = quantile_linear(v, 0.5);
  s.q3 = quantile_linear(v, 0.75);
  const double iqr = s.q3 - s.q1;
  const double lo = s.q1 - 1.5 * iqr;
  const double hi = s.q3 + 1.5 * iqr;
  bool any_inlier = false;
  for (double x : v) {
    if (x < lo || x > hi) {
      s.outliers.push_back(x);
      continue;
    }
    if (!any_inlier) s.min = x;
    s.max = x;
    any_inlier = true;
  }
  s.min = std::min(s.min, s.q1);
  s.max = std::max(s.max, s.q3);
  return s;
}

inline std::vector<std::pair<Variable, BoxplotSummary>> boxplot_summary(const std::vector<ObservationRow>& table) {
  if (table.empty()) throw InsufficientDataError("boxplot summary needs at least one observation");
  std::vector<std::pair<Variable, BoxplotSummary>> out;
  for (auto v : kAllVariables) out.emplace_back(v, summarize_distribution(column(table, v)));
  return out;
}

}  // namespace dyntest
