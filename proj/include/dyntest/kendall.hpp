#pragma once

// Kendall's tau-b with tie correction.
//
//   tau_b = (C - D) / sqrt((C + D + Tx) (C + D + Ty))
//
// C and D count concordant and discordant pairs, Tx (Ty) pairs tied only in
// x (only in y). The statistic uses Knight's O(n log n) merge-sort count.
// Two-sided p-values are exact for n <= 8 and asymptotic above that.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "dyntest/error.hpp"

namespace dyntest {

enum class Strength { none, low, medium, strong };
enum class Direction { direct, inverse, none };

inline std::string_view to_string(Strength s) {
  switch (s) {
    case Strength::none: return "none";
    case Strength::low: return "low";
    case Strength::medium: return "medium";
    case Strength::strong: return "strong";
  }
  return "?";
}

inline std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::direct: return "direct";
    case Direction::inverse: return "inverse";
    case Direction::none: return "none";
  }
  return "?";
}

struct CorrelationResult {
  double tau = 0.0;
  double p = 1.0;
  std::size_t n = 0;
  Strength strength = Strength::none;
  Direction direction = Direction::none;
  bool significant = false;
};

/// Pair totals behind tau-b. `score` is C - D.
struct KendallCounts {
  std::int64_t score = 0;
  std::int64_t pairs = 0;         // n (n - 1) / 2
  std::int64_t tied_x = 0;        // pairs tied in x (including joint ties)
  std::int64_t tied_y = 0;        // pairs tied in y (including joint ties)
  std::int64_t tied_both = 0;

  double tau() const {
    return static_cast<double>(score) /
           std::sqrt(static_cast<double>(pairs - tied_x) * static_cast<double>(pairs - tied_y));
  }
};

namespace detail {

inline std::int64_t tied_pairs_in_runs(std::span<const double> sorted) {
  std::int64_t total = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i + 1;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const auto t = static_cast<std::int64_t>(j - i);
    total += t * (t - 1) / 2;
    i = j;
  }
  return total;
}

// Stable merge sort of `v` returning the number of strict inversions.
inline std::int64_t count_inversions(std::vector<double>& v) {
  std::vector<double> buf(v.size());
  std::int64_t swaps = 0;
  for (std::size_t width = 1; width < v.size(); width *= 2) {
    for (std::size_t lo = 0; lo < v.size(); lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, v.size());
      const std::size_t hi = std::min(lo + 2 * width, v.size());
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (v[j] < v[i]) {
          swaps += static_cast<std::int64_t>(mid - i);
          buf[k++] = v[j++];
        } else {
          buf[k++] = v[i++];
        }
      }
      while (i < mid) buf[k++] = v[i++];
      while (j < hi) buf[k++] = v[j++];
    }
    v.swap(buf);
  }
  return swaps;
}

inline void check_pair_input(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ArgumentError("kendall_tau_b: x and y differ in length");
  if (x.size() < 2) throw ArgumentError("kendall_tau_b: need at least 2 observations");
}

}  // namespace detail

inline KendallCounts kendall_counts(std::span<const double> x, std::span<const double> y) {
  detail::check_pair_input(x, y);
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
  });

  KendallCounts k;
  k.pairs = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;

  std::vector<double> xs(n);
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = x[order[i]];
    ys[i] = y[order[i]];
  }
  k.tied_x = detail::tied_pairs_in_runs(xs);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && xs[j] == xs[i] && ys[j] == ys[i]) ++j;
    const auto t = static_cast<std::int64_t>(j - i);
    k.tied_both += t * (t - 1) / 2;
    i = j;
  }
  const std::int64_t discordant = detail::count_inversions(ys);  // ys is now sorted
  k.tied_y = detail::tied_pairs_in_runs(ys);
  k.score = k.pairs - k.tied_x - k.tied_y + k.tied_both - 2 * discordant;
  return k;
}

namespace detail {

inline std::vector<std::int64_t> tie_group_sizes(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  std::vector<std::int64_t> groups;
  for (std::size_t i = 0; i < s.size();) {
    std::size_t j = i + 1;
    while (j < s.size() && s[j] == s[i]) ++j;
    if (j - i > 1) groups.push_back(static_cast<std::int64_t>(j - i));
    i = j;
  }
  return groups;
}

// Permutations of 1..n by inversion count (Mahonian numbers).
inline std::vector<std::uint64_t> inversion_distribution(std::size_t n) {
  std::vector<std::uint64_t> dist{1};
  for (std::size_t k = 2; k <= n; ++k) {
    std::vector<std::uint64_t> next(dist.size() + k - 1, 0);
    for (std::size_t i = 0; i < dist.size(); ++i) {
      for (std::size_t extra = 0; extra < k; ++extra) next[i + extra] += dist[i];
    }
    dist.swap(next);
  }
  return dist;
}

}  // namespace detail

inline constexpr std::size_t kExactKendallMaxN = 8;

/// Exact two-sided p-value: the share of all pairings of y with x whose
/// |C - D| reaches the observed one. Without ties this reads the Mahonian
/// distribution; with ties it walks the distinct arrangements of y.
inline double kendall_exact_p(std::span<const double> x, std::span<const double> y) {
  detail::check_pair_input(x, y);
  const std::size_t n = x.size();
  if (n > kExactKendallMaxN) throw RangeError("exact Kendall p-value is limited to n <= 8");
  const std::int64_t observed = std::llabs(kendall_counts(x, y).score);

  const bool ties = !detail::tie_group_sizes(x).empty() || !detail::tie_group_sizes(y).empty();
  if (!ties) {
    const auto dist = detail::inversion_distribution(n);
    const auto pairs = static_cast<std::int64_t>(n * (n - 1) / 2);
    std::uint64_t hits = 0;
    std::uint64_t total = 0;
    for (std::size_t inv = 0; inv < dist.size(); ++inv) {
      total += dist[inv];
      if (std::llabs(pairs - 2 * static_cast<std::int64_t>(inv)) >= observed) hits += dist[inv];
    }
    return static_cast<double>(hits) / static_cast<double>(total);
  }

  auto sign = [](double d) { return (d > 0) - (d < 0); };
  std::vector<double> arrangement(y.begin(), y.end());
  std::sort(arrangement.begin(), arrangement.end());
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  do {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) s += sign(x[i] - x[j]) * sign(arrangement[i] - arrangement[j]);
    }
    ++total;
    if (std::llabs(s) >= observed) ++hits;
  } while (std::next_permutation(arrangement.begin(), arrangement.end()));
  return static_cast<double>(hits) / static_cast<double>(total);
}

/// Normal approximation with tie-corrected variance of C - D and a
/// continuity correction of 1.
inline double kendall_asymptotic_p(std::span<const double> x, std::span<const double> y) {
  detail::check_pair_input(x, y);
  const double n = static_cast<double>(x.size());
  const auto gx = detail::tie_group_sizes(x);
  const auto gy = detail::tie_group_sizes(y);
  auto sum = [](const std::vector<std::int64_t>& g, auto f) {
    double s = 0.0;
    for (auto t : g) s += f(static_cast<double>(t));
    return s;
  };
  auto v_term = [](double t) { return t * (t - 1.0) * (2.0 * t + 5.0); };
  auto pair_term = [](double t) { return t * (t - 1.0); };
  auto triple_term = [](double t) { return t * (t - 1.0) * (t - 2.0); };

  const double v0 = n * (n - 1.0) * (2.0 * n + 5.0);
  const double v1 = sum(gx, pair_term) * sum(gy, pair_term);
  const double v2 = sum(gx, triple_term) * sum(gy, triple_term);
  double var = (v0 - sum(gx, v_term) - sum(gy, v_term)) / 18.0;
  if (n > 2.0) var += v2 / (9.0 * n * (n - 1.0) * (n - 2.0));
  var += v1 / (2.0 * n * (n - 1.0));
  if (!(var > 0.0)) return 1.0;

  const double s = static_cast<double>(std::llabs(kendall_counts(x, y).score));
  const double z = std::max(s - 1.0, 0.0) / std::sqrt(var);
  return std::min(1.0, std::erfc(z / std::numbers::sqrt2));
}

/// Strength from |tau| rounded to two decimals (half away from zero), which
/// closes the gaps between the bands; direction from the sign of tau itself.
inline std::pair<Strength, Direction> classify_strength(double tau) {
  if (!(std::fabs(tau) <= 1.0 + 1e-12)) throw ArgumentError("classify_strength: |tau| exceeds 1");
  const auto hundredths = static_cast<long>(std::round(std::min(std::fabs(tau), 1.0) * 100.0));
  Strength s = Strength::strong;
  if (hundredths == 0) s = Strength::none;
  else if (hundredths <= 29) s = Strength::low;
  else if (hundredths <= 59) s = Strength::medium;
  const Direction d = tau > 0 ? Direction::direct : tau < 0 ? Direction::inverse : Direction::none;
  return {s, d};
}

/// Significance at level alpha; the boundary p == alpha is significant.
inline bool is_significant(double p, double alpha) {
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("p-value must lie in [0, 1]");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");
  return p <= alpha;
}

inline CorrelationResult kendall_tau_b(std::span<const double> x, std::span<const double> y, double alpha = 0.05) {
  detail::check_pair_input(x, y);
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");
  const auto k = kendall_counts(x, y);
  if (k.tied_x == k.pairs) throw DegenerateInputError("kendall_tau_b: every x value is tied");
  if (k.tied_y == k.pairs) throw DegenerateInputError("kendall_tau_b: every y value is tied");

  CorrelationResult r;
  r.n = x.size();
  r.tau = std::clamp(k.tau(), -1.0, 1.0);
  r.p = r.n <= kExactKendallMaxN ? kendall_exact_p(x, y) : kendall_asymptotic_p(x, y);
  std::tie(r.strength, r.direction) = classify_strength(r.tau);
  r.significant = is_significant(r.p, alpha);
  return r;
}

}  // namespace dyntest
