#pragma once

// Shapiro-Wilk normality test, Royston (1995) approximation (algorithm AS R94)
// for 3 <= n <= 5000. Coefficients come from normal order-statistic scores
// with polynomial corrections for the two extreme pairs; the p-value comes
// from a normalizing transform of log(1 - W).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "dyntest/error.hpp"

namespace dyntest {

struct NormalityResult {
  double w = 1.0;
  double p = 1.0;
  std::size_t n = 0;
  bool normal_at_alpha = true;  // p > alpha
};

namespace detail {

template <std::size_t N>
double poly(const std::array<double, N>& c, double x) {
  double r = 0.0;
  for (std::size_t i = N; i-- > 0;) r = r * x + c[i];
  return r;
}

/// Half of the antisymmetric Shapiro-Wilk weight vector: a[0] pairs the
/// smallest with the largest observation. Normalized so sum(a^2) = 1/2.
inline std::vector<double> shapiro_wilk_weights(std::size_t n) {
  const std::size_t half = n / 2;
  std::vector<double> a(half);
  if (n == 3) {
    a[0] = std::numbers::sqrt2 / 2.0;
    return a;
  }
  static constexpr std::array<double, 6> c1{0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
  static constexpr std::array<double, 6> c2{0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
  const boost::math::normal_distribution<double> unit;

  const double an = static_cast<double>(n);
  std::vector<double> m(half);
  double summ2 = 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    m[i] = boost::math::quantile(unit, (static_cast<double>(i + 1) - 0.375) / (an + 0.25));
    summ2 += m[i] * m[i];
  }
  summ2 *= 2.0;
  const double ssumm2 = std::sqrt(summ2);
  const double rsn = 1.0 / std::sqrt(an);
  const double a1 = poly(c1, rsn) - m[0] / ssumm2;

  std::size_t first_plain;
  double fac;
  if (n > 5) {
    first_plain = 2;
    const double a2 = -m[1] / ssumm2 + poly(c2, rsn);
    fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
    a[1] = a2;
  } else {
    first_plain = 1;
    fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
  }
  a[0] = a1;
  for (std::size_t i = first_plain; i < half; ++i) a[i] = -m[i] / fac;
  return a;
}

inline double shapiro_wilk_pvalue(double w, std::size_t n) {
  if (n == 3) {
    // Exact for n = 3.
    constexpr double six_over_pi = 6.0 / std::numbers::pi;
    constexpr double asin_sqrt_three_quarters = std::numbers::pi / 3.0;
    return std::clamp(six_over_pi * (std::asin(std::sqrt(w)) - asin_sqrt_three_quarters), 0.0, 1.0);
  }
  if (w >= 1.0) return 1.0;
  static constexpr std::array<double, 2> g{-2.273, 0.459};
  static constexpr std::array<double, 4> c3{0.544, -0.39978, 0.025054, -6.714e-4};
  static constexpr std::array<double, 4> c4{1.3822, -0.77857, 0.062767, -0.0020322};
  static constexpr std::array<double, 4> c5{-1.5861, -0.31082, -0.083751, 0.0038915};
  static constexpr std::array<double, 3> c6{-0.4803, -0.082676, 0.0030302};

  const double an = static_cast<double>(n);
  double y = std::log(1.0 - w);
  double mean;
  double sd;
  if (n <= 11) {
    const double gamma = poly(g, an);
    if (y >= gamma) return 1e-99;  // beyond the transform's support
    y = -std::log(gamma - y);
    mean = poly(c3, an);
    sd = std::exp(poly(c4, an));
  } else {
    const double ln = std::log(an);
    mean = poly(c5, ln);
    sd = std::exp(poly(c6, ln));
  }
  const boost::math::normal_distribution<double> dist(mean, sd);
  return std::clamp(boost::math::cdf(boost::math::complement(dist, y)), 0.0, 1.0);
}

}  // namespace detail

inline NormalityResult shapiro_wilk(std::span<const double> sample, double alpha = 0.05) {
  const std::size_t n = sample.size();
  if (n < 3 || n > 5000) {
    throw RangeError("Shapiro-Wilk needs 3 <= n <= 5000, got n = " + std::to_string(n));
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");

  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double range = x.back() - x.front();
  if (!(range > 0.0)) throw DegenerateInputError("Shapiro-Wilk: all observations are equal");

  const auto a = detail::shapiro_wilk_weights(n);
  // Correlation form, scaled by the range for stability.
  double mean = 0.0;
  for (double v : x) mean += v / range;
  mean /= static_cast<double>(n);

  double ssa = 0.0;
  double ssx = 0.0;
  double sax = 0.0;
  for (std::size_t i = 0, j = n - 1; i < n; ++i, --j) {
    double coef = 0.0;
    if (i < j) coef = -a[i];
    else if (i > j) coef = a[j];
    const double dx = x[i] / range - mean;
    ssa += coef * coef;
    ssx += dx * dx;
    sax += coef * dx;
  }
  const double ssassx = std::sqrt(ssa * ssx);
  const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);

  NormalityResult r;
  r.n = n;
  r.w = std::min(1.0, 1.0 - w1);
  r.p = detail::shapiro_wilk_pvalue(r.w, n);
  r.normal_at_alpha = r.p > alpha;
  return r;
}

}  // namespace dyntest
