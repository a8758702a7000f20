#include "pullsim/variates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace pullsim {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;
constexpr double kSmallMeanCutoff = 10.0;

const std::array<double, 10>& stirling_table() {
  static const std::array<double, 10> table = [] {
    std::array<double, 10> t{};
    for (int k = 0; k < 10; ++k) {
      const double kp1 = k + 1.0;
      t[k] = std::lgamma(kp1) - ((k + 0.5) * std::log(kp1) - kp1 + kHalfLog2Pi);
    }
    return t;
  }();
  return table;
}

std::int64_t binomial_inversion(Stream& rng, std::int64_t n, double p) {
  const double q = 1.0 - p;
  const double qn = std::exp(static_cast<double>(n) * std::log1p(-p));
  const double np = static_cast<double>(n) * p;
  // Restart past the far tail; guards against U never dropping below px
  // after rounding. The cut-off mass is below 1e-15.
  const double bound = std::min(static_cast<double>(n), np + 10.0 * std::sqrt(np * q + 1.0));
  std::int64_t x = 0;
  double px = qn;
  double u = rng.uniform01();
  while (u > px) {
    ++x;
    if (static_cast<double>(x) > bound) {
      x = 0;
      px = qn;
      u = rng.uniform01();
    } else {
      u -= px;
      px = (static_cast<double>(n - x + 1) * p * px) / (static_cast<double>(x) * q);
    }
  }
  return x;
}

std::int64_t binomial_btrs(Stream& rng, std::int64_t n, double p) {
  const double q = 1.0 - p;
  const double nd = static_cast<double>(n);
  const double spq = std::sqrt(nd * p * q);
  const double b = 1.15 + 2.53 * spq;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = nd * p + 0.5;
  const double v_r = 0.92 - 4.2 / b;
  const double alpha = (2.83 + 5.1 / b) * spq;
  const auto m = static_cast<std::int64_t>(std::floor((nd + 1.0) * p));
  while (true) {
    const double u = rng.uniform01() - 0.5;
    double v = rng.uniform01();
    const double us = 0.5 - std::fabs(u);
    if (us <= 0.0) continue;
    const double kf = std::floor((2.0 * a / us + b) * u + c);
    if (kf < 0.0 || kf > nd) continue;
    const auto k = static_cast<std::int64_t>(kf);
    if (us >= 0.07 && v <= v_r) return k;
    if (v <= 0.0) return k;  // log(0) accepts against any finite bound
    v = std::log(v * alpha / (a / (us * us) + b));
    if (v <= binomial_log_ratio(n, p, k, m)) return k;
  }
}

std::int64_t poisson_inversion(Stream& rng, double lambda) {
  const double p0 = std::exp(-lambda);
  std::int64_t x = 0;
  double px = p0;
  double u = rng.uniform01();
  while (u > px) {
    ++x;
    if (x > 200) {  // lambda < 10: P(X > 200) is far below double resolution
      x = 0;
      px = p0;
      u = rng.uniform01();
    } else {
      u -= px;
      px *= lambda / static_cast<double>(x);
    }
  }
  return x;
}

std::int64_t poisson_ptrs(Stream& rng, double lambda) {
  const double slam = std::sqrt(lambda);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double log_inv_alpha = std::log(1.1239 + 1.1328 / (b - 3.4));
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  while (true) {
    const double u = rng.uniform01() - 0.5;
    const double v = rng.uniform01();
    const double us = 0.5 - std::fabs(u);
    if (us <= 0.0) continue;
    const double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    if (v <= 0.0) return static_cast<std::int64_t>(kf);
    const auto k = static_cast<std::int64_t>(kf);
    if (std::log(v) + log_inv_alpha - std::log(a / (us * us) + b) <= poisson_log_pmf(k, lambda)) {
      return k;
    }
  }
}

}  // namespace

double stirling_tail(std::int64_t k) noexcept {
  if (k < 10) return stirling_table()[static_cast<std::size_t>(k)];
  const double kp1 = static_cast<double>(k) + 1.0;
  const double inv = 1.0 / kp1;
  const double inv2 = inv * inv;
  return inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0));
}

double log_factorial_diff(std::int64_t a, std::int64_t b) noexcept {
  if (a == b) return 0.0;
  const double ad = static_cast<double>(a);
  const double bd = static_cast<double>(b);
  const double d = ad - bd;
  return (ad + 0.5) * std::log1p(d / (bd + 1.0)) + d * (std::log(bd + 1.0) - 1.0) +
         stirling_tail(a) - stirling_tail(b);
}

double binomial_log_ratio(std::int64_t n, double p, std::int64_t k, std::int64_t m) noexcept {
  const double log_odds = std::log(p) - std::log1p(-p);
  return log_factorial_diff(m, k) + log_factorial_diff(n - m, n - k) +
         static_cast<double>(k - m) * log_odds;
}

double poisson_log_pmf(std::int64_t k, double lambda) noexcept {
  if (k < 0) return -std::numeric_limits<double>::infinity();
  if (lambda == 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  const double kd = static_cast<double>(k);
  const double shift = kd + 1.0 - lambda;
  return shift - kd * std::log1p(shift / lambda) - 0.5 * std::log(kd + 1.0) - kHalfLog2Pi -
         stirling_tail(k);
}

double binomial_log_pmf(std::int64_t n, double p, std::int64_t k) noexcept {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  if (p <= 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return k == n ? 0.0 : -std::numeric_limits<double>::infinity();
  // log C(n,k) = log n! - log k! - log (n-k)!, each difference taken stably.
  const double log_choose = k <= n - k ? log_factorial_diff(n, n - k) - log_factorial_diff(k, 0)
                                       : log_factorial_diff(n, k) - log_factorial_diff(n - k, 0);
  return log_choose + static_cast<double>(k) * std::log(p) +
         static_cast<double>(n - k) * std::log1p(-p);
}

std::int64_t binomial(Stream& rng, std::int64_t n, double p) {
  if (n < 0 || !(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("binomial: need n >= 0 and p in [0, 1]");
  }
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - binomial(rng, n, 1.0 - p);
  if (static_cast<double>(n) * p < kSmallMeanCutoff) return binomial_inversion(rng, n, p);
  return binomial_btrs(rng, n, p);
}

std::int64_t poisson(Stream& rng, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("poisson: need finite lambda >= 0");
  }
  if (lambda == 0.0) return 0;
  if (lambda < kSmallMeanCutoff) return poisson_inversion(rng, lambda);
  return poisson_ptrs(rng, lambda);
}

}  // namespace pullsim
