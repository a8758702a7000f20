#include "pullsim/empirical.hpp"

#include <algorithm>
#include <cmath>

#include "pullsim/errors.hpp"

namespace pullsim {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples)
    : samples_(std::move(samples)) {
  if (samples_.empty()) throw UsageError("empirical distribution needs at least one sample");
  if (std::any_of(samples_.begin(), samples_.end(), [](double v) { return std::isnan(v); })) {
    throw UsageError("empirical distribution: NaN sample");
  }
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalDistribution::ecdf_le(double v) const noexcept {
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), v);
  return static_cast<double>(it - samples_.begin()) / static_cast<double>(count());
}

double EmpiricalDistribution::ecdf_lt(double v) const noexcept {
  const auto it = std::lower_bound(samples_.begin(), samples_.end(), v);
  return static_cast<double>(it - samples_.begin()) / static_cast<double>(count());
}

double EmpiricalDistribution::ecdf_ge(double v) const noexcept {
  const auto it = std::lower_bound(samples_.begin(), samples_.end(), v);
  return static_cast<double>(samples_.end() - it) / static_cast<double>(count());
}

double EmpiricalDistribution::ecdf_gt(double v) const noexcept {
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), v);
  return static_cast<double>(samples_.end() - it) / static_cast<double>(count());
}

double EmpiricalDistribution::mass_at(double v) const noexcept {
  const auto [lo, hi] = std::equal_range(samples_.begin(), samples_.end(), v);
  return static_cast<double>(hi - lo) / static_cast<double>(count());
}

double EmpiricalDistribution::mean() const noexcept {
  double s = 0.0;
  for (double v : samples_) s += v;
  return s / static_cast<double>(count());
}

double EmpiricalDistribution::variance() const noexcept {
  if (count() < 2) return 0.0;
  const double m = mean();
  double s = 0.0;
  for (double v : samples_) s += (v - m) * (v - m);
  return s / static_cast<double>(count() - 1);
}

double EmpiricalDistribution::quantile(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) throw UsageError("quantile level must lie in [0, 1]");
  const auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(count())));
  return samples_[idx == 0 ? 0 : std::min(idx, count()) - 1];
}

EmpiricalDistribution EmpiricalDistribution::shifted(double delta) const {
  std::vector<double> out(samples_);
  for (double& v : out) v += delta;
  return EmpiricalDistribution(std::move(out));
}

double kolmogorov_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b) noexcept {
  const auto xs = a.samples();
  const auto ys = b.samples();
  const double na = static_cast<double>(xs.size());
  const double nb = static_cast<double>(ys.size());
  std::size_t i = 0, j = 0;
  double best = 0.0;
  while (i < xs.size() || j < ys.size()) {
    const double v = j == ys.size() || (i < xs.size() && xs[i] <= ys[j]) ? xs[i] : ys[j];
    while (i < xs.size() && xs[i] == v) ++i;
    while (j < ys.size() && ys[j] == v) ++j;
    best = std::max(best, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return best;
}

}  // namespace pullsim
