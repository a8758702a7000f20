#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pullsim {

/// Sorted sample set; the estimated law of a real random variable.
class EmpiricalDistribution {
 public:
  /// Takes ownership and sorts. Throws UsageError on an empty set or a NaN.
  explicit EmpiricalDistribution(std::vector<double> samples);

  std::size_t count() const noexcept { return samples_.size(); }
  std::span<const double> samples() const noexcept { return samples_; }
  double min() const noexcept { return samples_.front(); }
  double max() const noexcept { return samples_.back(); }

  /// Fraction of samples <= v.
  double ecdf_le(double v) const noexcept;
  /// Fraction of samples >= v.
  double ecdf_ge(double v) const noexcept;
  /// Fraction of samples < v.
  double ecdf_lt(double v) const noexcept;
  /// Fraction of samples > v.
  double ecdf_gt(double v) const noexcept;
  double mass_at(double v) const noexcept;

  double mean() const noexcept;
  /// Unbiased (n-1) sample variance; 0 for a single sample.
  double variance() const noexcept;
  /// Lower empirical quantile, q in [0, 1].
  double quantile(double q) const;

  /// Same samples with `delta` added to each.
  EmpiricalDistribution shifted(double delta) const;

 private:
  std::vector<double> samples_;
};

/// sup_v |F_a(v) - F_b(v)| over the two empirical CDFs.
double kolmogorov_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b) noexcept;

}  // namespace pullsim
