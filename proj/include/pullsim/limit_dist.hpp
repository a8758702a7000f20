#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "pullsim/empirical.hpp"

namespace pullsim {

/// Integer law (X + x)|_Z defined by P(Y <= k) = P(X <= k - x).
struct LatticeLaw {
  double x_shift = 0.0;
  std::int64_t first_k = 0;
  std::vector<double> atoms;  // atoms[i] = P(Y = first_k + i)

  double at(std::int64_t k) const noexcept;
  std::int64_t last_k() const noexcept {
    return first_k + static_cast<std::int64_t>(atoms.size()) - 1;
  }
  double total() const noexcept;
  double mean() const noexcept;
  double second_moment() const noexcept;
};

LatticeLaw lattice_law(const EmpiricalDistribution& dist, double x_shift);

/// E[Y] by the tail series sum_{k>=1} P(Y >= k) - P(Y <= -k).
double lattice_mean(const EmpiricalDistribution& dist, double x_shift);

/// E[Y^2] by tail series: E[Y^2 + Y] = 2 sum_{k>=1} k P(Y >= k) + (k-1) P(Y <= -k),
/// minus E[Y].
double lattice_second(const EmpiricalDistribution& dist, double x_shift);
double lattice_variance(const EmpiricalDistribution& dist, double x_shift);

/// The series 2 sum_{k>=1} k (P(Y >= k) - P(Y <= -k)). Equals E[Y^2 + Y] only
/// when Y >= 0 almost surely; otherwise it is short by 2 E[min(Y,0)^2].
double lattice_signed_series(const EmpiricalDistribution& dist, double x_shift);

struct ScottRule {};
using Bandwidth = std::variant<ScottRule, double>;

/// count^(-1/5) times the unbiased sample standard deviation.
double scott_bandwidth(const EmpiricalDistribution& dist);
double resolve_bandwidth(const EmpiricalDistribution& dist, const Bandwidth& bw);

/// Gaussian kernel density estimate on `grid`.
std::vector<double> kde_density(const EmpiricalDistribution& dist, std::span<const double> grid,
                                const Bandwidth& bw = ScottRule{});

/// `points` equally spaced values from min - pad*h to max + pad*h.
std::vector<double> kde_grid(const EmpiricalDistribution& dist, std::size_t points,
                             double bandwidth, double pad = 5.0);

struct DensityPeak {
  double location = 0.0;
  double value = 0.0;
};
DensityPeak density_peak(std::span<const double> grid, std::span<const double> density);

/// Trapezoid rule over a grid.
double trapezoid(std::span<const double> grid, std::span<const double> values);

}  // namespace pullsim
