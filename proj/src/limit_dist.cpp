#include "pullsim/limit_dist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pullsim/errors.hpp"
#include "pullsim/parallel.hpp"

namespace pullsim {

namespace {

// P(Y >= k) = P(X > k - 1 - x) and P(Y <= k) = P(X <= k - x).
double tail_ge(const EmpiricalDistribution& d, std::int64_t k, double x) {
  return d.ecdf_gt(static_cast<double>(k - 1) - x);
}
double tail_le(const EmpiricalDistribution& d, std::int64_t k, double x) {
  return d.ecdf_le(static_cast<double>(k) - x);
}

// Past this k both tails are empty for every sample.
std::int64_t series_limit(const EmpiricalDistribution& d, double x) {
  const double reach = std::max(d.max() + x + 1.0, -d.min() - x);
  return static_cast<std::int64_t>(std::ceil(std::max(reach, 0.0))) + 1;
}

void check_shift(double x_shift) {
  if (!std::isfinite(x_shift)) throw UsageError("x_shift must be finite");
}

}  // namespace

double LatticeLaw::at(std::int64_t k) const noexcept {
  const std::int64_t i = k - first_k;
  if (i < 0 || i >= static_cast<std::int64_t>(atoms.size())) return 0.0;
  return atoms[static_cast<std::size_t>(i)];
}

double LatticeLaw::total() const noexcept {
  double s = 0.0;
  for (double a : atoms) s += a;
  return s;
}

double LatticeLaw::mean() const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    s += static_cast<double>(first_k + static_cast<std::int64_t>(i)) * atoms[i];
  }
  return s;
}

double LatticeLaw::second_moment() const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto k = static_cast<double>(first_k + static_cast<std::int64_t>(i));
    s += k * k * atoms[i];
  }
  return s;
}

LatticeLaw lattice_law(const EmpiricalDistribution& dist, double x_shift) {
  check_shift(x_shift);
  const auto lo = static_cast<std::int64_t>(std::floor(dist.min() + x_shift)) - 1;
  const auto hi = static_cast<std::int64_t>(std::ceil(dist.max() + x_shift)) + 1;
  LatticeLaw law;
  law.x_shift = x_shift;
  double below = tail_le(dist, lo - 1, x_shift);
  std::vector<double> atoms;
  atoms.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t k = lo; k <= hi; ++k) {
    const double upto = tail_le(dist, k, x_shift);
    atoms.push_back(upto - below);
    below = upto;
  }
  std::size_t first = 0;
  while (first + 1 < atoms.size() && atoms[first] <= 0.0) ++first;
  std::size_t last = atoms.size();
  while (last > first + 1 && atoms[last - 1] <= 0.0) --last;
  law.first_k = lo + static_cast<std::int64_t>(first);
  law.atoms.assign(atoms.begin() + static_cast<std::ptrdiff_t>(first),
                   atoms.begin() + static_cast<std::ptrdiff_t>(last));
  return law;
}

double lattice_mean(const EmpiricalDistribution& dist, double x_shift) {
  check_shift(x_shift);
  const std::int64_t limit = series_limit(dist, x_shift);
  double s = 0.0;
  for (std::int64_t k = 1; k <= limit; ++k) {
    s += tail_ge(dist, k, x_shift) - tail_le(dist, -k, x_shift);
  }
  return s;
}

double lattice_second(const EmpiricalDistribution& dist, double x_shift) {
  check_shift(x_shift);
  const std::int64_t limit = series_limit(dist, x_shift);
  double s = 0.0;
  for (std::int64_t k = 1; k <= limit; ++k) {
    const auto kd = static_cast<double>(k);
    s += kd * tail_ge(dist, k, x_shift) + (kd - 1.0) * tail_le(dist, -k, x_shift);
  }
  return 2.0 * s - lattice_mean(dist, x_shift);
}

double lattice_variance(const EmpiricalDistribution& dist, double x_shift) {
  const double m = lattice_mean(dist, x_shift);
  return lattice_second(dist, x_shift) - m * m;
}

double lattice_signed_series(const EmpiricalDistribution& dist, double x_shift) {
  check_shift(x_shift);
  const std::int64_t limit = series_limit(dist, x_shift);
  double s = 0.0;
  for (std::int64_t k = 1; k <= limit; ++k) {
    s += static_cast<double>(k) * (tail_ge(dist, k, x_shift) - tail_le(dist, -k, x_shift));
  }
  return 2.0 * s;
}

double scott_bandwidth(const EmpiricalDistribution& dist) {
  if (dist.count() < 2) throw UsageError("kernel density needs at least two samples");
  const double sd = std::sqrt(dist.variance());
  if (!(sd > 0.0)) throw DegenerateInputError("kernel density: samples have zero variance");
  return std::pow(static_cast<double>(dist.count()), -0.2) * sd;
}

double resolve_bandwidth(const EmpiricalDistribution& dist, const Bandwidth& bw) {
  if (std::holds_alternative<ScottRule>(bw)) return scott_bandwidth(dist);
  const double h = std::get<double>(bw);
  if (!(h > 0.0) || !std::isfinite(h)) throw UsageError("bandwidth must be positive");
  if (dist.count() < 2) throw UsageError("kernel density needs at least two samples");
  if (!(dist.variance() > 0.0)) {
    throw DegenerateInputError("kernel density: samples have zero variance");
  }
  return h;
}

std::vector<double> kde_density(const EmpiricalDistribution& dist, std::span<const double> grid,
                                const Bandwidth& bw) {
  const double h = resolve_bandwidth(dist, bw);
  // exp(-0.5 * 9^2) ~ 2.6e-18: beyond nine bandwidths a sample adds nothing visible.
  constexpr double kCutoff = 9.0;
  const double norm = 1.0 / (static_cast<double>(dist.count()) * h * std::sqrt(2.0 * std::numbers::pi));
  const auto samples = dist.samples();
  std::vector<double> out(grid.size(), 0.0);
  parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t g = begin; g < end; ++g) {
      const double at = grid[g];
      const auto lo = std::lower_bound(samples.begin(), samples.end(), at - kCutoff * h);
      const auto hi = std::upper_bound(lo, samples.end(), at + kCutoff * h);
      double s = 0.0;
      for (auto it = lo; it != hi; ++it) {
        const double z = (at - *it) / h;
        s += std::exp(-0.5 * z * z);
      }
      out[g] = s * norm;
    }
  });
  return out;
}

std::vector<double> kde_grid(const EmpiricalDistribution& dist, std::size_t points,
                             double bandwidth, double pad) {
  if (points < 2) throw UsageError("grid needs at least two points");
  const double lo = dist.min() - pad * bandwidth;
  const double hi = dist.max() + pad * bandwidth;
  std::vector<double> grid(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = lo + step * static_cast<double>(i);
  return grid;
}

DensityPeak density_peak(std::span<const double> grid, std::span<const double> density) {
  if (grid.empty() || grid.size() != density.size()) {
    throw UsageError("density peak: grid and values must be non-empty and equal length");
  }
  const auto it = std::max_element(density.begin(), density.end());
  const auto idx = static_cast<std::size_t>(it - density.begin());
  return {grid[idx], *it};
}

double trapezoid(std::span<const double> grid, std::span<const double> values) {
  if (grid.size() != values.size()) throw UsageError("trapezoid: size mismatch");
  double s = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    s += 0.5 * (grid[i] - grid[i - 1]) * (values[i] + values[i - 1]);
  }
  return s;
}

}  // namespace pullsim
