#include "pullsim/charfn.hpp"

#include <cmath>
#include <stdexcept>

#include "pullsim/errors.hpp"

namespace pullsim {

namespace {
// exp overflows past ~709.78; keep a margin so the product stays finite.
constexpr double kMaxExponent = 700.0;
}  // namespace

double PhasePair::modulus() const noexcept { return std::hypot(r, im); }

std::complex<double> h_apply(std::complex<double> z) {
  if (z.real() - 1.0 > kMaxExponent) throw std::range_error("h(z): e^(z-1) overflows");
  return z * std::exp(z - 1.0);
}

std::complex<double> h_iterate(std::complex<double> z, std::int64_t times) {
  if (times < 0) throw UsageError("iteration count must be >= 0");
  for (std::int64_t t = 0; t < times; ++t) z = h_apply(z);
  return z;
}

PhasePair phi(double x, std::int64_t generation) {
  if (generation < 0) throw UsageError("generation must be >= 0");
  const double angle = std::ldexp(x, -static_cast<int>(generation));
  const std::complex<double> v = h_iterate(std::polar(1.0, angle), generation);
  return {v.real(), v.imag()};
}

PhasePair f_map(PhasePair p) {
  if (p.r - 1.0 > kMaxExponent) throw std::range_error("F-map: e^(R-1) overflows");
  const double scale = std::exp(p.r - 1.0);
  const double c = std::cos(p.im);
  const double s = std::sin(p.im);
  return {scale * (c * p.r - s * p.im), scale * (s * p.r + c * p.im)};
}

PhasePair f_iterate(PhasePair p, std::int64_t times) {
  if (times < 0) throw UsageError("iteration count must be >= 0");
  for (std::int64_t t = 0; t < times; ++t) p = f_map(p);
  return p;
}

PhasePair phi_planar(double x, std::int64_t generation) {
  if (generation < 0) throw UsageError("generation must be >= 0");
  const double angle = std::ldexp(x, -static_cast<int>(generation));
  return f_iterate({std::cos(angle), std::sin(angle)}, generation);
}

double modulus_recursion_residual(double x, std::int64_t generation) {
  const double lhs = phi(x, generation + 1).modulus();
  const PhasePair half = phi(0.5 * x, generation);
  return std::fabs(lhs - half.modulus() * std::exp(-1.0 + half.r));
}

PhasePair ecf(const EmpiricalDistribution& samples, double x) {
  double c = 0.0;
  double s = 0.0;
  for (double v : samples.samples()) {
    c += std::cos(x * v);
    s += std::sin(x * v);
  }
  const auto n = static_cast<double>(samples.count());
  return {c / n, s / n};
}

std::int64_t decay_depth(double x) {
  if (x == 0.0) return 8;
  return static_cast<std::int64_t>(std::ceil(std::log2(16.0 * std::fabs(x)))) + 8;
}

std::vector<DecayPoint> decay_scan(double start, double stop) {
  if (!(start > 0.0) || stop < start) throw UsageError("decay scan needs 0 < start <= stop");
  std::vector<DecayPoint> out;
  for (double x = start; x <= stop; x *= 2.0) {
    DecayPoint pt;
    pt.x = x;
    pt.generation = decay_depth(x);
    pt.modulus = phi(x, pt.generation).modulus();
    if (!out.empty() && pt.modulus > 0.0 && out.back().modulus > 0.0) {
      pt.slope = std::log(pt.modulus / out.back().modulus) / std::log(x / out.back().x);
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace pullsim
