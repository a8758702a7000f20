#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "pullsim/empirical.hpp"

namespace pullsim {

/// Real and imaginary part of a characteristic-function value.
struct PhasePair {
  double r = 1.0;
  double im = 0.0;

  double modulus() const noexcept;
  std::complex<double> as_complex() const noexcept { return {r, im}; }
};

/// h(z) = z e^(z-1), the generating-function step of J_{t+1} = J_t + Po(J_t).
/// Throws std::range_error when e^(Re z - 1) overflows.
std::complex<double> h_apply(std::complex<double> z);
std::complex<double> h_iterate(std::complex<double> z, std::int64_t times);

/// Characteristic function of H_t at x: h applied t times to e^(i x 2^-t).
PhasePair phi(double x, std::int64_t generation);

/// The same map in planar form: (R, I) -> e^(R-1) * rotation(I) * (R, I).
PhasePair f_map(PhasePair p);
PhasePair f_iterate(PhasePair p, std::int64_t times);

/// phi evaluated through f_iterate from (cos(x 2^-t), sin(x 2^-t)).
PhasePair phi_planar(double x, std::int64_t generation);

/// |a_{t+1}(x) - a_t(x/2) exp(-1 + R_t(x/2))| with a_t = |phi_t|.
double modulus_recursion_residual(double x, std::int64_t generation);

/// Mean of e^(i x s) over the samples.
PhasePair ecf(const EmpiricalDistribution& samples, double x);

/// Depth used for decay scans at frequency x: ceil(log2(16|x|)) + 8.
std::int64_t decay_depth(double x);

struct DecayPoint {
  double x = 0.0;
  std::int64_t generation = 0;
  double modulus = 0.0;
  double slope = 0.0;  // log-log slope against the previous point; 0 for the first
};

/// |phi_t(x)| along x = start, 2*start, ... <= stop with t = decay_depth(x).
std::vector<DecayPoint> decay_scan(double start, double stop);

}  // namespace pullsim
