#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pullsim {

/// Principal branch W0 on [0, inf) by Halley iteration. Generic over the
/// real type so the same iteration runs in double and in multiprecision
/// (any type with ADL-visible exp/log/abs and std::numeric_limits).
template <typename Real>
Real lambert_w0(const Real& z) {
  using std::abs;
  using std::exp;
  using std::log;
  if (z < Real(0)) throw std::domain_error("lambert_w0: argument must be >= 0");
  if (z == Real(0)) return Real(0);
  Real w;
  if (z < Real(3)) {
    w = log(Real(1) + z) * Real(0.7);
  } else {
    const Real l1 = log(z);
    const Real l2 = log(l1);
    w = l1 - l2 + l2 / l1;
  }
  const Real tol = Real(4) * std::numeric_limits<Real>::epsilon();
  for (int iter = 0; iter < 200; ++iter) {
    const Real ew = exp(w);
    const Real f = w * ew - z;
    const Real wp1 = w + Real(1);
    const Real step = f / (ew * wp1 - (w + Real(2)) * f / (Real(2) * wp1));
    w -= step;
    if (abs(step) <= tol * (Real(1) + abs(w))) break;
  }
  return w;
}

inline double lambert_w(double z) { return lambert_w0<double>(z); }

}  // namespace pullsim
