#include "pullsim/pmf.hpp"

#include <cmath>

namespace pullsim {

namespace {
// Summation in Neumaier form; long tails of tiny masses otherwise lose
// the last digits the moment checks look at.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) noexcept {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  double value() const noexcept { return sum + carry; }
};
}  // namespace

double ExactPmf::total_mass() const noexcept {
  CompensatedSum s;
  for (double m : masses) s.add(m);
  return s.value();
}

double ExactPmf::mean() const noexcept {
  CompensatedSum s;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    s.add(masses[i] * static_cast<double>(support_offset + static_cast<std::int64_t>(i)));
  }
  return s.value();
}

double ExactPmf::second_moment() const noexcept {
  CompensatedSum s;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    const double k = static_cast<double>(support_offset + static_cast<std::int64_t>(i));
    s.add(masses[i] * k * k);
  }
  return s.value();
}

bool ExactPmf::valid() const noexcept {
  for (double m : masses) {
    if (!(m >= 0.0)) return false;
  }
  if (!(truncation_error >= 0.0)) return false;
  const double total = total_mass() + truncation_error;
  return total >= 1.0 - 1e-9 && total <= 1.0 + 1e-9;
}

}  // namespace pullsim
