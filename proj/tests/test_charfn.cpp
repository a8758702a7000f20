#include <cmath>
#include <complex>

#include "doctest.h"
#include "pullsim/branching.hpp"
#include "pullsim/charfn.hpp"
#include "pullsim/errors.hpp"

using namespace pullsim;

namespace {

// Reference values computed with 30-digit arithmetic.
constexpr double kH05 = 0.303265329856316711801899767496;
constexpr double kHH05 = 0.1510896589187529897954575283;

std::complex<double> phi_from_pmf(const ExactPmf& p, double x, std::int64_t t) {
  std::complex<double> s = 0.0;
  for (std::int64_t k = p.min_support(); k <= p.max_support(); ++k) {
    s += p.at(k) * std::exp(std::complex<double>(0.0, x * std::ldexp(double(k), int(-t))));
  }
  return s;
}

}  // namespace

TEST_CASE("h iterates at real points") {
  CHECK(h_apply(1.0) == std::complex<double>(1.0, 0.0));
  CHECK(h_apply(0.5).real() == doctest::Approx(kH05).epsilon(1e-15));
  CHECK(h_iterate(0.5, 2).real() == doctest::Approx(kHH05).epsilon(1e-15));
  CHECK(h_iterate(0.5, 0) == std::complex<double>(0.5));
  CHECK_THROWS_AS(h_apply(800.0), std::range_error);
  CHECK_THROWS_AS(h_iterate(0.5, -1), UsageError);
}

TEST_CASE("phi at the origin and generation zero") {
  for (std::int64_t t : {0, 1, 5, 30}) {
    const PhasePair p = phi(0.0, t);
    CHECK(p.r == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::fabs(p.im) < 1e-15);
  }
  for (double x : {0.3, 2.0, -7.5}) {
    const PhasePair p = phi(x, 0);
    CHECK(p.r == doctest::Approx(std::cos(x)));
    CHECK(p.im == doctest::Approx(std::sin(x)));
  }
}

TEST_CASE("phi matches the transform of the exact law of J_t") {
  for (std::int64_t t = 1; t <= 6; ++t) {
    const ExactPmf p = exact_J_pmf(t, 1e-14);
    for (double x : {0.3, 1.0, 4.0, -2.5, 20.0}) {
      CAPTURE(t);
      CAPTURE(x);
      const auto ref = phi_from_pmf(p, x, t);
      const PhasePair got = phi(x, t);
      CHECK(std::abs(got.as_complex() - ref) < 1e-9);
      CHECK(got.modulus() <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("phi is Hermitian") {
  for (double x : {0.7, 3.0, 11.0}) {
    const PhasePair a = phi(x, 12);
    const PhasePair b = phi(-x, 12);
    CHECK(a.r == doctest::Approx(b.r).epsilon(1e-13));
    CHECK(a.im == doctest::Approx(-b.im).epsilon(1e-13));
  }
}

TEST_CASE("planar map agrees with the complex iteration") {
  for (double x : {0.3, 1.0, 4.0, 20.0}) {
    for (std::int64_t t : {1, 4, 10, 16}) {
      const PhasePair a = phi(x, t);
      const PhasePair b = phi_planar(x, t);
      CHECK(std::fabs(a.r - b.r) < 1e-12);
      CHECK(std::fabs(a.im - b.im) < 1e-12);
    }
  }
  const PhasePair fixed = f_map({1.0, 0.0});
  CHECK(fixed.r == 1.0);
  CHECK(fixed.im == 0.0);
}

TEST_CASE("modulus recursion holds") {
  for (double x : {0.5, 3.0, 40.0}) {
    for (std::int64_t t : {0, 3, 12}) CHECK(modulus_recursion_residual(x, t) < 1e-12);
  }
}

TEST_CASE("empirical transform of H_10 tracks phi_10") {
  const EmpiricalDistribution h(sample_martingale(10, 200000, 31));
  for (double x : {1.0, 2.0, 5.0}) {
    const PhasePair e = ecf(h, x);
    const PhasePair p = phi(x, 10);
    // each coordinate has standard deviation at most 1/sqrt(count)
    CHECK(std::fabs(e.r - p.r) < 5.0 / std::sqrt(200000.0));
    CHECK(std::fabs(e.im - p.im) < 5.0 / std::sqrt(200000.0));
  }
}

TEST_CASE("decay scan") {
  CHECK(decay_depth(0.0) == 8);
  CHECK(decay_depth(1.0) == 12);
  CHECK(decay_depth(-1.0) == 12);
  CHECK(decay_depth(3.0) == 14);
  const auto pts = decay_scan(1.0, 64.0);
  REQUIRE(pts.size() == 7);
  CHECK(pts.front().slope == 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(pts[i].x == std::ldexp(1.0, int(i)));
    CHECK(pts[i].generation == decay_depth(pts[i].x));
    CHECK(pts[i].modulus > 0.0);
    CHECK(pts[i].modulus < 1.0);
    if (i > 0) {
      const double s = std::log(pts[i].modulus / pts[i - 1].modulus) / std::log(2.0);
      CHECK(pts[i].slope == doctest::Approx(s));
    }
  }
  CHECK_THROWS_AS(decay_scan(0.0, 1.0), UsageError);
}
