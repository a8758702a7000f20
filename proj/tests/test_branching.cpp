#include <cmath>

#include "doctest.h"
#include "pullsim/branching.hpp"
#include "pullsim/errors.hpp"

using namespace pullsim;

TEST_CASE("generation zero") {
  Stream rng(1);
  const BranchingSample s = sample_branching(0, rng);
  CHECK(s.j == 1);
  CHECK(s.h == 1.0);
  for (double x : limit_samples(0, 50, 3)) CHECK(x == 0.0);
  CHECK_THROWS_AS(sample_branching(-1, rng), UsageError);
  CHECK_THROWS_AS(sample_branching(kMaxGeneration + 1, rng), CapacityError);
}

TEST_CASE("closed-form moments") {
  CHECK(j_moments(0) == std::pair{1.0, 1.0});
  CHECK(j_moments(1) == std::pair{2.0, 5.0});
  CHECK(j_moments(3) == std::pair{8.0, 92.0});
  CHECK_THROWS_AS(j_moments(600), std::range_error);
}

TEST_CASE("exact J_1 is 1 + Po(1)") {
  const ExactPmf p = exact_J_pmf(1, 1e-12);
  double fact = 1.0;
  for (int k = 1; k <= 12; ++k) {
    if (k > 1) fact *= (k - 1);
    CHECK(p.at(k) == doctest::Approx(std::exp(-1.0) / fact).epsilon(1e-13));
  }
  CHECK(p.at(0) == 0.0);
}

TEST_CASE("exact J_t: normalisation and closed-form moments for t <= 8") {
  for (std::int64_t t = 0; t <= 8; ++t) {
    CAPTURE(t);
    const ExactPmf p = exact_J_pmf(t, 1e-12);
    CHECK(p.valid());
    const double total = p.total_mass();
    CHECK(total >= 1.0 - 1e-9);
    CHECK(total <= 1.0 + 1e-12);
    CHECK(p.truncation_error <= t * static_cast<double>(p.masses.size()) * 1e-12);
    const auto [m1, m2] = j_moments(t);
    CHECK(std::fabs(p.mean() - m1) / m1 < 1e-6);
    CHECK(std::fabs(p.second_moment() - m2) / m2 < 1e-6);
    CHECK(p.min_support() >= 1);
  }
  CHECK(std::fabs(exact_J_pmf(3).mean() - 8.0) < 1e-6);
  CHECK_THROWS_AS(exact_J_pmf(9), CapacityError);
  CHECK_THROWS_AS(exact_J_pmf(2, 0.0), UsageError);
}

TEST_CASE("sampled J_10 moments") {
  const auto h = sample_martingale(10, 1'000'000, 10);
  double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  for (double v : h) {
    const double j = std::ldexp(v, 10);
    CHECK(j >= 1.0);
    s1 += j;
    s2 += j * j;
    s3 += j * j * j;
    s4 += j * j * j * j;
  }
  const double n = static_cast<double>(h.size());
  const auto [m1, m2] = j_moments(10);
  const double se1 = std::sqrt((s2 / n - (s1 / n) * (s1 / n)) / n);
  const double se2 = std::sqrt((s4 / n - (s2 / n) * (s2 / n)) / n);
  CHECK(std::fabs(s1 / n - m1) < 4 * se1);
  CHECK(std::fabs(s2 / n - m2) < 4 * se2);
}

TEST_CASE("checkpoints observe one path at several generations") {
  const std::int64_t gens[] = {0, 3, 3, 9};
  const auto paths = sample_martingale_checkpoints(gens, 200, 5);
  const auto direct = sample_martingale(9, 200, 5);
  for (std::size_t i = 0; i < 200; ++i) {
    CHECK(paths[0][i] == 1.0);
    CHECK(paths[1][i] == paths[2][i]);
    CHECK(paths[3][i] == direct[i]);
    CHECK(paths[3][i] >= std::ldexp(1.0, -9));
  }
  const std::int64_t bad[] = {4, 2};
  CHECK_THROWS_AS(sample_martingale_checkpoints(bad, 10, 1), UsageError);
}

TEST_CASE("Kolmogorov distance between H_t and H_{t+2} shrinks along t") {
  // Coupled paths: each ECDF is still built from 10^6 draws of its own law.
  const std::int64_t gens[] = {8, 10, 12, 14, 16, 18, 20, 22, 24, 26};
  const auto paths = sample_martingale_checkpoints(gens, 1'000'000, 2024);
  double previous = 1.0;
  for (std::size_t c = 0; c + 1 < std::size(gens); c += 2) {
    const EmpiricalDistribution a(paths[c]);
    const EmpiricalDistribution b(paths[c + 1]);
    const double d = kolmogorov_distance(a, b);
    CAPTURE(gens[c]);
    CHECK(d < previous);
    previous = d;
  }
}
