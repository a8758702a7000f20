#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "doctest.h"
#include "pullsim/asymptotics.hpp"
#include "pullsim/branching.hpp"
#include "pullsim/errors.hpp"
#include "pullsim/lambert.hpp"
#include "pullsim/rumor.hpp"

using namespace pullsim;

TEST_CASE("Lambert W reference values") {
  CHECK(lambert_w(0.0) == 0.0);
  CHECK(lambert_w(1.0) == doctest::Approx(0.56714329040978387299996866221).epsilon(1e-15));
  CHECK(lambert_w(16.0) == doctest::Approx(2.05319271746264858727757305707).epsilon(1e-15));
  CHECK(lambert_w(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  for (double z : {1e-6, 0.1, 2.5, 1e3, 1e12, 1e300}) {
    const double w = lambert_w(z);
    CHECK(w * std::exp(w) == doctest::Approx(z).epsilon(1e-13));
  }
  CHECK_THROWS_AS(lambert_w(-0.1), std::domain_error);

  using Big = boost::multiprecision::cpp_bin_float_50;
  const Big w = lambert_w0(Big(16));
  CHECK(std::fabs(static_cast<double>(w - Big("2.05319271746264858727757305707"))) < 1e-28);
}

TEST_CASE("subsequence members") {
  CHECK(subsequence_member(0.0, 4) == 7);
  CHECK(subsequence_member(0.5, 20) == 126248);
  CHECK(subsequence_member(0.5, 23) == 867611);
  CHECK(subsequence_member(0.25, 30) == 70651384);
  CHECK(subsequence_member_near(0.5, 1e6) == 867611);
  CHECK_THROWS_AS(subsequence_member(0.0, 80), CapacityError);
  CHECK_THROWS_AS(subsequence({1.0, 10, 12}), std::domain_error);
  CHECK_THROWS_AS(subsequence({0.0, 0, 2}), std::domain_error);

  const auto terms = subsequence({0.0, 60, 80});
  REQUIRE(terms.size() == 21);
  CHECK(terms.front().n_decimal == "30378015653976795");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    CHECK(terms[i].index == 60 + static_cast<std::int64_t>(i));
    CHECK(terms[i].distance < 1e-6);
    if (i > 0) CHECK(terms[i].n_value > terms[i - 1].n_value);
  }
  // above 2^64 the decimal string carries the exact value
  CHECK(terms.back().n_decimal.size() > 20);
}

TEST_CASE("circular distance") {
  CHECK(circular_distance(0.99, 0.0) == doctest::Approx(0.01));
  CHECK(circular_distance(0.25, 0.75) == doctest::Approx(0.5));
  CHECK(circular_distance(0.3, 0.3) == 0.0);
}

TEST_CASE("total variation distance") {
  const ExactPmf a = exact_informed_pmf(4, 1);
  const ExactPmf b = exact_J_pmf(1, 1e-15);
  // 1 + Bin(3, 1/4) against 1 + Po(1), reference from 30-digit arithmetic
  CHECK(tv_distance(a, b).value == doctest::Approx(0.107991117657115356808952459677).epsilon(1e-12));
  CHECK(tv_distance(a, a).value == 0.0);
  CHECK(tv_distance(a, b).value == tv_distance(b, a).value);
  const ExactPmf c = ExactPmf::point_mass(3);
  CHECK(tv_distance(a, c).value <= tv_distance(a, b).value + tv_distance(b, c).value + 1e-15);
  CHECK(tv_distance(ExactPmf::point_mass(1), ExactPmf::point_mass(2)).value == 1.0);
}

TEST_CASE("TV bound holds at n = 4096") {
  const auto reps = verify_tv_bound(4096, 5);
  REQUIRE(reps.size() == 6);
  CHECK(reps[0].observed == 0.0);
  for (const auto& r : reps) {
    CHECK(r.passed);
    CHECK(r.metadata["uncertainty"].get<double>() < 1e-9);
  }
  CHECK_THROWS_AS(verify_tv_bound(1 << 15, 1), CapacityError);
}

TEST_CASE("recurrence start round") {
  CHECK(recurrence_start_round(1) == 0);
  CHECK(recurrence_start_round(7) == 0);
  CHECK(recurrence_start_round(8) == 1);
  CHECK(recurrence_start_round(1 << 20) == 6);
  CHECK(recurrence_start_round(1'000'000) == 6);
}

TEST_CASE("recurrence check is trivially tight at its first round") {
  // runtime equals t1: only t = 0 is checked and both sides agree
  RunRecord r{8, 1, {1, 8}};
  const VerificationReport rep = verify_recurrence(r);
  CHECK(rep.observed == 0.0);
  CHECK(rep.passed);
  CHECK(rep.metadata["checked"] == 1);
  CHECK_THROWS_AS(verify_recurrence(RunRecord{8, 1, {}}), UsageError);
}

TEST_CASE("runtime centering") {
  CHECK(runtime_centering(1024) == doctest::Approx(10.0 + std::log2(std::log(1024.0))));
  CHECK_THROWS_AS(runtime_centering(1), std::domain_error);
}

TEST_CASE("Theorem-1 distance basics") {
  const EmpiricalDistribution limit({-0.4, 0.1, 0.6, 1.3, 2.2});
  const double c = 10.25;
  std::vector<double> rt;
  for (double x : limit.samples()) rt.push_back(std::ceil(c + x));
  const EmpiricalDistribution runtimes(rt);
  CHECK(theorem1_distance_at(runtimes, limit, c) == 0.0);
  // whole-unit shifts of both laws leave the distance alone
  const double shifted_c = c + 3.0;
  CHECK(theorem1_distance_at(runtimes.shifted(3.0), limit, shifted_c) == 0.0);
  const EmpiricalDistribution other({9.0, 10.0, 14.0});
  const double d = theorem1_distance_at(other, limit, c);
  CHECK(d >= 0.0);
  CHECK(d <= 1.0);
  CHECK(theorem1_distance_at(other.shifted(2.0), limit, c + 2.0) == doctest::Approx(d));
  const auto curve = theorem1_curve(other, limit, c);
  double worst = 0.0;
  for (const auto& row : curve) worst = std::max(worst, std::fabs(row.runtime_tail - row.limit_tail));
  CHECK(worst == doctest::Approx(d));
  // far separated laws are at distance one
  CHECK(theorem1_distance_at(other.shifted(100.0), limit, c) == 1.0);
}

TEST_CASE("residual scan: standard error shrinks like runs^-1/2") {
  const std::int64_t ns[] = {4096};
  const auto small = runtime_residual_scan(ns, 2000, 1);
  const auto large = runtime_residual_scan(ns, 8000, 1);
  CHECK(small[0].standard_error / large[0].standard_error == doctest::Approx(2.0).epsilon(0.15));
  CHECK(small[0].residual == doctest::Approx(small[0].mean - runtime_centering(4096)));
  CHECK_THROWS_AS(runtime_residual_scan(ns, 1, 1), UsageError);
}

TEST_CASE("tail decay on a constant runtime set") {
  const EmpiricalDistribution runtimes(std::vector<double>(100, 21.0));
  const std::int64_t rs[] = {0, 1, 2, 3};
  const TailDecay t = tail_decay_check(runtimes, rs);
  CHECK(t.mean == 21.0);
  CHECK(t.rows[0].probability == 1.0);
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    CHECK(t.rows[i].probability == 0.0);
    CHECK(t.rows[i].censored);
  }
}

TEST_CASE("tail decay on a geometric set is monotone") {
  const RuntimeEnsemble e = ensemble(2, 200000, 3);
  const std::int64_t rs[] = {0, 1, 2, 3, 4, 5, 6};
  const TailDecay t = tail_decay_check(e.distribution(), rs);
  CHECK(t.monotone);
  CHECK(t.fitted_rate > 0.0);
}
