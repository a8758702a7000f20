#include "pullsim/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "pullsim/branching.hpp"
#include "pullsim/errors.hpp"
#include "pullsim/lambert.hpp"

namespace pullsim {

namespace mp = boost::multiprecision;
using Real50 = mp::cpp_bin_float_50;

namespace {

struct Member {
  mp::cpp_int n;
  Real50 frac;
};

Member member_exact(double x_target, std::int64_t index) {
  const Real50 arg = mp::pow(Real50(2), Real50(index) + Real50(x_target));
  const Real50 w = lambert_w0(arg);
  const Real50 nr = mp::floor(mp::exp(w));
  Member m;
  m.n = nr.convert_to<mp::cpp_int>();
  if (m.n < 3) {
    throw std::domain_error("subsequence member n_" + std::to_string(index) +
                            " < 3; log2 ln n is not meaningful");
  }
  const Real50 ln2 = mp::log(Real50(2));
  const Real50 nreal(m.n);
  const Real50 value = mp::log(nreal) / ln2 + mp::log(mp::log(nreal)) / ln2;
  m.frac = value - mp::floor(value);
  return m;
}

void check_target(double x_target) {
  if (!(x_target >= 0.0 && x_target < 1.0)) {
    throw std::domain_error("x_target must lie in [0, 1)");
  }
}

}  // namespace

double circular_distance(double a, double b) noexcept {
  const double d = std::fabs(a - b);
  return std::min(d, 1.0 - d);
}

std::vector<SubsequenceTerm> subsequence(const SubsequenceSpec& spec) {
  check_target(spec.x_target);
  if (spec.last_index < spec.first_index) throw UsageError("empty index range");
  std::vector<SubsequenceTerm> out;
  mp::cpp_int previous = 0;
  for (std::int64_t i = spec.first_index; i <= spec.last_index; ++i) {
    const Member m = member_exact(spec.x_target, i);
    if (i > spec.first_index && m.n <= previous) {
      throw std::logic_error("subsequence not strictly increasing at i=" + std::to_string(i));
    }
    previous = m.n;
    SubsequenceTerm term;
    term.index = i;
    term.n_decimal = m.n.str();
    term.n_value = m.n.convert_to<double>();
    term.frac = m.frac.convert_to<double>();
    term.distance = circular_distance(term.frac, spec.x_target);
    out.push_back(std::move(term));
  }
  return out;
}

std::int64_t subsequence_member(double x_target, std::int64_t index) {
  check_target(x_target);
  const Member m = member_exact(x_target, index);
  if (m.n > mp::cpp_int(std::numeric_limits<std::int64_t>::max())) {
    throw CapacityError("subsequence member does not fit in 64 bits");
  }
  return m.n.convert_to<std::int64_t>();
}

std::int64_t subsequence_member_near(double x_target, double near) {
  check_target(x_target);
  if (!(near >= 3.0)) throw std::domain_error("target size must be >= 3");
  // n ln n = 2^(i + x) gives the index directly up to rounding.
  const double guess = std::log2(near * std::log(near)) - x_target;
  std::int64_t best = 0;
  double best_gap = std::numeric_limits<double>::infinity();
  for (auto i = static_cast<std::int64_t>(std::floor(guess)) - 1;
       i <= static_cast<std::int64_t>(std::ceil(guess)) + 1; ++i) {
    std::int64_t n = 0;
    try {
      n = subsequence_member(x_target, i);
    } catch (const std::domain_error&) {
      continue;
    }
    const double gap = std::fabs(std::log(static_cast<double>(n) / near));
    if (gap < best_gap) {
      best_gap = gap;
      best = n;
    }
  }
  if (best == 0) throw std::domain_error("no subsequence member near the requested size");
  return best;
}

TvDistance tv_distance(const ExactPmf& p, const ExactPmf& q) {
  const std::int64_t lo = std::min(p.min_support(), q.min_support());
  const std::int64_t hi = std::max(p.max_support(), q.max_support());
  double s = 0.0;
  for (std::int64_t k = lo; k <= hi; ++k) s += std::fabs(p.at(k) - q.at(k));
  return {0.5 * s, 0.5 * (p.truncation_error + q.truncation_error)};
}

std::vector<VerificationReport> verify_tv_bound(std::int64_t n, std::int64_t t_max) {
  if (n < 1 || t_max < 0) throw UsageError("verify_tv_bound needs n >= 1 and t_max >= 0");
  if (n > kTvMaxN || t_max > kTvMaxRounds) {
    throw CapacityError("TV verification limited to n <= 16384 and t <= 5");
  }
  std::vector<VerificationReport> out;
  for (std::int64_t t = 0; t <= t_max; ++t) {
    const ExactPmf informed = exact_informed_pmf(n, t);
    const ExactPmf branching = exact_J_pmf(t, 1e-12);
    const TvDistance d = tv_distance(informed, branching);
    VerificationReport rep;
    rep.name = "tv_bound";
    rep.observed = d.value;
    rep.bound_or_target = 2.0 * std::ldexp(1.0, static_cast<int>(2 * t)) / static_cast<double>(n);
    rep.passed = d.value <= rep.bound_or_target + d.uncertainty;
    rep.metadata = {{"n", n}, {"t", t}, {"uncertainty", d.uncertainty}, {"comparison", "<="}};
    out.push_back(std::move(rep));
  }
  return out;
}

std::int64_t recurrence_start_round(std::int64_t n) noexcept {
  std::int64_t t = 0;
  while (3 * (t + 1) < 63 && (std::int64_t{1} << (3 * (t + 1))) <= n) ++t;
  return t;
}

VerificationReport verify_recurrence(const RunRecord& record) {
  if (!record.has_trajectory()) throw UsageError("recurrence check needs a retained trajectory");
  const std::int64_t n = record.n;
  const double nd = static_cast<double>(n);
  const std::int64_t t1 = recurrence_start_round(n);
  const double shrink = std::pow(nd, -1.0 / 50.0);
  const double floor_slack = std::pow(nd, 0.25);
  VerificationReport rep;
  rep.name = "recurrence";
  rep.bound_or_target = 1.0;
  double worst = 0.0;
  std::int64_t worst_t = -1;
  std::int64_t checked = 0;
  std::int64_t violations = 0;
  if (t1 <= record.runtime) {
    const double start = static_cast<double>(record.uninformed_at(t1));
    const double log_fraction = std::log1p(-(nd - start) / nd);
    for (std::int64_t t = 0; t1 + t <= record.runtime; ++t) {
      const double actual = static_cast<double>(record.uninformed_at(t1 + t));
      const double predicted =
          start == 0.0 ? 0.0 : nd * std::exp(std::ldexp(log_fraction, static_cast<int>(t)));
      const double ratio = std::fabs(actual - predicted) / (actual * shrink + floor_slack);
      if (ratio > worst) {
        worst = ratio;
        worst_t = t;
      }
      if (ratio > 1.0) ++violations;
      ++checked;
    }
  }
  rep.observed = worst;
  rep.passed = worst <= 1.0;
  rep.metadata = {{"n", n},         {"t1", t1},
                  {"checked", checked}, {"violations", violations},
                  {"worst_t", worst_t}, {"runtime", record.runtime},
                  {"comparison", "<="}};
  return rep;
}

std::optional<double> endgame_real_threshold(const RunRecord& record) {
  const std::int64_t t1 = recurrence_start_round(record.n);
  if (t1 > record.runtime) return std::nullopt;
  const double nd = static_cast<double>(record.n);
  const double informed = static_cast<double>(record.trajectory.at(static_cast<std::size_t>(t1)));
  if (informed >= nd) return std::nullopt;
  // (1 - I/n)^(2^T') = n^(-1/2)  =>  2^T' = (ln n / 2) / (-log1p(-I/n))
  return std::log2(0.5 * std::log(nd) / -std::log1p(-informed / nd));
}

EndgameFrequencies verify_endgame(std::span<const RunRecord> records) {
  EndgameFrequencies f;
  f.runs = static_cast<std::int64_t>(records.size());
  if (records.empty()) return f;
  std::int64_t before = 0, positive = 0, after = 0, finish = 0, formula = 0;
  std::vector<double> before_ratios;
  std::vector<double> at_ratios;
  for (const RunRecord& rec : records) {
    const EndgameReport e = endgame_stats(rec);
    before += e.before_above_sqrt;
    positive += e.at_positive;
    after += e.after_zero;
    finish += e.at_positive && e.after_zero;
    if (e.all_events()) {
      ++f.all_events_runs;
      if (rec.runtime != e.threshold_round + 1) ++f.runtime_mismatches;
    }
    if (e.threshold_round > rec.runtime) ++f.threshold_after_runtime;
    if (e.before_ratio) before_ratios.push_back(*e.before_ratio);
    at_ratios.push_back(e.at_ratio);
    if (const auto tp = endgame_real_threshold(rec)) {
      const auto predicted = static_cast<std::int64_t>(
          std::floor(*tp + static_cast<double>(recurrence_start_round(rec.n)) + 1.0));
      formula += predicted == e.threshold_round;
    }
  }
  const auto runs = static_cast<double>(records.size());
  f.before_above = static_cast<double>(before) / runs;
  f.at_positive = static_cast<double>(positive) / runs;
  f.after_zero = static_cast<double>(after) / runs;
  f.finish_next = static_cast<double>(finish) / runs;
  f.all_events = static_cast<double>(f.all_events_runs) / runs;
  f.threshold_formula_match = static_cast<double>(formula) / runs;
  auto quantiles = [](std::vector<double> v) {
    std::vector<double> q;
    if (v.empty()) return q;
    const EmpiricalDistribution d(std::move(v));
    for (double level : {0.05, 0.25, 0.5, 0.75, 0.95}) q.push_back(d.quantile(level));
    return q;
  };
  f.before_ratio_quantiles = quantiles(std::move(before_ratios));
  f.at_ratio_quantiles = quantiles(std::move(at_ratios));
  return f;
}

double runtime_centering(std::int64_t n) {
  if (n < 2) throw std::domain_error("log2 ln n needs n >= 2");
  const double nd = static_cast<double>(n);
  return std::log2(nd) + std::log2(std::log(nd));
}

std::vector<TailComparisonRow> theorem1_curve(const EmpiricalDistribution& runtimes,
                                              const EmpiricalDistribution& limit,
                                              double centering) {
  const auto lo = static_cast<std::int64_t>(
      std::floor(std::min(runtimes.min(), limit.min() + centering))) - 1;
  const auto hi = static_cast<std::int64_t>(
      std::ceil(std::max(runtimes.max(), limit.max() + centering))) + 2;
  std::vector<TailComparisonRow> rows;
  rows.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t k = lo; k <= hi; ++k) {
    // ceil(c + X) >= k  <=>  X > k - 1 - c
    rows.push_back({k, runtimes.ecdf_ge(static_cast<double>(k)),
                    limit.ecdf_gt(static_cast<double>(k - 1) - centering)});
  }
  return rows;
}

double theorem1_distance_at(const EmpiricalDistribution& runtimes,
                            const EmpiricalDistribution& limit, double centering) {
  double worst = 0.0;
  for (const auto& row : theorem1_curve(runtimes, limit, centering)) {
    worst = std::max(worst, std::fabs(row.runtime_tail - row.limit_tail));
  }
  return worst;
}

double theorem1_distance(const EmpiricalDistribution& runtimes, const EmpiricalDistribution& limit,
                         std::int64_t n) {
  return theorem1_distance_at(runtimes, limit, runtime_centering(n));
}

std::vector<ResidualPoint> runtime_residual_scan(std::span<const std::int64_t> n_values,
                                                 std::int64_t runs, std::uint64_t seed) {
  if (runs < 2) throw UsageError("residual scan needs at least two runs per n");
  std::vector<ResidualPoint> out;
  for (std::size_t j = 0; j < n_values.size(); ++j) {
    const std::int64_t n = n_values[j];
    if (n < 3) throw std::domain_error("residual scan needs n >= 3");
    const RuntimeEnsemble e = ensemble(n, runs, splitmix64(seed + j));
    ResidualPoint p;
    p.n = n;
    p.runs = runs;
    p.mean = e.summary.mean;
    p.standard_error = std::sqrt(e.summary.variance / static_cast<double>(runs));
    p.residual = p.mean - runtime_centering(n);
    out.push_back(p);
  }
  return out;
}

TailDecay tail_decay_check(const EmpiricalDistribution& runtimes,
                           std::span<const std::int64_t> r_values) {
  TailDecay out;
  out.mean = runtimes.mean();
  double prev = std::numeric_limits<double>::infinity();
  bool monotone = true;
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::int64_t r : r_values) {
    if (r < 0) throw UsageError("tail offsets must be >= 0");
    const double rd = static_cast<double>(r);
    const double p = r == 0 ? 1.0
                            : runtimes.ecdf_le(out.mean - rd) + runtimes.ecdf_ge(out.mean + rd);
    TailRow row;
    row.r = r;
    row.probability = p;
    row.censored = p == 0.0;
    row.log_probability = row.censored ? -std::numeric_limits<double>::infinity() : std::log(p);
    if (!row.censored) {
      if (!(p < prev) && r > 0) monotone = false;
      prev = p;
      ++out.resolved;
      if (r >= 1) {
        xs.push_back(rd);
        ys.push_back(row.log_probability);
      }
    }
    out.rows.push_back(row);
  }
  out.monotone = monotone;
  if (xs.size() >= 2) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    out.fitted_rate = sxx > 0.0 ? -sxy / sxx : 0.0;
  }
  return out;
}

}  // namespace pullsim
