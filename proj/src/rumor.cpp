#include "pullsim/rumor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pullsim/errors.hpp"
#include "pullsim/parallel.hpp"
#include "pullsim/variates.hpp"

namespace pullsim {

namespace {

double success_probability(std::int64_t n, std::int64_t informed, Denominator denom) {
  const auto d = denom == Denominator::population ? n : n - 1;
  return std::min(1.0, static_cast<double>(informed) / static_cast<double>(d));
}

// U^2 vs n in exact integer arithmetic; compares U against sqrt(n).
int compare_with_sqrt(std::int64_t u, std::int64_t n) {
  const auto sq = static_cast<unsigned __int128>(u) * static_cast<unsigned __int128>(u);
  const auto nn = static_cast<unsigned __int128>(n);
  return sq < nn ? -1 : (sq > nn ? 1 : 0);
}

// Adds weight * Bin(trials, p)(k) into out[base + k], walking out from the mode
// until terms underflow.
void accumulate_binomial_row(std::vector<double>& out, std::size_t base, std::int64_t trials,
                             double p, double weight) {
  if (trials == 0 || p <= 0.0) {
    out[base] += weight;
    return;
  }
  if (p >= 1.0) {
    out[base + static_cast<std::size_t>(trials)] += weight;
    return;
  }
  constexpr double kUnderflow = 1e-300;
  const double odds = p / (1.0 - p);
  auto mode = static_cast<std::int64_t>(std::floor((static_cast<double>(trials) + 1.0) * p));
  mode = std::min(mode, trials);
  const double at_mode = std::exp(binomial_log_pmf(trials, p, mode));
  out[base + static_cast<std::size_t>(mode)] += weight * at_mode;
  double term = at_mode;
  for (std::int64_t k = mode; k < trials; ++k) {
    term *= static_cast<double>(trials - k) / static_cast<double>(k + 1) * odds;
    if (term < kUnderflow) break;
    out[base + static_cast<std::size_t>(k + 1)] += weight * term;
  }
  term = at_mode;
  for (std::int64_t k = mode; k > 0; --k) {
    term *= static_cast<double>(k) / (static_cast<double>(trials - k + 1) * odds);
    if (term < kUnderflow) break;
    out[base + static_cast<std::size_t>(k - 1)] += weight * term;
  }
}

}  // namespace

std::string_view to_string(Denominator d) noexcept {
  return d == Denominator::population ? "n" : "n-1";
}

Denominator denominator_from_string(std::string_view s) {
  if (s == "n" || s == "population") return Denominator::population;
  if (s == "n-1" || s == "others") return Denominator::others;
  throw UsageError("unknown denominator convention '" + std::string(s) + "' (use n or n-1)");
}

ProtocolState initial_state(std::int64_t n) {
  if (n < 1) throw UsageError("population size must be >= 1");
  return ProtocolState{n, 1, 0};
}

ProtocolState step(const ProtocolState& state, Stream& rng, Denominator denom) {
  ProtocolState next = state;
  next.round += 1;
  if (state.done()) return next;
  const double p = success_probability(state.n, state.informed, denom);
  next.informed += binomial(rng, state.uninformed(), p);
  return next;
}

std::int64_t RunRecord::uninformed_at(std::int64_t round) const {
  if (!has_trajectory()) throw UsageError("run record has no trajectory");
  if (round < 0) throw UsageError("negative round index");
  if (round > runtime) return 0;
  return n - trajectory[static_cast<std::size_t>(round)];
}

std::int64_t round_cap(std::int64_t n) noexcept {
  return static_cast<std::int64_t>(64.0 * std::log2(static_cast<double>(n) + 1.0) + 64.0);
}

RunRecord run(std::int64_t n, Stream& rng, bool keep_trajectory, Denominator denom) {
  ProtocolState state = initial_state(n);
  RunRecord record;
  record.n = n;
  if (keep_trajectory) record.trajectory.push_back(state.informed);
  const std::int64_t cap = round_cap(n);
  while (!state.done()) {
    state = step(state, rng, denom);
    if (keep_trajectory) record.trajectory.push_back(state.informed);
    if (state.round > cap) {
      throw std::runtime_error("run exceeded the round cap of " + std::to_string(cap) +
                               " rounds for n=" + std::to_string(n));
    }
  }
  record.runtime = state.round;
  return record;
}

RuntimeSummary summarize(const std::vector<std::int64_t>& runtimes) {
  RuntimeSummary s;
  if (runtimes.empty()) return s;
  s.min = runtimes.front();
  s.max = runtimes.front();
  double total = 0.0;
  for (auto r : runtimes) {
    total += static_cast<double>(r);
    s.min = std::min(s.min, r);
    s.max = std::max(s.max, r);
  }
  s.mean = total / static_cast<double>(runtimes.size());
  if (runtimes.size() > 1) {
    double ss = 0.0;
    for (auto r : runtimes) ss += (static_cast<double>(r) - s.mean) * (static_cast<double>(r) - s.mean);
    s.variance = ss / static_cast<double>(runtimes.size() - 1);
  }
  return s;
}

EmpiricalDistribution RuntimeEnsemble::distribution() const {
  return EmpiricalDistribution(std::vector<double>(runtimes.begin(), runtimes.end()));
}

RuntimeEnsemble ensemble(std::int64_t n, std::int64_t runs, std::uint64_t master_seed,
                         bool keep_trajectories, Denominator denom) {
  if (runs < 1) throw UsageError("ensemble needs runs >= 1");
  if (n < 1) throw UsageError("population size must be >= 1");
  RuntimeEnsemble out;
  out.n = n;
  out.master_seed = master_seed;
  out.denom = denom;
  const auto count = static_cast<std::size_t>(runs);
  out.runtimes.resize(count);
  if (keep_trajectories) out.records.resize(count);
  parallel_for(count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      Stream rng = substream(master_seed, r);
      RunRecord rec = run(n, rng, keep_trajectories, denom);
      out.runtimes[r] = rec.runtime;
      if (keep_trajectories) out.records[r] = std::move(rec);
    }
  });
  out.summary = summarize(out.runtimes);
  return out;
}

ExactPmf exact_informed_pmf(std::int64_t n, std::int64_t rounds, Denominator denom) {
  if (n < 1) throw UsageError("population size must be >= 1");
  if (rounds < 0) throw UsageError("round index must be >= 0");
  if (n > kExactInformedMaxN || rounds > kExactInformedMaxRounds) {
    throw CapacityError("exact informed-count DP limited to n <= 65536 and t <= 12");
  }
  const auto size = static_cast<std::size_t>(n);
  // index i holds P(|I_t| = i + 1)
  std::vector<double> cur(size, 0.0);
  cur[0] = 1.0;
  std::vector<double> next(size, 0.0);
  for (std::int64_t t = 0; t < rounds; ++t) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < size; ++i) {
      if (cur[i] == 0.0) continue;
      const auto informed = static_cast<std::int64_t>(i) + 1;
      if (informed == n) {
        next[i] += cur[i];
        continue;
      }
      accumulate_binomial_row(next, i, n - informed, success_probability(n, informed, denom),
                              cur[i]);
    }
    cur.swap(next);
  }
  // Drop the all-zero tail so the support stays compact.
  std::size_t last = size;
  while (last > 1 && cur[last - 1] == 0.0) --last;
  cur.resize(last);
  return ExactPmf{1, std::move(cur), 0.0};
}

EndgameReport endgame_stats(const RunRecord& record) {
  if (!record.has_trajectory()) throw UsageError("endgame statistics need a retained trajectory");
  EndgameReport rep;
  rep.n = record.n;
  rep.runtime = record.runtime;
  const double root = std::sqrt(static_cast<double>(record.n));
  std::int64_t t = 0;
  while (compare_with_sqrt(record.uninformed_at(t), record.n) >= 0) ++t;
  rep.threshold_round = t;
  rep.uninformed_at = record.uninformed_at(t);
  rep.uninformed_after = record.uninformed_at(t + 1);
  rep.at_below_sqrt = true;
  rep.at_positive = rep.uninformed_at > 0;
  rep.after_zero = rep.uninformed_after == 0;
  rep.at_ratio = static_cast<double>(rep.uninformed_at) / root;
  if (t > 0) {
    const std::int64_t before = record.uninformed_at(t - 1);
    rep.uninformed_before = before;
    rep.before_above_sqrt = compare_with_sqrt(before, record.n) > 0;
    rep.before_ratio = static_cast<double>(before) / root;
  }
  return rep;
}

}  // namespace pullsim
