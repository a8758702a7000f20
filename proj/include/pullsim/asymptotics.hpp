#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pullsim/empirical.hpp"
#include "pullsim/pmf.hpp"
#include "pullsim/report.hpp"
#include "pullsim/rumor.hpp"

namespace pullsim {

// ---------------------------------------------------------------------------
// Subsequences n_i = floor(exp(W(2^(i+x)))) along which the fractional part
// of log2 n + log2 ln n tends to x.

struct SubsequenceSpec {
  double x_target = 0.0;  // in [0, 1)
  std::int64_t first_index = 0;
  std::int64_t last_index = 0;
};

struct SubsequenceTerm {
  std::int64_t index = 0;
  std::string n_decimal;  // exact n_i; exceeds 64 bits past i ~ 66
  double n_value = 0.0;
  double frac = 0.0;      // {log2 n_i + log2 ln n_i}, evaluated with 50 digits
  double distance = 0.0;  // circular distance of frac to x_target
};

/// Throws std::domain_error on an x_target outside [0,1) or any n_i < 3.
std::vector<SubsequenceTerm> subsequence(const SubsequenceSpec& spec);

/// n_i for one index as a 64-bit value; throws CapacityError if it does not fit.
std::int64_t subsequence_member(double x_target, std::int64_t index);

/// Subsequence member closest to `near` on a log scale.
std::int64_t subsequence_member_near(double x_target, double near);

/// Distance on the unit circle between two fractional parts.
double circular_distance(double a, double b) noexcept;

// ---------------------------------------------------------------------------
// Total variation.

struct TvDistance {
  double value = 0.0;        // 1/2 sum |p(k) - q(k)|
  double uncertainty = 0.0;  // 1/2 (truncation of p + truncation of q)
};

TvDistance tv_distance(const ExactPmf& p, const ExactPmf& q);

inline constexpr std::int64_t kTvMaxN = std::int64_t{1} << 14;
inline constexpr std::int64_t kTvMaxRounds = 5;

/// d(|I_t|, J_t) <= 2 * 4^t / n for t = 0..t_max, both laws exact.
std::vector<VerificationReport> verify_tv_bound(std::int64_t n, std::int64_t t_max);

// ---------------------------------------------------------------------------
// Deterministic-recurrence phase and endgame.

/// floor(log2(n^(1/3))): the largest t with 2^(3t) <= n.
std::int64_t recurrence_start_round(std::int64_t n) noexcept;

/// Checks ||U_{t1+t}| - (|U_{t1}|/n)^(2^t) n| <= |U_{t1+t}| n^(-1/50) + n^(1/4)
/// for every t >= 0 with t1 + t <= runtime. `observed` is the largest
/// ratio of the left side to the right side (passes when <= 1).
VerificationReport verify_recurrence(const RunRecord& record);

/// Real T' solving (1 - |I_{t1}|/n)^(2^T') n = sqrt(n); empty when the run
/// finished before round t1.
std::optional<double> endgame_real_threshold(const RunRecord& record);

struct EndgameFrequencies {
  std::int64_t runs = 0;
  double before_above = 0.0;   // U_{T-1} > sqrt(n)
  double at_positive = 0.0;    // U_T > 0
  double after_zero = 0.0;     // U_{T+1} = 0
  double finish_next = 0.0;    // U_T > 0 and U_{T+1} = 0
  double all_events = 0.0;     // all four predicates
  std::int64_t all_events_runs = 0;
  std::int64_t runtime_mismatches = 0;  // all four hold but X_n != T + 1
  std::int64_t threshold_after_runtime = 0;  // runs with T > X_n (never expected)
  double threshold_formula_match = 0.0;  // T == floor(T' + t1 + 1)
  std::vector<double> before_ratio_quantiles;  // U_{T-1}/sqrt(n) at 5/25/50/75/95%
  std::vector<double> at_ratio_quantiles;      // U_T/sqrt(n) at the same levels
};

EndgameFrequencies verify_endgame(std::span<const RunRecord> records);

// ---------------------------------------------------------------------------
// Distributional comparisons on runtimes.

/// log2 n + log2 ln n.
double runtime_centering(std::int64_t n);

/// sup_k |P(X_n >= k) - P(ceil(c + X) >= k)| with c = runtime_centering(n).
double theorem1_distance(const EmpiricalDistribution& runtimes, const EmpiricalDistribution& limit,
                         std::int64_t n);
double theorem1_distance_at(const EmpiricalDistribution& runtimes,
                            const EmpiricalDistribution& limit, double centering);

struct TailComparisonRow {
  std::int64_t k = 0;
  double runtime_tail = 0.0;  // P(X_n >= k)
  double limit_tail = 0.0;    // P(ceil(c + X) >= k)
};
std::vector<TailComparisonRow> theorem1_curve(const EmpiricalDistribution& runtimes,
                                              const EmpiricalDistribution& limit,
                                              double centering);

struct ResidualPoint {
  std::int64_t n = 0;
  std::int64_t runs = 0;
  double mean = 0.0;
  double standard_error = 0.0;
  double residual = 0.0;  // mean - log2 n - log2 ln n
};

/// Ensemble for n_values[j] runs on master seed splitmix64(seed + j).
std::vector<ResidualPoint> runtime_residual_scan(std::span<const std::int64_t> n_values,
                                                 std::int64_t runs, std::uint64_t seed);

struct TailRow {
  std::int64_t r = 0;
  double probability = 0.0;  // P(|X_n - mean| >= r)
  double log_probability = 0.0;
  bool censored = false;     // no sample reached this offset
};

struct TailDecay {
  double mean = 0.0;
  std::vector<TailRow> rows;
  bool monotone = false;     // strictly decreasing over the resolved rows
  double fitted_rate = 0.0;  // alpha from least squares on log P vs r, r >= 1
  std::int64_t resolved = 0;
};

TailDecay tail_decay_check(const EmpiricalDistribution& runtimes,
                           std::span<const std::int64_t> r_values);

}  // namespace pullsim
