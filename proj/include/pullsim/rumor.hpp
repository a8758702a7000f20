#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "pullsim/empirical.hpp"
#include "pullsim/pmf.hpp"
#include "pullsim/rng.hpp"

namespace pullsim {

/// Which population an uninformed vertex samples its contact from.
/// `population`: success probability informed/n (the analysed transition).
/// `others`: informed/(n-1), a uniform neighbour other than itself.
enum class Denominator { population, others };

std::string_view to_string(Denominator d) noexcept;
Denominator denominator_from_string(std::string_view s);

/// Sufficient statistic of pull on the complete graph K_n.
struct ProtocolState {
  std::int64_t n = 1;
  std::int64_t informed = 1;
  std::int64_t round = 0;

  std::int64_t uninformed() const noexcept { return n - informed; }
  bool done() const noexcept { return informed == n; }
};

ProtocolState initial_state(std::int64_t n);

/// One round: every uninformed vertex pulls independently, so
/// informed' = informed + Bin(n - informed, informed / denominator).
ProtocolState step(const ProtocolState& state, Stream& rng,
                   Denominator denom = Denominator::population);

struct RunRecord {
  std::int64_t n = 1;
  std::int64_t runtime = 0;
  /// Informed count per round, trajectory[0] = 1 and trajectory[runtime] = n.
  /// Empty when the run was not asked to keep it.
  std::vector<std::int64_t> trajectory;

  bool has_trajectory() const noexcept { return !trajectory.empty(); }
  std::int64_t uninformed_at(std::int64_t round) const;
};

/// 64*log2(n+1) + 64 rounds; exceeding it means the generator is broken.
std::int64_t round_cap(std::int64_t n) noexcept;

RunRecord run(std::int64_t n, Stream& rng, bool keep_trajectory,
              Denominator denom = Denominator::population);

struct RuntimeSummary {
  double mean = 0.0;
  double variance = 0.0;
  std::int64_t min = 0;
  std::int64_t max = 0;
};

struct RuntimeEnsemble {
  std::int64_t n = 1;
  std::uint64_t master_seed = 0;
  Denominator denom = Denominator::population;
  std::vector<std::int64_t> runtimes;  // indexed by run
  std::vector<RunRecord> records;      // filled only when trajectories are kept
  RuntimeSummary summary;

  EmpiricalDistribution distribution() const;
};

/// Run r uses substream(master_seed, r); the result is a pure function of
/// (n, runs, master_seed, denom) whatever the worker count.
RuntimeEnsemble ensemble(std::int64_t n, std::int64_t runs, std::uint64_t master_seed,
                         bool keep_trajectories = false,
                         Denominator denom = Denominator::population);

RuntimeSummary summarize(const std::vector<std::int64_t>& runtimes);

inline constexpr std::int64_t kExactInformedMaxN = std::int64_t{1} << 16;
inline constexpr std::int64_t kExactInformedMaxRounds = 12;

/// Exact law of the informed count after `rounds` rounds, by forward DP over
/// the chain. Support is {1..n}; nothing is truncated beyond double underflow.
ExactPmf exact_informed_pmf(std::int64_t n, std::int64_t rounds,
                            Denominator denom = Denominator::population);

/// First round T with fewer than sqrt(n) uninformed vertices, and the
/// four predicates around it.
struct EndgameReport {
  std::int64_t n = 0;
  std::int64_t runtime = 0;
  std::int64_t threshold_round = 0;               // T
  std::optional<std::int64_t> uninformed_before;  // U_{T-1}, absent when T = 0
  std::int64_t uninformed_at = 0;                 // U_T
  std::int64_t uninformed_after = 0;              // U_{T+1}
  bool before_above_sqrt = false;                 // U_{T-1} > sqrt(n)
  bool at_below_sqrt = false;                     // U_T < sqrt(n)
  bool at_positive = false;                       // U_T > 0
  bool after_zero = false;                        // U_{T+1} = 0
  std::optional<double> before_ratio;             // U_{T-1} / sqrt(n)
  double at_ratio = 0.0;                          // U_T / sqrt(n)

  bool all_events() const noexcept {
    return before_above_sqrt && at_below_sqrt && at_positive && after_zero;
  }
};

EndgameReport endgame_stats(const RunRecord& record);

}  // namespace pullsim
