#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pullsim/empirical.hpp"
#include "pullsim/pmf.hpp"
#include "pullsim/rng.hpp"

namespace pullsim {

/// One realisation of the Poisson branching process J_{t+1} = J_t + Po(J_t),
/// J_0 = 1, and its normalisation H_t = 2^-t J_t.
struct BranchingSample {
  std::int64_t generation = 0;
  std::int64_t j = 1;
  double h = 1.0;
};

inline constexpr std::int64_t kMaxGeneration = 48;
inline constexpr std::int64_t kDefaultLimitGeneration = 28;
inline constexpr std::int64_t kDefaultLimitSamples = 1'000'000;

BranchingSample sample_branching(std::int64_t generation, Stream& rng);

/// (E[J_t], E[J_t^2]) = (2^t, 2^(t-1) (3*2^t - 1)). Throws std::range_error
/// when 2^(2t) leaves the double range.
std::pair<double, double> j_moments(std::int64_t generation);

/// H_{t*} for each sample index, sample i drawn on substream(seed, i).
std::vector<double> sample_martingale(std::int64_t generation, std::int64_t samples,
                                      std::uint64_t master_seed);

/// Same paths observed at several generations: result[c][i] is H at
/// generations[c] for path i. Generations must be non-decreasing.
std::vector<std::vector<double>> sample_martingale_checkpoints(
    std::span<const std::int64_t> generations, std::int64_t samples, std::uint64_t master_seed);

/// -log2(H_{t*}) in sample-index order; the surrogate for the limit X.
std::vector<double> limit_samples(std::int64_t generation, std::int64_t samples,
                                  std::uint64_t master_seed);

EmpiricalDistribution sample_limit_X(std::int64_t generation = kDefaultLimitGeneration,
                                     std::int64_t samples = kDefaultLimitSamples,
                                     std::uint64_t master_seed = 0);

inline constexpr std::int64_t kExactBranchingMaxGeneration = 8;

/// Law of J_t by iterated Poisson mixing. Each conditional Poisson row is
/// cut where a geometric bound puts the remaining tail under tail_tol; the
/// bounds are summed (weighted) into truncation_error.
ExactPmf exact_J_pmf(std::int64_t generation, double tail_tol = 1e-12);

}  // namespace pullsim
