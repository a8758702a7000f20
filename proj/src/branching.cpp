#include "pullsim/branching.hpp"

#include <cmath>
#include <stdexcept>

#include "pullsim/errors.hpp"
#include "pullsim/parallel.hpp"
#include "pullsim/variates.hpp"

namespace pullsim {

namespace {

void check_generation(std::int64_t generation) {
  if (generation < 0) throw UsageError("generation must be >= 0");
  if (generation > kMaxGeneration) {
    throw CapacityError("branching generation above " + std::to_string(kMaxGeneration) +
                        " overflows the 64-bit population count");
  }
}

}  // namespace

BranchingSample sample_branching(std::int64_t generation, Stream& rng) {
  check_generation(generation);
  std::int64_t j = 1;
  for (std::int64_t t = 0; t < generation; ++t) j += poisson(rng, static_cast<double>(j));
  return BranchingSample{generation, j,
                         std::ldexp(static_cast<double>(j), -static_cast<int>(generation))};
}

std::pair<double, double> j_moments(std::int64_t generation) {
  if (generation < 0) throw UsageError("generation must be >= 0");
  if (2 * generation > 1023) throw std::range_error("2^(2t) overflows double for this t");
  const double pow2 = std::ldexp(1.0, static_cast<int>(generation));
  return {pow2, 0.5 * pow2 * (3.0 * pow2 - 1.0)};
}

std::vector<std::vector<double>> sample_martingale_checkpoints(
    std::span<const std::int64_t> generations, std::int64_t samples, std::uint64_t master_seed) {
  if (samples < 1) throw UsageError("need at least one sample");
  for (std::size_t c = 0; c < generations.size(); ++c) {
    check_generation(generations[c]);
    if (c > 0 && generations[c] < generations[c - 1]) {
      throw UsageError("checkpoint generations must be non-decreasing");
    }
  }
  const auto count = static_cast<std::size_t>(samples);
  std::vector<std::vector<double>> out(generations.size(), std::vector<double>(count));
  parallel_for(count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Stream rng = substream(master_seed, i);
      std::int64_t j = 1;
      std::int64_t t = 0;
      for (std::size_t c = 0; c < generations.size(); ++c) {
        for (; t < generations[c]; ++t) j += poisson(rng, static_cast<double>(j));
        out[c][i] = std::ldexp(static_cast<double>(j), -static_cast<int>(t));
      }
    }
  });
  return out;
}

std::vector<double> sample_martingale(std::int64_t generation, std::int64_t samples,
                                      std::uint64_t master_seed) {
  const std::int64_t gens[] = {generation};
  return std::move(sample_martingale_checkpoints(gens, samples, master_seed).front());
}

std::vector<double> limit_samples(std::int64_t generation, std::int64_t samples,
                                  std::uint64_t master_seed) {
  std::vector<double> h = sample_martingale(generation, samples, master_seed);
  for (double& v : h) v = -std::log2(v);
  return h;
}

EmpiricalDistribution sample_limit_X(std::int64_t generation, std::int64_t samples,
                                     std::uint64_t master_seed) {
  return EmpiricalDistribution(limit_samples(generation, samples, master_seed));
}

ExactPmf exact_J_pmf(std::int64_t generation, double tail_tol) {
  if (generation < 0) throw UsageError("generation must be >= 0");
  if (generation > kExactBranchingMaxGeneration) {
    throw CapacityError("exact J_t pmf limited to t <= 8");
  }
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw UsageError("tail_tol must lie in (0, 1)");
  // index i holds P(J_t = i + 1)
  std::vector<double> cur{1.0};
  double truncated = 0.0;
  for (std::int64_t t = 0; t < generation; ++t) {
    std::vector<double> next(2 * cur.size() + 64, 0.0);
    auto put = [&next](std::size_t idx, double v) {
      if (idx >= next.size()) next.resize(idx + idx / 2 + 1, 0.0);
      next[idx] += v;
    };
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const double weight = cur[i];
      if (weight == 0.0) continue;
      const auto parent = static_cast<std::int64_t>(i) + 1;
      const double lambda = static_cast<double>(parent);
      const std::int64_t mode = parent;
      const double at_mode = std::exp(poisson_log_pmf(mode, lambda));
      put(i + static_cast<std::size_t>(mode), weight * at_mode);
      double dropped = 0.0;
      // upper tail: P(k+1)/P(k) = lambda/(k+1) < 1 beyond the mode
      double term = at_mode;
      for (std::int64_t k = mode;; ++k) {
        const double r = lambda / static_cast<double>(k + 1);
        const double bound = term * r / (1.0 - r);
        if (bound < 0.5 * tail_tol) {
          dropped += bound;
          break;
        }
        term *= r;
        put(i + static_cast<std::size_t>(k + 1), weight * term);
      }
      // lower tail: P(k-1)/P(k) = k/lambda < 1 below the mode
      term = at_mode;
      for (std::int64_t k = mode; k > 0; --k) {
        const double r = static_cast<double>(k) / lambda;
        if (r < 1.0) {
          const double bound = term * r / (1.0 - r);
          if (bound < 0.5 * tail_tol) {
            dropped += bound;
            break;
          }
        }
        term *= r;
        put(i + static_cast<std::size_t>(k - 1), weight * term);
      }
      truncated += weight * dropped;
    }
    std::size_t last = next.size();
    while (last > 1 && next[last - 1] == 0.0) --last;
    next.resize(last);
    cur.swap(next);
  }
  return ExactPmf{1, std::move(cur), truncated};
}

}  // namespace pullsim
