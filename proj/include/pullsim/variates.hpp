#pragma once

#include <cstdint>

#include "pullsim/rng.hpp"

namespace pullsim {

// Stirling-series remainder: log(k!) minus (k+1/2)log(k+1) - (k+1) + log(sqrt(2*pi)).
double stirling_tail(std::int64_t k) noexcept;

// log(a!) - log(b!) without forming either factorial's logarithm.
double log_factorial_diff(std::int64_t a, std::int64_t b) noexcept;

// log P(Bin(n,p) = k) - log P(Bin(n,p) = m).
double binomial_log_ratio(std::int64_t n, double p, std::int64_t k, std::int64_t m) noexcept;

double poisson_log_pmf(std::int64_t k, double lambda) noexcept;
double binomial_log_pmf(std::int64_t n, double p, std::int64_t k) noexcept;

/// Exact Binomial(n, p) variate. Sequential inversion when n*min(p,1-p) < 10,
/// Hormann's BTRS transformed rejection otherwise.
std::int64_t binomial(Stream& rng, std::int64_t n, double p);

/// Exact Poisson(lambda) variate. Inversion for lambda < 10, PTRS otherwise.
std::int64_t poisson(Stream& rng, double lambda);

}  // namespace pullsim
