#pragma once

#include <cstdint>
#include <vector>

namespace pullsim {

/// Exact law on the integers {offset, offset+1, ...}. Mass that was
/// dropped while building the law is kept in `truncation_error`.
struct ExactPmf {
  std::int64_t support_offset = 0;
  std::vector<double> masses;
  double truncation_error = 0.0;

  static ExactPmf point_mass(std::int64_t at) { return ExactPmf{at, {1.0}, 0.0}; }

  double at(std::int64_t k) const noexcept {
    const std::int64_t i = k - support_offset;
    if (i < 0 || i >= static_cast<std::int64_t>(masses.size())) return 0.0;
    return masses[static_cast<std::size_t>(i)];
  }
  std::int64_t min_support() const noexcept { return support_offset; }
  std::int64_t max_support() const noexcept {
    return support_offset + static_cast<std::int64_t>(masses.size()) - 1;
  }

  double total_mass() const noexcept;
  double mean() const noexcept;
  double second_moment() const noexcept;

  // Mass non-negative and total + truncation within 1e-9 of one.
  bool valid() const noexcept;
};

}  // namespace pullsim
