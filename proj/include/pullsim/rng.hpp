#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace pullsim {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// xoshiro256** generator. Satisfies UniformRandomBitGenerator, but every
/// variate in this library is drawn through `uniform01()` and our own
/// samplers so that streams are bit-reproducible across standard libraries.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t seed = 0) noexcept {
    std::uint64_t s = seed;
    for (auto& w : state_) {
      s = splitmix64(s);
      w = s;
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

/// Independent substream for work item `index` under `master_seed`.
/// Pure function of its arguments, so ensembles do not depend on the order
/// or thread in which items run.
inline Stream substream(std::uint64_t master_seed, std::uint64_t index) noexcept {
  const std::uint64_t a = splitmix64(master_seed ^ 0x6a09e667f3bcc909ULL);
  const std::uint64_t b = splitmix64(index + 0xbb67ae8584caa73bULL);
  return Stream(splitmix64(a ^ (b * 0x9e3779b97f4a7c15ULL)));
}

}  // namespace pullsim
