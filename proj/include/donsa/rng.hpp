#pragma once

#include <cmath>
#include <cstdint>

namespace donsa {

// splitmix64 finalizer. Used both as a seed expander and as the avalanche
// step of mix_seed below.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Order-sensitive key combiner: mix_seed(a, b) != mix_seed(b, a). Every
// random stream in the simulator is keyed by a chain of these, which makes
// draws independent of evaluation order (and therefore thread count).
constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2)));
}

template <typename... Rest>
constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                                 Rest... rest) {
  return mix_seed(mix_seed(a, b), c, rest...);
}

// xoshiro256++ seeded through splitmix64. Self-contained on purpose: the
// standard library distributions are implementation-defined, and results
// here must reproduce bit-for-bit for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) {
      x = splitmix64(x);
      word = x;
    }
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double strictly inside (0, 1); never returns 0 or 1, so
  // log-based transforms below are always finite.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), n >= 1. Multiply-shift, no modulo bias worth
  // caring about at simulation scale.
  int next_index(int n) {
    return static_cast<int>((static_cast<unsigned __int128>(next_u64()) *
                             static_cast<unsigned __int128>(n)) >>
                            64);
  }

  // Standard normal via basic Box-Muller (cosine branch only, so the draw
  // count per call is fixed at two uniforms).
  double normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace donsa
