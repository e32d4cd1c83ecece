#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace netscale {

// splitmix64 step (Vigna). Used for seed mixing, not as the main generator.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stable 64-bit derivation: fold every part through splitmix64 so that
// (base, purpose, k, delta, repeat, index) tuples map to well-spread,
// reproducible sub-seeds regardless of execution schedule.
inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> parts) {
  std::uint64_t state = base ^ 0xa0761d6478bd642fULL;
  std::uint64_t h = splitmix64(state);
  for (std::uint64_t p : parts) {
    state ^= p * 0xe7037ed1a0b428dbULL;
    h ^= splitmix64(state);
  }
  return h;
}

namespace seed_tag {
inline constexpr std::uint64_t perturb = 0x706572747572620fULL;
inline constexpr std::uint64_t dataset = 0x64617461736574a1ULL;
inline constexpr std::uint64_t sample = 0x73616d706c65b253ULL;
inline constexpr std::uint64_t train = 0x747261696e3c9d71ULL;
inline constexpr std::uint64_t tree = 0x74726565d41f8b22ULL;
inline constexpr std::uint64_t aux = 0x6175785f6d656173ULL;
}  // namespace seed_tag

// mt19937_64 wrapper with bias-free bounded draws. std::uniform_*_distribution
// is not pinned by the standard, so bounded sampling is done here to keep
// cached results and test expectations byte-stable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform integer in [0, n). n must be >= 1.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t mask = mask_for(n);
    std::uint64_t v;
    do {
      v = eng_() & mask;
    } while (v >= n);
    return v;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  bool coin() { return (eng_() & 1u) != 0; }

  // Standard normal via Box-Muller (one value per call, no cached spare so
  // the consumed stream length stays predictable).
  double normal() {
    double u1 = unit();
    while (u1 <= 0.0) u1 = unit();
    const double u2 = unit();
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

 private:
  static std::uint64_t mask_for(std::uint64_t n) {
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    return mask;
  }

  std::mt19937_64 eng_;
};

}  // namespace netscale
