#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <utility>

#include "numrad/matrix.hpp"

namespace numrad {

// Bit-level generator contract, so that any implementation reproduces the
// same matrices from the same (seed, index):
//
//   mix64(x):        x ^= x >> 30; x *= 0xBF58476D1CE4E5B9;
//                    x ^= x >> 27; x *= 0x94D049BB133111EB; x ^= x >> 31
//   splitmix64(s):   s += 0x9E3779B97F4A7C15; return mix64(s)
//   sample_seed:     mix64(seed + 0x9E3779B97F4A7C15 * (index + 1))
//   xoshiro256**:    state = four successive splitmix64 outputs of the sample
//                    seed; output rotl(s1 * 5, 7) * 9; standard state update
//   uniform:         (next() >> 11) * 2^-53, in [0, 1)
//   gaussian pair:   u1 = 1 - uniform(), u2 = uniform(),
//                    r = sqrt(-2 ln u1), (r cos 2 pi u2, r sin 2 pi u2)
//   complex normal:  (g0 + i g1) / sqrt(2) from one gaussian pair

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  state += kGoldenGamma;
  return mix64(state);
}

constexpr std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + kGoldenGamma * (index + 1));
}

class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256(std::uint64_t seed) {
    for (auto& word : s_) word = splitmix64(seed);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  std::pair<double, double> gaussian_pair() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(angle), r * std::sin(angle)};
  }

  /// Standard complex Gaussian, E|z|^2 = 1.
  Complex complex_normal() {
    const auto [a, b] = gaussian_pair();
    return Complex{a / std::numbers::sqrt2, b / std::numbers::sqrt2};
  }

  double normal() { return gaussian_pair().first; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4]{};
};

}  // namespace numrad
