#pragma once

#include <complex>
#include <cstdint>
#include <cmath>

#include "isacsim/units.hpp"

namespace isacsim {

/// Deterministic random stream (xoshiro256++ seeded through splitmix64).
///
/// The simulator's reproducibility contract is bit-identical output for a
/// given scenario seed, so all randomness goes through this generator rather
/// than std:: distributions, whose sequences are implementation-defined.
/// Independent streams for noise, jitter, Monte Carlo trials etc. are derived
/// with derive(), so adding a target to a scene never shifts the noise draw.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
  }

  /// Decorrelated child stream: same base seed + different stream id give
  /// statistically independent sequences.
  static Rng derive(std::uint64_t base_seed, std::uint64_t stream_id) {
    std::uint64_t x = base_seed;
    std::uint64_t a = splitmix64(x);
    x ^= 0x9e3779b97f4a7c15ull * (stream_id + 1);
    return Rng(a ^ splitmix64(x));
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

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (pairs cached).
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0,1] so the log is finite.
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * kPi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Circular complex Gaussian with E|z|^2 = 1.
  std::complex<double> cgaussian() {
    constexpr double kHalfSqrt = 0.70710678118654752440;
    double re = gaussian();
    double im = gaussian();
    return {re * kHalfSqrt, im * kHalfSqrt};
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace isacsim
