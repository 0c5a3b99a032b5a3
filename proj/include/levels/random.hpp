// Copyright 2026 The Levels Authors
// SPDX-License-Identifier: Apache-2.0

/// \file
/// Reproducible random streams.
///
/// The algorithms here are part of the output contract: any reimplementation
/// that follows them reproduces every simulation bit-for-bit.
///
/// - SplitMix64 (Steele, Lea, Flood) turns a seed into well-mixed 64-bit words.
/// - Stream seeds are derived by counter: `derive_seed(seed, k)` is the first
///   SplitMix64 output for state `seed ^ mix(k)`, so streams can be created in
///   any order, on any worker.
/// - Each stream is xorshift64* (Marsaglia shift register, shifts 12/25/27,
///   multiplier 0x2545F4914F6CDD1D) seeded with the derived seed.
/// - A uniform double in [0, 1) is the top 53 bits times 2^-53.

#pragma once

#include <cstdint>

#include "levels/rational.hpp"

namespace levels {

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t operator()() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Seed of the independent stream number `counter` under `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) noexcept {
  SplitMix64 key(counter);
  return SplitMix64(seed ^ key())();
}

class Xorshift64Star {
 public:
  using result_type = std::uint64_t;

  // The all-zero state is a fixed point of the shift register.
  explicit constexpr Xorshift64Star(std::uint64_t seed) noexcept
      : state_(seed == 0 ? 0x9E3779B97F4A7C15ULL : seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return UINT64_MAX; }

  constexpr result_type operator()() noexcept {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  /// 53-bit draw k; the uniform variate is k * 2^-53.
  constexpr std::uint64_t next53() noexcept { return (*this)() >> 11; }

  double uniform() noexcept { return static_cast<double>(next53()) * 0x1.0p-53; }

  /// Exact Bernoulli(p) trial: k * 2^-53 < p, compared in integers.
  bool bernoulli(const Rational& p) noexcept { return below(next53(), p); }

  static bool below(std::uint64_t k53, const Rational& p) noexcept {
    using U = unsigned __int128;
    return static_cast<U>(k53) * p.denominator() < (static_cast<U>(p.numerator()) << 53);
  }

 private:
  std::uint64_t state_;
};

}  // namespace levels
