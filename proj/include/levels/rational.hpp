// Copyright 2026 The Levels Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include "levels/error.hpp"

namespace levels {

/// Non-negative exact rational, always stored in lowest terms.
class Rational {
 public:
  constexpr Rational() = default;

  Rational(std::uint64_t numerator, std::uint64_t denominator) {
    if (denominator == 0) {
      throw Error(ErrorCode::InvalidArgument, "zero denominator");
    }
    const std::uint64_t g = std::gcd(numerator, denominator);
    num_ = numerator / g;
    den_ = denominator / g;
  }

  static Rational integer(std::uint64_t value) { return Rational(value, 1); }

  std::uint64_t numerator() const noexcept { return num_; }
  std::uint64_t denominator() const noexcept { return den_; }

  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// Canonical text: "0", "1", "7", or "n/d".
  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Accepts "n", "n/d" and decimal "i.fff" (at most 18 fractional digits).
  static std::optional<Rational> parse(std::string_view text) {
    auto read_uint = [](std::string_view digits) -> std::optional<std::uint64_t> {
      if (digits.empty()) return std::nullopt;
      for (char c : digits) {
        if (c < '0' || c > '9') return std::nullopt;
      }
      std::uint64_t value = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
      if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
      return value;
    };

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      auto n = read_uint(text.substr(0, slash));
      auto d = read_uint(text.substr(slash + 1));
      if (!n || !d || *d == 0) return std::nullopt;
      return Rational(*n, *d);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      std::string_view whole = text.substr(0, dot);
      std::string_view frac = text.substr(dot + 1);
      if (frac.empty() || frac.size() > 18) return std::nullopt;
      std::optional<std::uint64_t> w = whole.empty() ? std::optional<std::uint64_t>(0) : read_uint(whole);
      auto f = read_uint(frac);
      if (!w || !f) return std::nullopt;
      std::uint64_t scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      const unsigned __int128 n = static_cast<unsigned __int128>(*w) * scale + *f;
      if (n > UINT64_MAX) return std::nullopt;
      return Rational(static_cast<std::uint64_t>(n), scale);
    }
    auto n = read_uint(text);
    if (!n) return std::nullopt;
    return Rational(*n, 1);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    using U = unsigned __int128;
    const std::uint64_t g = std::gcd(a.den_, b.den_);
    const U den = static_cast<U>(a.den_ / g) * b.den_;
    const U num = static_cast<U>(a.num_) * (b.den_ / g) + static_cast<U>(b.num_) * (a.den_ / g);
    return reduce(num, den);
  }

  /// Saturating difference is not meaningful for probabilities; a < b throws.
  friend Rational operator-(const Rational& a, const Rational& b) {
    if (a < b) throw Error(ErrorCode::InvalidArgument, "negative rational " + a.to_string() + " - " + b.to_string());
    using U = unsigned __int128;
    const std::uint64_t g = std::gcd(a.den_, b.den_);
    const U den = static_cast<U>(a.den_ / g) * b.den_;
    const U num = static_cast<U>(a.num_) * (b.den_ / g) - static_cast<U>(b.num_) * (a.den_ / g);
    return reduce(num, den);
  }

  friend Rational abs_diff(const Rational& a, const Rational& b) { return a < b ? b - a : a - b; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    using U = unsigned __int128;
    return static_cast<U>(a.num_) * b.den_ <=> static_cast<U>(b.num_) * a.den_;
  }

 private:
  static Rational reduce(unsigned __int128 num, unsigned __int128 den) {
    unsigned __int128 a = num, b = den;
    while (b != 0) {
      unsigned __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a != 0) {
      num /= a;
      den /= a;
    }
    if (num > UINT64_MAX || den > UINT64_MAX) {
      throw Error(ErrorCode::ArithmeticOverflow, "rational exceeds 64-bit range");
    }
    Rational r;
    r.num_ = static_cast<std::uint64_t>(num);
    r.den_ = den == 0 ? 1 : static_cast<std::uint64_t>(den);
    return r;
  }

  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

/// True when |a - b| <= 10^-9.
inline bool within_nano(const Rational& a, const Rational& b) {
  const Rational d = abs_diff(a, b);
  return static_cast<unsigned __int128>(d.numerator()) * 1'000'000'000u <= d.denominator();
}

/// A measure on a relationship: an exact rational in [0, 1].
class Probability {
 public:
  constexpr Probability() = default;

  explicit Probability(Rational value) : value_(value) {
    if (value_ > Rational::integer(1)) {
      throw Error(ErrorCode::InvalidProbability, value_.to_string() + " is outside [0, 1]");
    }
  }

  Probability(std::uint64_t numerator, std::uint64_t denominator)
      : Probability(Rational(numerator, denominator)) {}

  static Probability zero() { return Probability(); }
  static Probability one() { return Probability(Rational::integer(1)); }

  /// Parses a decimal or fraction; nullopt for malformed text or values above 1.
  static std::optional<Probability> parse(std::string_view text) {
    auto r = Rational::parse(text);
    if (!r || *r > Rational::integer(1)) return std::nullopt;
    return Probability(*r);
  }

  const Rational& value() const noexcept { return value_; }
  std::uint64_t numerator() const noexcept { return value_.numerator(); }
  std::uint64_t denominator() const noexcept { return value_.denominator(); }
  double to_double() const noexcept { return value_.to_double(); }
  std::string to_string() const { return value_.to_string(); }

  bool is_certain() const noexcept { return value_ == Rational::integer(1); }
  bool is_impossible() const noexcept { return value_.numerator() == 0; }

  friend bool operator==(const Probability&, const Probability&) = default;
  friend std::strong_ordering operator<=>(const Probability& a, const Probability& b) noexcept {
    return a.value_ <=> b.value_;
  }

 private:
  Rational value_;
};

}  // namespace levels
