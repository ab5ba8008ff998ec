#pragma once

// Exact non-negative dyadic rationals num / 2^exp.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sobolsep {

using uint128 = unsigned __int128;

std::string to_string(uint128 x);
/// Number of significant bits; 0 for x == 0.
int bit_width(uint128 x) noexcept;

/// A value num / 2^exp with exp >= 0, kept in lowest terms (num odd, or
/// exp == 0). Zero is 0/2^0.
class Dyadic {
public:
  constexpr Dyadic() = default;

  static Dyadic from(uint128 num, int exp);
  /// 2^e for any integer e.
  static Dyadic pow2(int e);
  /// Parses "num/2^e" (as produced by str()) or a bare integer.
  static Dyadic parse(std::string_view s);

  uint128 numerator() const noexcept { return num_; }
  int exponent() const noexcept { return exp_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_power_of_two() const noexcept;
  /// Exact log2 when the value is a power of two.
  std::optional<int> log2() const noexcept;

  double to_double() const noexcept;
  std::string str() const;

  Dyadic halved() const { return from(num_, exp_ + 1); }
  Dyadic quartered() const { return from(num_, exp_ + 2); }

  friend Dyadic operator+(const Dyadic &a, const Dyadic &b);
  friend Dyadic operator*(const Dyadic &a, const Dyadic &b);
  friend std::strong_ordering operator<=>(const Dyadic &a, const Dyadic &b);
  friend bool operator==(const Dyadic &a, const Dyadic &b) noexcept {
    return a.num_ == b.num_ && a.exp_ == b.exp_;
  }

private:
  uint128 num_ = 0;
  int exp_ = 0;
};

/// floor(sqrt(x) * 2^bits) / 2^bits.
Dyadic floor_sqrt(const Dyadic &x, int bits);
/// ceil(sqrt(x) * 2^bits) / 2^bits.
Dyadic ceil_sqrt(const Dyadic &x, int bits);
/// floor(a / b * 2^bits) / 2^bits; b must be non-zero.
Dyadic div_floor(const Dyadic &a, const Dyadic &b, int bits);
/// ceil(a / b * 2^bits) / 2^bits; b must be non-zero.
Dyadic div_ceil(const Dyadic &a, const Dyadic &b, int bits);

/// Sign of x^den - 2^num, i.e. compares x against 2^(num/den) exactly.
/// den must be positive.
std::strong_ordering compare_to_pow2(const Dyadic &x, int num, int den);

} // namespace sobolsep
