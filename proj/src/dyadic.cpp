#include "sobolsep/dyadic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace sobolsep {

namespace mp = boost::multiprecision;

namespace {

mp::cpp_int to_big(uint128 x) {
  mp::cpp_int r = static_cast<std::uint64_t>(x >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(x);
  return r;
}

uint128 from_big(const mp::cpp_int &x) {
  if (x < 0 || mp::msb(x) >= 128)
    throw std::overflow_error("Dyadic: numerator exceeds 128 bits");
  const auto hi = static_cast<std::uint64_t>(x >> 64);
  const auto lo = static_cast<std::uint64_t>(x & mp::cpp_int(~std::uint64_t{0}));
  return (uint128{hi} << 64) | lo;
}

mp::cpp_int ceil_div(const mp::cpp_int &a, const mp::cpp_int &b) {
  return (a + b - 1) / b;
}

mp::cpp_int ceil_isqrt(const mp::cpp_int &a) {
  mp::cpp_int r = mp::sqrt(a);
  if (r * r < a)
    ++r;
  return r;
}

void check_bits(int bits) {
  if (bits < 0 || bits > 120)
    throw std::domain_error("Dyadic: precision must be in [0, 120]");
}

} // namespace

std::string to_string(uint128 x) {
  if (x == 0)
    return "0";
  std::string s;
  while (x != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(x % 10)));
    x /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

int bit_width(uint128 x) noexcept {
  int w = 0;
  if (x >> 64) {
    w = 64;
    x >>= 64;
  }
  auto lo = static_cast<std::uint64_t>(x);
  while (lo) {
    ++w;
    lo >>= 1;
  }
  return w;
}

Dyadic Dyadic::from(uint128 num, int exp) {
  Dyadic d;
  if (num == 0)
    return d;
  if (exp < 0) {
    if (bit_width(num) - exp > 128)
      throw std::overflow_error("Dyadic: value exceeds 128 bits");
    num <<= -exp;
    exp = 0;
  }
  while (exp > 0 && (num & 1u) == 0) {
    num >>= 1;
    --exp;
  }
  d.num_ = num;
  d.exp_ = exp;
  return d;
}

Dyadic Dyadic::pow2(int e) { return from(1, -e); }

Dyadic Dyadic::parse(std::string_view s) {
  auto parse_u128 = [](std::string_view t) {
    if (t.empty())
      throw std::invalid_argument("Dyadic::parse: empty numerator");
    uint128 v = 0;
    for (char c : t) {
      if (c < '0' || c > '9')
        throw std::invalid_argument("Dyadic::parse: bad digit in '" +
                                    std::string(t) + "'");
      const uint128 next = v * 10 + static_cast<unsigned>(c - '0');
      if (next / 10 != v)
        throw std::overflow_error("Dyadic::parse: numerator too large");
      v = next;
    }
    return v;
  };
  const auto slash = s.find('/');
  if (slash == std::string_view::npos)
    return from(parse_u128(s), 0);
  const auto den = s.substr(slash + 1);
  if (den.substr(0, 2) != "2^")
    throw std::invalid_argument("Dyadic::parse: expected 'num/2^e', got '" +
                                std::string(s) + "'");
  int e = 0;
  const auto digits = den.substr(2);
  const auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), e);
  if (ec != std::errc{} || ptr != digits.data() + digits.size())
    throw std::invalid_argument("Dyadic::parse: bad exponent in '" +
                                std::string(s) + "'");
  return from(parse_u128(s.substr(0, slash)), e);
}

bool Dyadic::is_power_of_two() const noexcept {
  return num_ != 0 && (num_ & (num_ - 1)) == 0;
}

std::optional<int> Dyadic::log2() const noexcept {
  if (!is_power_of_two())
    return std::nullopt;
  return bit_width(num_) - 1 - exp_;
}

double Dyadic::to_double() const noexcept {
  const double hi = static_cast<double>(static_cast<std::uint64_t>(num_ >> 64));
  const double lo = static_cast<double>(static_cast<std::uint64_t>(num_));
  return std::ldexp(hi, 64 - exp_) + std::ldexp(lo, -exp_);
}

std::string Dyadic::str() const {
  return to_string(num_) + "/2^" + std::to_string(exp_);
}

Dyadic operator+(const Dyadic &a, const Dyadic &b) {
  const int e = std::max(a.exp_, b.exp_);
  const mp::cpp_int sum = (to_big(a.num_) << (e - a.exp_)) +
                          (to_big(b.num_) << (e - b.exp_));
  return Dyadic::from(from_big(sum), e);
}

Dyadic operator*(const Dyadic &a, const Dyadic &b) {
  return Dyadic::from(from_big(to_big(a.num_) * to_big(b.num_)),
                      a.exp_ + b.exp_);
}

std::strong_ordering operator<=>(const Dyadic &a, const Dyadic &b) {
  // Compare a.num * 2^b.exp against b.num * 2^a.exp.
  const int d = a.exp_ - b.exp_;
  if (d >= 0) {
    if (b.num_ != 0 && bit_width(b.num_) + d > 128)
      return std::strong_ordering::less;
    return a.num_ <=> (b.num_ << d);
  }
  if (a.num_ != 0 && bit_width(a.num_) - d > 128)
    return std::strong_ordering::greater;
  return (a.num_ << -d) <=> b.num_;
}

// sqrt(num / 2^exp) * 2^bits = sqrt(num * 2^(2 bits - exp)); the radicand is
// rounded in the same direction as the result, which preserves the bound.
Dyadic floor_sqrt(const Dyadic &x, int bits) {
  check_bits(bits);
  const int shift = 2 * bits - x.exponent();
  mp::cpp_int radicand = to_big(x.numerator());
  if (shift >= 0)
    radicand <<= shift;
  else
    radicand >>= -shift;
  return Dyadic::from(from_big(mp::sqrt(radicand)), bits);
}

Dyadic ceil_sqrt(const Dyadic &x, int bits) {
  check_bits(bits);
  const int shift = 2 * bits - x.exponent();
  mp::cpp_int radicand = to_big(x.numerator());
  if (shift >= 0)
    radicand <<= shift;
  else
    radicand = ceil_div(radicand, mp::cpp_int(1) << -shift);
  return Dyadic::from(from_big(ceil_isqrt(radicand)), bits);
}

// (a.num / 2^a.exp) / (b.num / 2^b.exp) * 2^bits
//   = a.num * 2^(bits + b.exp - a.exp) / b.num
Dyadic div_floor(const Dyadic &a, const Dyadic &b, int bits) {
  check_bits(bits);
  if (b.is_zero())
    throw std::domain_error("div_floor: division by zero");
  const int shift = bits + b.exponent() - a.exponent();
  mp::cpp_int num = to_big(a.numerator());
  mp::cpp_int den = to_big(b.numerator());
  if (shift >= 0)
    num <<= shift;
  else
    den <<= -shift;
  return Dyadic::from(from_big(num / den), bits);
}

Dyadic div_ceil(const Dyadic &a, const Dyadic &b, int bits) {
  check_bits(bits);
  if (b.is_zero())
    throw std::domain_error("div_ceil: division by zero");
  const int shift = bits + b.exponent() - a.exponent();
  mp::cpp_int num = to_big(a.numerator());
  mp::cpp_int den = to_big(b.numerator());
  if (shift >= 0)
    num <<= shift;
  else
    den <<= -shift;
  return Dyadic::from(from_big(ceil_div(num, den)), bits);
}

// x^den against 2^num with x = n / 2^e:  n^den  vs  2^(num + e den).
std::strong_ordering compare_to_pow2(const Dyadic &x, int num, int den) {
  if (den <= 0)
    throw std::domain_error("compare_to_pow2: denominator must be positive");
  if (x.is_zero())
    return std::strong_ordering::less;
  mp::cpp_int lhs = mp::pow(to_big(x.numerator()), static_cast<unsigned>(den));
  mp::cpp_int rhs = 1;
  const long long right_shift =
      static_cast<long long>(x.exponent()) * den + num;
  if (right_shift >= 0)
    rhs <<= static_cast<unsigned>(right_shift);
  else
    lhs <<= static_cast<unsigned>(-right_shift);
  return lhs.compare(rhs) <=> 0;
}

} // namespace sobolsep
