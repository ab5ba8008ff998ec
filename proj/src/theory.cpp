#include "sobolsep/theory.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace sobolsep {

namespace mp = boost::multiprecision;

namespace {

int floor_log2(std::uint64_t x) { return std::bit_width(x) - 1; }

void require_positive(int m, const char *who) {
  if (m < 1)
    throw std::domain_error(std::string(who) + ": m must be positive");
}

mp::cpp_int big(const Dyadic &d) {
  const uint128 n = d.numerator();
  mp::cpp_int r = static_cast<std::uint64_t>(n >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(n);
  return r;
}

// Sign of  a * 2^ea  -  b * 2^eb.
int compare_scaled(mp::cpp_int a, long long ea, mp::cpp_int b, long long eb) {
  const long long lo = std::min(ea, eb);
  a <<= static_cast<unsigned>(ea - lo);
  b <<= static_cast<unsigned>(eb - lo);
  return a.compare(b);
}

} // namespace

std::string_view to_string(MKind k) noexcept {
  switch (k) {
  case MKind::Pow2:
    return "pow2";
  case MKind::Pow2Minus1:
    return "pow2_minus1";
  case MKind::General:
    return "general";
  }
  return "?";
}

MDecomposition decompose(int m) {
  require_positive(m, "decompose");
  const auto um = static_cast<std::uint64_t>(m);
  MDecomposition d;
  d.m = m;
  if (std::has_single_bit(um)) {
    d.kind = MKind::Pow2;
    d.v = floor_log2(um);
  } else if (std::has_single_bit(um + 1)) {
    d.kind = MKind::Pow2Minus1;
    d.v = floor_log2(um + 1);
  } else {
    d.kind = MKind::General;
    d.v = floor_log2(um);
    const std::uint64_t r = um - d.V();
    d.w = floor_log2(r);
    d.c = static_cast<int>(r - d.W());
  }
  return d;
}

Dyadic separation_formula(int m) {
  const auto d = decompose(m);
  if (d.kind != MKind::General)
    return Dyadic::pow2(-(m + 1));
  return Dyadic::pow2(-static_cast<int>(d.V() + d.W()));
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> witness_pair(int m) {
  const auto d = decompose(m);
  if (d.kind != MKind::General)
    return std::nullopt;
  const std::uint64_t V = d.V(), W = d.W();
  if (V + W >= 64)
    throw std::domain_error("witness_pair: indices exceed 64 bits");
  const std::uint64_t p = (std::uint64_t{1} << (V + W - 1)) + (std::uint64_t{1} << (W - 1));
  const std::uint64_t q = (std::uint64_t{1} << (V + W)) - (std::uint64_t{1} << W);
  return std::pair{p, q};
}

CorollaryBounds corollary_bounds(int m) {
  require_positive(m, "corollary_bounds");
  CorollaryBounds b;
  b.m = m;
  b.general_quarters = -(3 * m + 5);
  if (m != 1 && m != 5)
    b.strong_quarters = -(3 * m + 6);
  b.equality_expected =
      m >= 2 && std::has_single_bit(static_cast<std::uint64_t>(m) + 2);
  return b;
}

bool within_pow2_quarters(const Dyadic &q, int quarters) {
  return compare_to_pow2(q, quarters, 4) <= 0;
}

bool equals_pow2_quarters(const Dyadic &q, int quarters) {
  return compare_to_pow2(q, quarters, 4) == 0;
}

int limsup_constant_quarters(std::uint64_t N) {
  if (N < 2)
    throw std::domain_error("limsup_constant: N must be at least 2");
  return N < 64 ? -2 : -3;
}

int mesh_ratio_constant_quarters(std::uint64_t N) {
  if (N < 2)
    throw std::domain_error("mesh_ratio_constant: N must be at least 2");
  return N < 64 ? -2 : -1;
}

// N^3 (n / 2^e)^4 <= 2^quarters  <=>  N^3 n^4 <= 2^(quarters + 4e)
bool scaled_separation_within(std::uint64_t N, const Dyadic &q, int quarters) {
  const mp::cpp_int lhs = mp::pow(mp::cpp_int(N), 3) * mp::pow(big(q), 4);
  return compare_scaled(lhs, 0, mp::cpp_int(1),
                        quarters + 4LL * q.exponent()) <= 0;
}

// (n / 2^e)^4 >= 2^quarters N  <=>  n^4 >= N 2^(quarters + 4e)
bool scaled_ratio_at_least(std::uint64_t N, const Dyadic &rho, int quarters) {
  return compare_scaled(mp::pow(big(rho), 4), 0, mp::cpp_int(N),
                        quarters + 4LL * rho.exponent()) >= 0;
}

} // namespace sobolsep
