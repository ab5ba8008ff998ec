#pragma once

// Closed-form l-inf separation of the two-dimensional Sobol' nets Q_{2^m},
// the explicit close pair, and the power-law bounds that follow from them.

#include "sobolsep/dyadic.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

namespace sobolsep {

enum class MKind { Pow2, Pow2Minus1, General };

std::string_view to_string(MKind k) noexcept;

/// m classified as 2^v, 2^v - 1, or 2^v + 2^w + c with v > w >= 0 and
/// 0 <= c < 2^w. m = 1 counts as 2^0 and m = 2 as 2^1.
struct MDecomposition {
  int m = 1;
  MKind kind = MKind::Pow2;
  int v = 0;
  /// Only meaningful for MKind::General.
  int w = 0;
  int c = 0;

  std::uint64_t V() const noexcept { return std::uint64_t{1} << v; }
  std::uint64_t W() const noexcept { return std::uint64_t{1} << w; }
};

MDecomposition decompose(int m);

/// q_inf(Q_{2^m}): 2^-(m+1) if m = 2^v or 2^v - 1, otherwise 2^-(V+W).
Dyadic separation_formula(int m);

/// For General m, the indices p = 2^(V+W-1) + 2^(W-1) and q = 2^(V+W) - 2^W
/// whose points are 2^-(V+W-1) apart in l-inf. None for the other kinds.
std::optional<std::pair<std::uint64_t, std::uint64_t>> witness_pair(int m);

/// Exponents are in quarters: the bound 2^(x/4) is stored as x.
struct CorollaryBounds {
  int m = 1;
  /// 2^-(3m/4 + 5/4), valid for every m.
  int general_quarters = 0;
  /// 2^-(3m/4 + 3/2), valid for m not in {1, 5}.
  std::optional<int> strong_quarters;
  /// The strong bound is attained when m = 2^v - 2, v >= 2.
  bool equality_expected = false;
};

CorollaryBounds corollary_bounds(int m);

/// q <= 2^(quarters/4), exactly.
bool within_pow2_quarters(const Dyadic &q, int quarters);
bool equals_pow2_quarters(const Dyadic &q, int quarters);

/// C1 in q_inf(Q_N) <= C1 N^(-3/4), as quarters of log2:
/// 2^-1/2 for N < 64 and 2^-3/4 for N >= 64. Requires N >= 2.
int limsup_constant_quarters(std::uint64_t N);
/// C2 in rho_inf(Q_N) >= C2 N^(1/4): 2^-1/2 for N < 64, 2^-1/4 for N >= 64.
int mesh_ratio_constant_quarters(std::uint64_t N);

/// N^(3/4) q <= 2^(quarters/4), checked as N^3 q^4 <= 2^quarters.
bool scaled_separation_within(std::uint64_t N, const Dyadic &q, int quarters);
/// rho >= 2^(quarters/4) N^(1/4), checked as rho^4 >= 2^quarters N.
bool scaled_ratio_at_least(std::uint64_t N, const Dyadic &rho, int quarters);

} // namespace sobolsep
