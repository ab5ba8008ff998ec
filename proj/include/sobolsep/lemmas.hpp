#pragma once

// Checkable statements about the Pascal matrix mod 2 and about the digit
// patterns of two indices whose radical inverses are close. Each predicate
// evaluates one statement literally on bit vectors, so property tests can
// hammer it with random instances.

#include "sobolsep/gf2.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace sobolsep::lemmas {

// Pascal matrix. V = 2^v and W = 2^w with v > w >= 0.

/// Column W of P has ones exactly in rows 1..W (all rows of P checked).
bool column_pow2_support(const BitMatrix &P, std::size_t W);
/// Column V+W has ones exactly in rows 1..W and V+1..V+W.
bool column_sum_support(const BitMatrix &P, std::size_t V, std::size_t W);
/// (P_m p)[V] = p[V]; needs V <= m <= 2V-1.
bool row_pow2_fixed(const BitMatrix &Pm, const BitVector &p, std::size_t V);
/// (P_m p)[V+W] = p[V+W]; needs V+W <= m <= V+2W-1, which covers every
/// m = V+W+c with c < W. Row V+W picks up column V+2W once m reaches it.
bool row_sum_fixed(const BitMatrix &Pm, const BitVector &p, std::size_t V,
                   std::size_t W);
/// (P_m p)[V-1] = p[V-1] xor p[V]; needs m <= 2V-2 and V >= 2.
bool row_before_pow2(const BitMatrix &Pm, const BitVector &p, std::size_t V);
/// P_V equals both the upper-right and lower-right V x V blocks of P_{2V}.
bool self_similar_blocks(std::size_t V);
/// (P_W 1_W)[i] = 1 iff i = W.
bool ones_image_pow2(std::size_t W);
/// (P_{V+W} 1_{V+W})[i] = 1 iff i in {W, V, V+W}.
bool ones_image_sum(std::size_t V, std::size_t W);

// Close radical inverses. Indices are m-digit expansions; l in 2..m.

/// 0 <= phi(q) - phi(p) < 2^(1-l).
bool forward_close(std::uint64_t p, std::uint64_t q, int m, int l);
/// |phi(q) - phi(p)| < 2^(1-l).
bool close(std::uint64_t p, std::uint64_t q, int m, int l);

struct NearDigitsCase {
  /// p[1..l-1] == q[1..l-1].
  bool same_prefix = false;
  /// Every k in 1..l-1 meeting conditions (a)-(e) of the second alternative.
  std::vector<int> split_points;
};

/// Evaluates both alternatives for a forward-close pair.
NearDigitsCase classify_near_digits(std::uint64_t p, std::uint64_t q, int m,
                                    int l);
/// Exactly one alternative holds, and the second one with a single k.
/// Requires forward_close(p, q, m, l).
bool near_digits_alternative_holds(std::uint64_t p, std::uint64_t q, int m,
                                   int l);

/// (p xor q)[1..l-1] is of the form 0...01...1 (all-zero and all-one
/// included). Requires close(p, q, m, l) and p != q.
bool xor_prefix_is_step(std::uint64_t p, std::uint64_t q, int m, int l);
/// The structure forced on p, q when (p xor q)[k-1] = 0, (p xor q)[k] = 1 for
/// some 2 <= k <= l-1 (vacuously true when no such k exists).
bool xor_rising_edge_structure(std::uint64_t p, std::uint64_t q, int m, int l);
/// The structure forced when (p xor q)[k-1] = (p xor q)[k] = 1 for some
/// 2 <= k <= l-1.
bool xor_double_one_structure(std::uint64_t p, std::uint64_t q, int m, int l);

struct NearPair {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  int m = 0;
  int l = 0;
};

/// Uniform m in [4, 20] and l in [2, m], then p and q with
/// 0 <= phi(q) - phi(p) < 2^(1-l).
NearPair sample_near_pair(std::mt19937_64 &rng);

/// The two-alternative statement for (p, q) and, when p != q, the three XOR
/// statements in both argument orders.
bool near_pair_statements_hold(const NearPair &x);

} // namespace sobolsep::lemmas
