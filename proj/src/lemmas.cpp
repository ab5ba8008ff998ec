#include "sobolsep/lemmas.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <string>

namespace sobolsep::lemmas {

namespace {

// v[i..j] are all `bit`; empty ranges (i > j) qualify.
bool all_bits(const BitVector &v, std::size_t i, std::size_t j, bool bit) {
  for (std::size_t t = i; t <= j; ++t)
    if (v[t] != bit)
      return false;
  return true;
}

bool same_range(const BitVector &a, const BitVector &b, std::size_t i,
                std::size_t j) {
  for (std::size_t t = i; t <= j; ++t)
    if (a[t] != b[t])
      return false;
  return true;
}

std::uint64_t radical_inverse(std::uint64_t n, int m) {
  return reverse_bits(n, static_cast<unsigned>(m));
}

void check_ml(int m, int l, const char *who) {
  if (l < 2 || l > m || m > 64)
    throw std::domain_error(std::string(who) + ": need 2 <= l <= m <= 64");
}

struct Digits {
  BitVector p, q, x;
  std::size_t l;
  std::size_t m;
};

Digits digits(std::uint64_t p, std::uint64_t q, int m, int l) {
  const auto um = static_cast<std::size_t>(m);
  auto dp = binary_expand(p, um);
  auto dq = binary_expand(q, um);
  auto dx = dp ^ dq;
  return {std::move(dp), std::move(dq), std::move(dx),
          static_cast<std::size_t>(l), um};
}

// One of the two orientations listed for a structured difference: with the
// block k0..l-1 of p all `p_bit` and of q all `!p_bit`, and the digit at l
// ordered accordingly.
bool oriented_block(const Digits &d, std::size_t k0, bool p_bit, bool p_less) {
  if (!all_bits(d.p, k0, d.l - 1, p_bit) || !all_bits(d.q, k0, d.l - 1, !p_bit))
    return false;
  return p_less ? d.p[d.l] >= d.q[d.l] : d.p[d.l] <= d.q[d.l];
}

} // namespace

bool column_pow2_support(const BitMatrix &P, std::size_t W) {
  if (W < 1 || W > P.cols())
    throw std::domain_error("column_pow2_support: W outside matrix");
  for (std::size_t i = 1; i <= P.rows(); ++i)
    if (P(i, W) != (i <= W))
      return false;
  return true;
}

bool column_sum_support(const BitMatrix &P, std::size_t V, std::size_t W) {
  if (V + W > P.cols())
    throw std::domain_error("column_sum_support: V+W outside matrix");
  for (std::size_t i = 1; i <= P.rows(); ++i) {
    const bool expected = i <= W || (V + 1 <= i && i <= V + W);
    if (P(i, V + W) != expected)
      return false;
  }
  return true;
}

bool row_pow2_fixed(const BitMatrix &Pm, const BitVector &p, std::size_t V) {
  if (Pm.rows() < V || Pm.rows() > 2 * V - 1)
    throw std::domain_error("row_pow2_fixed: need V <= m <= 2V-1");
  return matvec(Pm, p)[V] == p[V];
}

bool row_sum_fixed(const BitMatrix &Pm, const BitVector &p, std::size_t V,
                   std::size_t W) {
  if (W >= V || Pm.rows() < V + W || Pm.rows() > V + 2 * W - 1)
    throw std::domain_error("row_sum_fixed: need W < V and V+W <= m <= V+2W-1");
  return matvec(Pm, p)[V + W] == p[V + W];
}

bool row_before_pow2(const BitMatrix &Pm, const BitVector &p, std::size_t V) {
  if (V < 2 || Pm.rows() > 2 * V - 2 || V > Pm.rows())
    throw std::domain_error("row_before_pow2: need 2 <= V <= m <= 2V-2");
  const auto image = matvec(Pm, p);
  return image[V - 1] == (p[V - 1] != p[V]);
}

bool self_similar_blocks(std::size_t V) {
  const auto big = pascal_matrix(2 * V);
  const auto small = pascal_matrix(V);
  return small == big.submatrix(1, V, V + 1, 2 * V) &&
         small == big.submatrix(V + 1, 2 * V, V + 1, 2 * V);
}

bool ones_image_pow2(std::size_t W) {
  const auto image = matvec(pascal_matrix(W), BitVector::ones(W));
  for (std::size_t i = 1; i <= W; ++i)
    if (image[i] != (i == W))
      return false;
  return true;
}

bool ones_image_sum(std::size_t V, std::size_t W) {
  const auto image = matvec(pascal_matrix(V + W), BitVector::ones(V + W));
  for (std::size_t i = 1; i <= V + W; ++i)
    if (image[i] != (i == W || i == V || i == V + W))
      return false;
  return true;
}

bool forward_close(std::uint64_t p, std::uint64_t q, int m, int l) {
  check_ml(m, l, "forward_close");
  const auto rp = radical_inverse(p, m), rq = radical_inverse(q, m);
  return rq >= rp && rq - rp < (std::uint64_t{1} << (m - l + 1));
}

bool close(std::uint64_t p, std::uint64_t q, int m, int l) {
  return forward_close(p, q, m, l) || forward_close(q, p, m, l);
}

NearDigitsCase classify_near_digits(std::uint64_t p, std::uint64_t q, int m,
                                    int l) {
  if (!forward_close(p, q, m, l))
    throw std::domain_error("classify_near_digits: pair is not forward-close");
  const auto d = digits(p, q, m, l);
  NearDigitsCase out;
  out.same_prefix = same_range(d.p, d.q, 1, d.l - 1);
  for (std::size_t k = 1; k <= d.l - 1; ++k) {
    const bool a = same_range(d.p, d.q, 1, k - 1);
    const bool b = !d.p[k] && d.q[k];
    const bool c = all_bits(d.p, k + 1, d.l - 1, true) &&
                   all_bits(d.q, k + 1, d.l - 1, false);
    const bool dd = d.p[d.l] >= d.q[d.l];
    const bool e = !same_range(d.p, d.q, d.l, d.m);
    if (a && b && c && dd && e)
      out.split_points.push_back(static_cast<int>(k));
  }
  return out;
}

bool near_digits_alternative_holds(std::uint64_t p, std::uint64_t q, int m,
                                   int l) {
  const auto c = classify_near_digits(p, q, m, l);
  if (c.same_prefix)
    return c.split_points.empty();
  return c.split_points.size() == 1;
}

bool xor_prefix_is_step(std::uint64_t p, std::uint64_t q, int m, int l) {
  if (p == q || !close(p, q, m, l))
    throw std::domain_error("xor_prefix_is_step: need distinct close pair");
  const auto d = digits(p, q, m, l);
  // Once a one appears, no zero may follow within 1..l-1.
  bool seen_one = false;
  for (std::size_t i = 1; i <= d.l - 1; ++i) {
    if (d.x[i])
      seen_one = true;
    else if (seen_one)
      return false;
  }
  return true;
}

bool xor_rising_edge_structure(std::uint64_t p, std::uint64_t q, int m, int l) {
  if (p == q || !close(p, q, m, l))
    throw std::domain_error("xor_rising_edge_structure: need distinct close pair");
  const auto d = digits(p, q, m, l);
  const bool p_less = radical_inverse(p, m) < radical_inverse(q, m);
  for (std::size_t k = 2; k <= d.l - 1; ++k) {
    if (d.x[k - 1] || !d.x[k])
      continue;
    if (!all_bits(d.x, 1, k - 1, false) || !all_bits(d.x, k, d.l - 1, true) ||
        all_bits(d.x, d.l, d.m, false))
      return false;
    const bool first = !p_less && d.p[k] && !d.q[k] &&
                       oriented_block(d, k + 1, false, false);
    const bool second = p_less && !d.p[k] && d.q[k] &&
                        oriented_block(d, k + 1, true, true);
    if (!first && !second)
      return false;
  }
  return true;
}

bool xor_double_one_structure(std::uint64_t p, std::uint64_t q, int m, int l) {
  if (p == q || !close(p, q, m, l))
    throw std::domain_error("xor_double_one_structure: need distinct close pair");
  const auto d = digits(p, q, m, l);
  const bool p_less = radical_inverse(p, m) < radical_inverse(q, m);
  for (std::size_t k = 2; k <= d.l - 1; ++k) {
    if (!d.x[k - 1] || !d.x[k])
      continue;
    if (!all_bits(d.x, k, d.l - 1, true) || all_bits(d.x, d.l, d.m, false))
      return false;
    const bool first = !p_less && oriented_block(d, k, false, false);
    const bool second = p_less && oriented_block(d, k, true, true);
    if (!first && !second)
      return false;
  }
  return true;
}

NearPair sample_near_pair(std::mt19937_64 &rng) {
  NearPair x;
  x.m = std::uniform_int_distribution<int>(4, 20)(rng);
  x.l = std::uniform_int_distribution<int>(2, x.m)(rng);
  const std::uint64_t full = std::uint64_t{1} << x.m;
  const std::uint64_t rp = std::uniform_int_distribution<std::uint64_t>(0, full - 1)(rng);
  const std::uint64_t window =
      std::min(std::uint64_t{1} << (x.m - x.l + 1), full - rp);
  const std::uint64_t rq =
      rp + std::uniform_int_distribution<std::uint64_t>(0, window - 1)(rng);
  x.p = radical_inverse(rp, x.m);
  x.q = radical_inverse(rq, x.m);
  return x;
}

bool near_pair_statements_hold(const NearPair &x) {
  if (!near_digits_alternative_holds(x.p, x.q, x.m, x.l))
    return false;
  if (x.p == x.q)
    return true;
  for (const auto &[a, b] : {std::pair{x.p, x.q}, std::pair{x.q, x.p}})
    if (!xor_prefix_is_step(a, b, x.m, x.l) ||
        !xor_rising_edge_structure(a, b, x.m, x.l) ||
        !xor_double_one_structure(a, b, x.m, x.l))
      return false;
  return true;
}

} // namespace sobolsep::lemmas
