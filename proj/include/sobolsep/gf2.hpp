#pragma once

// Linear algebra over F2 with packed bit storage.
//
// All public indices are 1-based: bit i of a BitVector is the coefficient of
// 2^(i-1) in the integer it expands, so binary_expand(n, m)[1] is the
// lowest binary digit of n. Internally bit i lives at position (i-1) of the
// packed word array.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sobolsep {

class BitVector {
public:
  using word_type = std::uint64_t;
  static constexpr std::size_t word_bits = 64;

  BitVector() = default;
  /// Zero vector of the given length.
  explicit BitVector(std::size_t len);

  static BitVector zeros(std::size_t len) { return BitVector(len); }
  static BitVector ones(std::size_t len);
  /// Low `len` bits of `bits`; len <= 64.
  static BitVector from_word(word_type bits, std::size_t len);
  /// Characters '0'/'1', first character is index 1.
  static BitVector from_string(std::string_view s);

  std::size_t size() const noexcept { return len_; }
  bool empty() const noexcept { return len_ == 0; }

  bool operator[](std::size_t i) const { return get(i); }
  bool get(std::size_t i) const;
  void set(std::size_t i, bool value);
  void flip(std::size_t i);

  /// Bits i..j inclusive, 1 <= i <= j <= size().
  BitVector slice(std::size_t i, std::size_t j) const;

  std::size_t count() const noexcept;
  bool none() const noexcept { return count() == 0; }
  bool all() const noexcept { return count() == len_; }

  /// Bits 1..64 packed into a word; throws if size() > 64.
  word_type to_word() const;

  BitVector &operator^=(const BitVector &other);
  friend BitVector operator^(BitVector a, const BitVector &b) { return a ^= b; }
  friend bool operator==(const BitVector &, const BitVector &) = default;

  const std::vector<word_type> &words() const noexcept { return words_; }

  /// '0'/'1' characters, index 1 first.
  std::string to_string() const;

private:
  void check_index(std::size_t i) const;

  std::size_t len_ = 0;
  std::vector<word_type> words_;
};

/// Vertical concatenation: a's bits first.
BitVector concat(const BitVector &a, const BitVector &b);

/// The m-digit binary expansion of n (index 1 = 2^0 digit). Requires n < 2^m.
BitVector binary_expand(std::uint64_t n, std::size_t m);

/// Immutable rows x cols matrix over F2, stored column-major.
class BitMatrix {
public:
  BitMatrix() = default;
  /// Builds from columns; all columns must share one length.
  static BitMatrix from_columns(std::vector<BitVector> columns);
  /// Builds from rows of '0'/'1' characters.
  static BitMatrix from_rows(const std::vector<std::string> &rows);
  static BitMatrix identity(std::size_t m);
  static BitMatrix zero(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_.size(); }

  bool operator()(std::size_t i, std::size_t j) const;
  const BitVector &column(std::size_t j) const;
  BitVector row(std::size_t i) const;

  /// Rows r1..r2 and columns c1..c2, all inclusive and 1-based.
  BitMatrix submatrix(std::size_t r1, std::size_t r2, std::size_t c1,
                      std::size_t c2) const;

  bool is_upper_triangular() const;
  /// Gaussian elimination on a copy; square matrices only.
  bool is_nonsingular() const;

  friend bool operator==(const BitMatrix &, const BitMatrix &) = default;

  std::string to_string() const;

private:
  std::size_t rows_ = 0;
  std::vector<BitVector> cols_;
};

/// M v over F2. Throws std::domain_error unless v.size() == M.cols().
BitVector matvec(const BitMatrix &M, const BitVector &v);

/// binom(j-1, i-1) mod 2 by Lucas: 1 iff the digits of i-1 are a subset of
/// the digits of j-1.
constexpr bool pascal_entry(std::uint64_t i, std::uint64_t j) noexcept {
  return i >= 1 && j >= 1 && ((i - 1) & ~(j - 1)) == 0;
}

/// The m x m upper-triangular Pascal matrix mod 2.
BitMatrix pascal_matrix(std::size_t m);

/// P_m 1_m computed directly: entry i is binom(m, i) mod 2.
BitVector pascal_times_ones(std::size_t m);

/// Reverses the low m bits of x (m <= 64). This is the radical inverse
/// numerator: the digit with weight 2^(i-1) gets weight 2^(m-i).
constexpr std::uint64_t reverse_bits(std::uint64_t x, unsigned m) noexcept {
  if (m == 0)
    return 0;
  x = ((x >> 1) & 0x5555555555555555ull) | ((x & 0x5555555555555555ull) << 1);
  x = ((x >> 2) & 0x3333333333333333ull) | ((x & 0x3333333333333333ull) << 2);
  x = ((x >> 4) & 0x0F0F0F0F0F0F0F0Full) | ((x & 0x0F0F0F0F0F0F0F0Full) << 4);
  x = ((x >> 8) & 0x00FF00FF00FF00FFull) | ((x & 0x00FF00FF00FF00FFull) << 8);
  x = ((x >> 16) & 0x0000FFFF0000FFFFull) | ((x & 0x0000FFFF0000FFFFull) << 16);
  x = (x >> 32) | (x << 32);
  return x >> (64 - m);
}

} // namespace sobolsep
