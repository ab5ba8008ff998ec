#include "sobolsep/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

namespace sobolsep {

namespace {

constexpr std::size_t words_for(std::size_t len) {
  return (len + BitVector::word_bits - 1) / BitVector::word_bits;
}

} // namespace

BitVector::BitVector(std::size_t len) : len_(len), words_(words_for(len), 0) {}

BitVector BitVector::ones(std::size_t len) {
  BitVector v(len);
  for (auto &w : v.words_)
    w = ~word_type{0};
  if (const auto tail = len % word_bits; tail != 0)
    v.words_.back() = (word_type{1} << tail) - 1;
  return v;
}

BitVector BitVector::from_word(word_type bits, std::size_t len) {
  if (len > word_bits)
    throw std::domain_error("BitVector::from_word: length exceeds 64");
  if (len < word_bits && (bits >> len) != 0)
    throw std::domain_error("BitVector::from_word: bits set beyond length");
  BitVector v(len);
  if (len > 0)
    v.words_[0] = bits;
  return v;
}

BitVector BitVector::from_string(std::string_view s) {
  BitVector v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      v.set(i + 1, true);
    else if (s[i] != '0')
      throw std::domain_error("BitVector::from_string: expected '0' or '1'");
  }
  return v;
}

void BitVector::check_index(std::size_t i) const {
  if (i < 1 || i > len_)
    throw std::out_of_range("BitVector: index " + std::to_string(i) +
                            " outside 1.." + std::to_string(len_));
}

bool BitVector::get(std::size_t i) const {
  check_index(i);
  return (words_[(i - 1) / word_bits] >> ((i - 1) % word_bits)) & 1u;
}

void BitVector::set(std::size_t i, bool value) {
  check_index(i);
  const word_type mask = word_type{1} << ((i - 1) % word_bits);
  auto &w = words_[(i - 1) / word_bits];
  w = value ? (w | mask) : (w & ~mask);
}

void BitVector::flip(std::size_t i) {
  check_index(i);
  words_[(i - 1) / word_bits] ^= word_type{1} << ((i - 1) % word_bits);
}

BitVector BitVector::slice(std::size_t i, std::size_t j) const {
  if (i < 1 || j < i || j > len_)
    throw std::out_of_range("BitVector::slice: bad range");
  BitVector out(j - i + 1);
  for (std::size_t k = i; k <= j; ++k)
    if (get(k))
      out.set(k - i + 1, true);
  return out;
}

std::size_t BitVector::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_)
    c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

BitVector::word_type BitVector::to_word() const {
  if (len_ > word_bits)
    throw std::domain_error("BitVector::to_word: length exceeds 64");
  return words_.empty() ? 0 : words_[0];
}

BitVector &BitVector::operator^=(const BitVector &other) {
  if (other.len_ != len_)
    throw std::domain_error("BitVector xor: length mismatch");
  for (std::size_t k = 0; k < words_.size(); ++k)
    words_[k] ^= other.words_[k];
  return *this;
}

std::string BitVector::to_string() const {
  std::string s(len_, '0');
  for (std::size_t i = 1; i <= len_; ++i)
    if (get(i))
      s[i - 1] = '1';
  return s;
}

BitVector concat(const BitVector &a, const BitVector &b) {
  BitVector out(a.size() + b.size());
  for (std::size_t i = 1; i <= a.size(); ++i)
    if (a[i])
      out.set(i, true);
  for (std::size_t i = 1; i <= b.size(); ++i)
    if (b[i])
      out.set(a.size() + i, true);
  return out;
}

BitVector binary_expand(std::uint64_t n, std::size_t m) {
  if (m == 0)
    throw std::domain_error("binary_expand: m must be positive");
  if (m < 64 && (n >> m) != 0)
    throw std::domain_error("binary_expand: n = " + std::to_string(n) +
                            " does not fit in " + std::to_string(m) + " bits");
  BitVector v(m);
  for (std::size_t i = 1; i <= std::min<std::size_t>(m, 64); ++i)
    if ((n >> (i - 1)) & 1u)
      v.set(i, true);
  return v;
}

// BitMatrix

BitMatrix BitMatrix::from_columns(std::vector<BitVector> columns) {
  BitMatrix M;
  if (!columns.empty()) {
    M.rows_ = columns.front().size();
    for (const auto &c : columns)
      if (c.size() != M.rows_)
        throw std::domain_error("BitMatrix::from_columns: ragged columns");
  }
  M.cols_ = std::move(columns);
  return M;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string> &rows) {
  if (rows.empty())
    return {};
  const std::size_t ncols = rows.front().size();
  std::vector<BitVector> cols(ncols, BitVector(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != ncols)
      throw std::domain_error("BitMatrix::from_rows: ragged rows");
    for (std::size_t j = 0; j < ncols; ++j) {
      const char ch = rows[i][j];
      if (ch != '0' && ch != '1')
        throw std::domain_error("BitMatrix::from_rows: expected '0' or '1'");
      if (ch == '1')
        cols[j].set(i + 1, true);
    }
  }
  return from_columns(std::move(cols));
}

BitMatrix BitMatrix::identity(std::size_t m) {
  std::vector<BitVector> cols(m, BitVector(m));
  for (std::size_t j = 1; j <= m; ++j)
    cols[j - 1].set(j, true);
  return from_columns(std::move(cols));
}

BitMatrix BitMatrix::zero(std::size_t rows, std::size_t cols) {
  BitMatrix M;
  M.rows_ = rows;
  M.cols_.assign(cols, BitVector(rows));
  return M;
}

bool BitMatrix::operator()(std::size_t i, std::size_t j) const {
  return column(j)[i];
}

const BitVector &BitMatrix::column(std::size_t j) const {
  if (j < 1 || j > cols_.size())
    throw std::out_of_range("BitMatrix: column index out of range");
  return cols_[j - 1];
}

BitVector BitMatrix::row(std::size_t i) const {
  if (i < 1 || i > rows_)
    throw std::out_of_range("BitMatrix: row index out of range");
  BitVector r(cols_.size());
  for (std::size_t j = 1; j <= cols_.size(); ++j)
    if (cols_[j - 1][i])
      r.set(j, true);
  return r;
}

BitMatrix BitMatrix::submatrix(std::size_t r1, std::size_t r2, std::size_t c1,
                               std::size_t c2) const {
  if (r1 < 1 || r2 < r1 || r2 > rows_ || c1 < 1 || c2 < c1 ||
      c2 > cols_.size())
    throw std::out_of_range("BitMatrix::submatrix: bad range");
  std::vector<BitVector> cols;
  cols.reserve(c2 - c1 + 1);
  for (std::size_t j = c1; j <= c2; ++j)
    cols.push_back(cols_[j - 1].slice(r1, r2));
  return from_columns(std::move(cols));
}

bool BitMatrix::is_upper_triangular() const {
  for (std::size_t j = 1; j <= cols_.size(); ++j)
    for (std::size_t i = j + 1; i <= rows_; ++i)
      if (cols_[j - 1][i])
        return false;
  return true;
}

bool BitMatrix::is_nonsingular() const {
  if (rows_ != cols_.size())
    throw std::domain_error("BitMatrix::is_nonsingular: matrix not square");
  std::vector<BitVector> work;
  work.reserve(rows_);
  for (std::size_t i = 1; i <= rows_; ++i)
    work.push_back(row(i));
  const std::size_t n = rows_;
  std::size_t rank = 0;
  for (std::size_t col = 1; col <= n && rank < n; ++col) {
    std::size_t pivot = rank;
    while (pivot < n && !work[pivot][col])
      ++pivot;
    if (pivot == n)
      continue;
    std::swap(work[rank], work[pivot]);
    for (std::size_t r = 0; r < n; ++r)
      if (r != rank && work[r][col])
        work[r] ^= work[rank];
    ++rank;
  }
  return rank == n;
}

std::string BitMatrix::to_string() const {
  std::string s;
  for (std::size_t i = 1; i <= rows_; ++i) {
    s += row(i).to_string();
    s += '\n';
  }
  return s;
}

BitVector matvec(const BitMatrix &M, const BitVector &v) {
  if (v.size() != M.cols())
    throw std::domain_error("matvec: vector length " + std::to_string(v.size()) +
                            " != matrix columns " + std::to_string(M.cols()));
  BitVector out(M.rows());
  for (std::size_t j = 1; j <= M.cols(); ++j)
    if (v[j])
      out ^= M.column(j);
  return out;
}

BitMatrix pascal_matrix(std::size_t m) {
  if (m == 0)
    throw std::domain_error("pascal_matrix: m must be positive");
  std::vector<BitVector> cols(m, BitVector(m));
  for (std::size_t j = 1; j <= m; ++j)
    for (std::size_t i = 1; i <= j; ++i)
      if (pascal_entry(i, j))
        cols[j - 1].set(i, true);
  return BitMatrix::from_columns(std::move(cols));
}

BitVector pascal_times_ones(std::size_t m) {
  if (m == 0)
    throw std::domain_error("pascal_times_ones: m must be positive");
  BitVector out(m);
  for (std::size_t i = 1; i <= m; ++i)
    if ((i & ~m) == 0)
      out.set(i, true);
  return out;
}

} // namespace sobolsep
