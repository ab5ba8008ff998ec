#pragma once

// Two-dimensional digital sequences over F2.
//
// Point n of the sequence generated by (C1, C2) is
//   (phi(C1 n), phi(C2 n)),   phi(z) = z[1]/2 + z[2]/4 + ... + z[m]/2^m,
// where n is the m-digit expansion of the index. Coordinates are kept as exact
// numerators over 2^m: the numerator of phi(z) is z read most-significant
// digit first, i.e. the bit reversal of z's packed word.

#include "sobolsep/gf2.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sobolsep {

inline constexpr int max_scale = 64;

/// The point (nx / 2^scale, ny / 2^scale) in [0,1)^2.
struct DyadicPoint {
  int scale = 1;
  std::uint64_t nx = 0;
  std::uint64_t ny = 0;

  /// Same point at a finer scale; new_scale >= scale.
  DyadicPoint rescaled(int new_scale) const;

  /// Representation equality (same scale and numerators).
  friend bool operator==(const DyadicPoint &, const DyadicPoint &) = default;
};

/// Equality of the represented points, across scales.
bool same_point(const DyadicPoint &a, const DyadicPoint &b);

/// Generator matrices (C1, C2) of a two-dimensional digital sequence, both
/// m x m with m <= 64.
class GeneratorPair {
public:
  GeneratorPair(BitMatrix c1, BitMatrix c2, std::string description);

  /// C1 = identity, C2 = Pascal matrix.
  static GeneratorPair sobol(int m);

  int m() const noexcept { return m_; }
  const BitMatrix &c1() const noexcept { return c1_; }
  const BitMatrix &c2() const noexcept { return c2_; }
  const std::string &description() const noexcept { return description_; }

  /// Coordinate numerators of the point for index 2^(j-1), j = 1..m.
  const std::vector<std::uint64_t> &column_images_x() const noexcept {
    return image_x_;
  }
  const std::vector<std::uint64_t> &column_images_y() const noexcept {
    return image_y_;
  }

private:
  int m_;
  BitMatrix c1_, c2_;
  std::string description_;
  std::vector<std::uint64_t> image_x_, image_y_;
};

/// Point n of the Sobol' sequence at scale m. Requires 1 <= m <= 64 and
/// n < 2^m.
DyadicPoint sobol_point(std::uint64_t n, int m);

/// Point n of the digital sequence generated by g, by a direct matrix-vector
/// product.
DyadicPoint digital_point(const GeneratorPair &g, std::uint64_t n);

/// The first N points of a sequence, ordered by index.
class PointSet {
public:
  PointSet() = default;
  /// All points must share `scale`.
  PointSet(int scale, std::vector<DyadicPoint> points, std::string provenance);

  int scale() const noexcept { return scale_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const DyadicPoint &operator[](std::size_t i) const { return points_[i]; }
  const std::vector<DyadicPoint> &points() const noexcept { return points_; }
  const std::string &provenance() const noexcept { return provenance_; }

  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  /// First n points (n <= size()).
  PointSet take(std::size_t n) const;

  /// The same points at another scale. Coarsening requires every numerator
  /// to be divisible by the scale ratio.
  PointSet rescaled(int new_scale) const;

  /// Smallest scale >= 1 representing every point exactly.
  int minimal_scale() const noexcept;

private:
  int scale_ = 1;
  std::vector<DyadicPoint> points_;
  std::string provenance_;
};

/// Points n = 0..N-1 of g's sequence; 1 <= N <= 2^m. Consecutive points differ
/// by the XOR of a precomputed run of column images, so each point costs O(1)
/// word operations.
PointSet prefix(const GeneratorPair &g, std::uint64_t N);

/// One elementary interval [a/2^k,(a+1)/2^k) x [b/2^l,(b+1)/2^l) whose count
/// is not 1.
struct CellFailure {
  int k = 0;
  int l = 0;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t count = 0;
};

struct NetReport {
  bool pass = true;
  int scale = 0;
  /// Number of (k, l) splits examined.
  int splits_checked = 0;
  std::optional<CellFailure> first_failure;
  /// Every failing cell; only populated in exhaustive mode.
  std::vector<CellFailure> failures;
};

/// Checks that every elementary interval of volume 2^-m holds exactly one of
/// the 2^m points. Requires ps.size() == 2^ps.scale() (and scale <= 26).
/// Stops at the first bad cell unless `exhaustive` is set.
NetReport check_elementary_intervals(const PointSet &ps,
                                     bool exhaustive = false);

/// CSV with header `index,nx,ny,scale`.
void write_points_csv(std::ostream &os, const PointSet &ps);
PointSet read_points_csv(std::istream &is, std::string provenance = "csv");

/// Matrix file: first line m, then m rows of C1 and m rows of C2, each a
/// string of m '0'/'1' characters. Blank lines and '#' comments are skipped.
GeneratorPair read_generator_matrices(std::istream &is,
                                      std::string description = "matrices");

} // namespace sobolsep
