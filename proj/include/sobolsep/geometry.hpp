#pragma once

// Separation radius, covering radius and mesh ratio of finite point sets in
// [0,1]^2 under the l1, l2 and l-infinity norms.
//
// Every comparison is done on exact integers at the point set's scale s:
// l-inf and l1 distances are integers over 2^s, l2 distances are handled as
// squared integers over 2^(2s). Nothing irrational is ever materialized; l2
// quantities are reported squared, plus outward-rounded dyadic bounds where a
// plain distance is needed.

#include "sobolsep/digital.hpp"
#include "sobolsep/dyadic.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace sobolsep {

enum class Norm { L1, L2, LInf };

std::string_view to_string(Norm n) noexcept;
/// Accepts "l1", "l2", "linf".
Norm parse_norm(std::string_view s);

/// Thrown when a computation would exceed its configured work budget.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Largest scale geometry accepts (squared l2 distances must fit 128 bits).
inline constexpr int max_geometry_scale = 62;

/// Distance between two points; for Norm::L2 the *squared* distance.
Dyadic norm_distance(const DyadicPoint &a, const DyadicPoint &b, Norm norm);

/// min over the set of norm_distance(q, y), by direct scan.
Dyadic distance_to_set(const PointSet &ps, const DyadicPoint &q, Norm norm);

struct SeparationReport {
  Norm norm = Norm::LInf;
  std::size_t N = 0;
  /// Minimum pairwise distance (squared for l2).
  Dyadic min_dist;
  /// min_dist / 2 (squared for l2, i.e. min_dist / 4).
  Dyadic radius;
  /// Lexicographically smallest index pair attaining min_dist, i < j.
  std::size_t witness_i = 0;
  std::size_t witness_j = 0;

  /// log2 of the (unsquared) minimum distance, when that is exact: an integer
  /// for l1/l-inf powers of two, possibly a half-integer for l2.
  std::optional<double> min_dist_log2() const;
  std::optional<double> radius_log2() const;
  /// Unsquared values as doubles.
  double min_dist_value() const;
  double radius_value() const;

  friend bool operator==(const SeparationReport &,
                         const SeparationReport &) = default;
};

/// Exact separation by a plane sweep over x with a y-ordered active strip of
/// width equal to the current best. Requires ps.size() >= 2; duplicate points
/// give min_dist = 0.
SeparationReport separation(const PointSet &ps, Norm norm);

/// Same result by checking all N(N-1)/2 pairs.
SeparationReport separation_naive(const PointSet &ps, Norm norm);

/// Separation of every prefix of g's sequence, N = 2..N_max.
///
/// Points are inserted one at a time into a hash of square buckets whose side
/// 2^c is the smallest power of two at least the current minimum distance
/// (l-inf bound), so a new point only needs its 3 x 3 bucket neighbourhood.
/// Whenever the minimum drops to at most half the side, c shrinks and all
/// points are rehashed. c only decreases and starts at the scale s, so there
/// are at most s rebuilds of O(N) each, and each insertion costs O(expected
/// neighbourhood size): O(N (s + k)) overall for well-spread sets.
std::vector<SeparationReport> separation_profile(const GeneratorPair &g,
                                                 std::size_t N_max, Norm norm);
/// Same, over an explicit point sequence.
std::vector<SeparationReport> separation_profile(const PointSet &ps,
                                                 std::size_t N_max, Norm norm);

struct CoveringOptions {
  /// Reject grids with more than 2^max_centers_log2 centers.
  int max_centers_log2 = 26;
  /// Worker threads for the grid scan; 0 picks hardware concurrency. The
  /// result does not depend on this.
  unsigned workers = 0;
};

inline constexpr int default_grid_exponent = 11;

/// Certified enclosure lo <= h_p(Q) <= hi of the covering radius.
struct CoveringInterval {
  Norm norm = Norm::LInf;
  Dyadic lo;
  Dyadic hi;
  /// Grid exponent: 4^k centers ((2a+1)/2^(k+1), (2b+1)/2^(k+1)).
  int k = 0;
  /// l2 only: exact squared max-min distance over the grid centers (lo is
  /// its square root rounded down).
  std::optional<Dyadic> lo_squared;
};

/// Max over all grid centers of the distance to the set. Since that distance
/// function is 1-Lipschitz in the same norm, the true covering radius lies
/// within the cell co-radius r_k above it: 2^-(k+1) (l-inf), 2^-k (l1),
/// sqrt(2) 2^-(k+1) (l2, rounded up).
CoveringInterval covering_certified(const PointSet &ps, Norm norm, int k,
                                    const CoveringOptions &opts = {});

/// The co-radius r_k used for hi - lo (an upper bound for l2).
Dyadic cell_coradius(Norm norm, int k);

struct MeshRatioInterval {
  Dyadic lo;
  Dyadic hi;
};

/// Outward-rounded [covering.lo / q, covering.hi / q] with q the separation
/// radius.
MeshRatioInterval mesh_ratio(const CoveringInterval &covering,
                             const SeparationReport &sep);
MeshRatioInterval mesh_ratio(const PointSet &ps, Norm norm, int k,
                             const CoveringOptions &opts = {});

} // namespace sobolsep
