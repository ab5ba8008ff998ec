#include "sobolsep/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <utility>

namespace sobolsep {

namespace {

constexpr uint128 infinite = ~uint128{0};

// Coordinates of a point set at its minimal exact scale.
struct Grid {
  int scale = 0;
  std::vector<std::uint64_t> x, y;
};

Grid integer_coordinates(const PointSet &ps, int min_scale = 1) {
  const int s = std::max(ps.minimal_scale(), min_scale);
  if (s > max_geometry_scale)
    throw std::domain_error("geometry: scale " + std::to_string(s) +
                            " exceeds " + std::to_string(max_geometry_scale));
  Grid g;
  g.scale = s;
  g.x.reserve(ps.size());
  g.y.reserve(ps.size());
  for (const auto &p : ps) {
    if (s >= ps.scale()) {
      g.x.push_back(p.nx << (s - ps.scale()));
      g.y.push_back(p.ny << (s - ps.scale()));
    } else {
      g.x.push_back(p.nx >> (ps.scale() - s));
      g.y.push_back(p.ny >> (ps.scale() - s));
    }
  }
  return g;
}

constexpr std::uint64_t absdiff(std::uint64_t a, std::uint64_t b) noexcept {
  return a > b ? a - b : b - a;
}

// Distance in integer units: l-inf and l1 over 2^s, l2 squared over 2^(2s).
inline uint128 metric(std::uint64_t dx, std::uint64_t dy, Norm norm) noexcept {
  switch (norm) {
  case Norm::LInf:
    return std::max(dx, dy);
  case Norm::L1:
    return uint128{dx} + dy;
  case Norm::L2:
    return uint128{dx} * dx + uint128{dy} * dy;
  }
  return 0;
}

std::uint64_t isqrt(uint128 v) {
  if (v == 0)
    return 0;
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && uint128{r} * r > v)
    --r;
  while (uint128{r + 1} * (r + 1) <= v)
    ++r;
  return r;
}

// Largest per-axis offset a pair at distance d (in metric units) can have.
std::uint64_t axis_bound(uint128 d, Norm norm) {
  if (d == infinite)
    return std::numeric_limits<std::uint64_t>::max();
  if (norm == Norm::L2)
    return isqrt(d);
  return d > std::numeric_limits<std::uint64_t>::max()
             ? std::numeric_limits<std::uint64_t>::max()
             : static_cast<std::uint64_t>(d);
}

// Smallest metric value a pair with per-axis offset >= a can have.
uint128 metric_floor(std::uint64_t a, Norm norm) {
  return norm == Norm::L2 ? uint128{a} * a : uint128{a};
}

Dyadic as_dyadic(uint128 d, int scale, Norm norm) {
  return Dyadic::from(d, norm == Norm::L2 ? 2 * scale : scale);
}

SeparationReport make_report(Norm norm, std::size_t N, uint128 d, int scale,
                             std::size_t i, std::size_t j) {
  SeparationReport r;
  r.norm = norm;
  r.N = N;
  r.min_dist = as_dyadic(d, scale, norm);
  r.radius = norm == Norm::L2 ? r.min_dist.quartered() : r.min_dist.halved();
  r.witness_i = i;
  r.witness_j = j;
  return r;
}

void require_pairs(const PointSet &ps, const char *who) {
  if (ps.size() < 2)
    throw std::domain_error(std::string(who) + ": need at least 2 points");
}

struct Best {
  uint128 d = infinite;
  std::size_t i = 0, j = 0;

  void offer(uint128 dist, std::size_t a, std::size_t b) {
    if (a > b)
      std::swap(a, b);
    if (dist < d || (dist == d && std::pair(a, b) < std::pair(i, j))) {
      d = dist;
      i = a;
      j = b;
    }
  }
};

struct BucketKey {
  std::uint64_t bx, by;
  friend bool operator==(const BucketKey &, const BucketKey &) = default;
};

struct BucketHash {
  std::size_t operator()(const BucketKey &k) const noexcept {
    return std::hash<std::uint64_t>{}(k.bx * 0x9E3779B97F4A7C15ull ^ k.by);
  }
};

} // namespace

std::string_view to_string(Norm n) noexcept {
  switch (n) {
  case Norm::L1:
    return "l1";
  case Norm::L2:
    return "l2";
  case Norm::LInf:
    return "linf";
  }
  return "?";
}

Norm parse_norm(std::string_view s) {
  if (s == "l1")
    return Norm::L1;
  if (s == "l2")
    return Norm::L2;
  if (s == "linf")
    return Norm::LInf;
  throw std::invalid_argument("unknown norm '" + std::string(s) +
                              "' (expected l1, l2 or linf)");
}

Dyadic norm_distance(const DyadicPoint &a, const DyadicPoint &b, Norm norm) {
  const int s = std::max(a.scale, b.scale);
  if (s > max_geometry_scale)
    throw std::domain_error("norm_distance: scale too large");
  const auto pa = a.rescaled(s), pb = b.rescaled(s);
  return as_dyadic(metric(absdiff(pa.nx, pb.nx), absdiff(pa.ny, pb.ny), norm),
                   s, norm);
}

Dyadic distance_to_set(const PointSet &ps, const DyadicPoint &q, Norm norm) {
  if (ps.empty())
    throw std::domain_error("distance_to_set: empty set");
  std::optional<Dyadic> best;
  for (const auto &p : ps) {
    const auto d = norm_distance(p, q, norm);
    if (!best || d < *best)
      best = d;
  }
  return *best;
}

std::optional<double> SeparationReport::min_dist_log2() const {
  const auto l = min_dist.log2();
  if (!l)
    return std::nullopt;
  return norm == Norm::L2 ? *l / 2.0 : static_cast<double>(*l);
}

std::optional<double> SeparationReport::radius_log2() const {
  const auto l = min_dist_log2();
  if (!l)
    return std::nullopt;
  return *l - 1.0;
}

double SeparationReport::min_dist_value() const {
  return norm == Norm::L2 ? std::sqrt(min_dist.to_double())
                          : min_dist.to_double();
}

double SeparationReport::radius_value() const { return min_dist_value() / 2; }

SeparationReport separation(const PointSet &ps, Norm norm) {
  require_pairs(ps, "separation");
  const Grid g = integer_coordinates(ps);
  const std::size_t n = ps.size();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::tie(g.x[a], g.y[a], a) < std::tie(g.x[b], g.y[b], b);
  });

  // Active strip: points within axis_bound of the sweep line, keyed by y.
  std::set<std::pair<std::uint64_t, std::uint32_t>> active;
  std::size_t left = 0;
  Best best;
  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::uint32_t i = order[pos];
    const std::uint64_t bound = axis_bound(best.d, norm);
    while (left < pos && g.x[i] - g.x[order[left]] > bound) {
      active.erase({g.y[order[left]], order[left]});
      ++left;
    }
    const std::uint64_t ylo = g.y[i] > bound ? g.y[i] - bound : 0;
    for (auto it = active.lower_bound({ylo, 0}); it != active.end(); ++it) {
      if (it->first > g.y[i] && it->first - g.y[i] > bound)
        break;
      const std::uint32_t j = it->second;
      best.offer(metric(g.x[i] - g.x[j], absdiff(g.y[i], g.y[j]), norm), i, j);
    }
    active.insert({g.y[i], i});
  }
  return make_report(norm, n, best.d, g.scale, best.i, best.j);
}

SeparationReport separation_naive(const PointSet &ps, Norm norm) {
  require_pairs(ps, "separation_naive");
  const Grid g = integer_coordinates(ps);
  const std::size_t n = ps.size();
  uint128 best = infinite;
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const uint128 d =
          metric(absdiff(g.x[i], g.x[j]), absdiff(g.y[i], g.y[j]), norm);
      if (d < best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  return make_report(norm, n, best, g.scale, bi, bj);
}

std::vector<SeparationReport> separation_profile(const PointSet &ps,
                                                 std::size_t N_max, Norm norm) {
  if (N_max < 2 || N_max > ps.size())
    throw std::domain_error("separation_profile: N_max = " +
                            std::to_string(N_max) + " outside 2.." +
                            std::to_string(ps.size()));
  const Grid g = integer_coordinates(ps.take(N_max));
  int c = g.scale;
  std::unordered_map<BucketKey, std::vector<std::uint32_t>, BucketHash> buckets;
  auto key = [&](std::size_t i) {
    return BucketKey{g.x[i] >> c, g.y[i] >> c};
  };

  std::vector<SeparationReport> out;
  out.reserve(N_max - 1);
  Best best;
  for (std::size_t j = 0; j < N_max; ++j) {
    const auto [bx, by] = key(j);
    for (std::uint64_t ax = bx == 0 ? 0 : bx - 1; ax <= bx + 1; ++ax)
      for (std::uint64_t ay = by == 0 ? 0 : by - 1; ay <= by + 1; ++ay) {
        const auto it = buckets.find({ax, ay});
        if (it == buckets.end())
          continue;
        for (const auto i : it->second)
          best.offer(metric(absdiff(g.x[i], g.x[j]), absdiff(g.y[i], g.y[j]),
                            norm),
                     i, j);
      }
    buckets[{bx, by}].push_back(static_cast<std::uint32_t>(j));
    if (j == 0)
      continue;
    out.push_back(make_report(norm, j + 1, best.d, g.scale, best.i, best.j));

    // Keep side/2 < bound <= side so neighbours stay within one bucket.
    const std::uint64_t bound = axis_bound(best.d, norm);
    const int old_c = c;
    while (c > 0 && bound <= (std::uint64_t{1} << (c - 1)))
      --c;
    if (c != old_c) {
      buckets.clear();
      for (std::size_t i = 0; i <= j; ++i)
        buckets[key(i)].push_back(static_cast<std::uint32_t>(i));
    }
  }
  return out;
}

std::vector<SeparationReport> separation_profile(const GeneratorPair &g,
                                                 std::size_t N_max, Norm norm) {
  if (N_max < 2 || (g.m() < 64 && N_max > (std::uint64_t{1} << g.m())))
    throw std::domain_error("separation_profile: N_max = " +
                            std::to_string(N_max) + " outside 2..2^" +
                            std::to_string(g.m()));
  return separation_profile(prefix(g, N_max), N_max, norm);
}

// Covering radius

Dyadic cell_coradius(Norm norm, int k) {
  switch (norm) {
  case Norm::LInf:
    return Dyadic::pow2(-(k + 1));
  case Norm::L1:
    return Dyadic::pow2(-k);
  case Norm::L2:
    // sqrt(2) 2^-(k+1) = sqrt(2^-(2k+1))
    return ceil_sqrt(Dyadic::pow2(-(2 * k + 1)), k + 40);
  }
  return {};
}

namespace {

// Points bucketed on a 2^b x 2^b grid, stored contiguously per bucket.
class BucketGrid {
public:
  BucketGrid(const Grid &g, int bits) : bits_(bits), shift_(g.scale - bits) {
    const std::size_t side = std::size_t{1} << bits_;
    start_.assign(side * side + 1, 0);
    for (std::size_t i = 0; i < g.x.size(); ++i)
      ++start_[cell(g.x[i], g.y[i]) + 1];
    std::partial_sum(start_.begin(), start_.end(), start_.begin());
    auto fill = start_;
    px_.resize(g.x.size());
    py_.resize(g.x.size());
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      const auto at = fill[cell(g.x[i], g.y[i])]++;
      px_[at] = g.x[i];
      py_[at] = g.y[i];
    }
  }

  // Nearest-point distance from (qx, qy) in metric units.
  uint128 nearest(std::uint64_t qx, std::uint64_t qy, Norm norm) const {
    const std::int64_t side = std::int64_t{1} << bits_;
    const auto bx = static_cast<std::int64_t>(qx >> shift_);
    const auto by = static_cast<std::int64_t>(qy >> shift_);
    uint128 best = infinite;
    for (std::int64_t r = 0;; ++r) {
      if (r > 0) {
        // Buckets not yet scanned lie outside the block of radius r-1.
        const std::uint64_t gap = block_gap(qx, qy, bx, by, r - 1);
        if (best <= metric_floor(gap, norm) || r > side)
          break;
      }
      const std::int64_t x0 = std::max<std::int64_t>(bx - r, 0);
      const std::int64_t x1 = std::min<std::int64_t>(bx + r, side - 1);
      const std::int64_t y0 = std::max<std::int64_t>(by - r, 0);
      const std::int64_t y1 = std::min<std::int64_t>(by + r, side - 1);
      for (std::int64_t cx = x0; cx <= x1; ++cx) {
        const bool edge_x = cx == bx - r || cx == bx + r;
        for (std::int64_t cy = y0; cy <= y1; ++cy) {
          if (!edge_x && cy != by - r && cy != by + r)
            continue;
          const std::size_t c =
              (static_cast<std::size_t>(cx) << bits_) | static_cast<std::size_t>(cy);
          for (auto at = start_[c]; at < start_[c + 1]; ++at) {
            const uint128 d = metric(absdiff(px_[at], qx), absdiff(py_[at], qy), norm);
            if (d < best)
              best = d;
          }
        }
      }
    }
    return best;
  }

private:
  std::size_t cell(std::uint64_t x, std::uint64_t y) const {
    return static_cast<std::size_t>((x >> shift_) << bits_ | (y >> shift_));
  }

  // l-inf distance from q to the part of the unit square outside the block of
  // buckets within Chebyshev index distance r of (bx, by). Sides where the
  // block already reaches the boundary do not count.
  std::uint64_t block_gap(std::uint64_t qx, std::uint64_t qy, std::int64_t bx,
                          std::int64_t by, std::int64_t r) const {
    const std::int64_t side = std::int64_t{1} << bits_;
    std::uint64_t gap = std::numeric_limits<std::uint64_t>::max();
    const auto clip = [&](std::uint64_t q, std::int64_t b) {
      if (b - r > 0)
        gap = std::min(gap, q - (static_cast<std::uint64_t>(b - r) << shift_));
      if (b + r + 1 < side)
        gap = std::min(gap, (static_cast<std::uint64_t>(b + r + 1) << shift_) - q);
    };
    clip(qx, bx);
    clip(qy, by);
    return gap;
  }

  int bits_;
  int shift_;
  std::vector<std::size_t> start_;
  std::vector<std::uint64_t> px_, py_;
};

} // namespace

CoveringInterval covering_certified(const PointSet &ps, Norm norm, int k,
                                    const CoveringOptions &opts) {
  if (ps.empty())
    throw std::domain_error("covering_certified: empty point set");
  if (k < 1)
    throw std::domain_error("covering_certified: grid exponent must be >= 1");
  if (2 * k > opts.max_centers_log2)
    throw ResourceError("covering_certified: 4^" + std::to_string(k) +
                        " grid centers exceed the budget of 2^" +
                        std::to_string(opts.max_centers_log2));
  const Grid g = integer_coordinates(ps, k + 1);
  const int S = g.scale;
  const int bits = std::min({static_cast<int>(std::bit_width(ps.size()) / 2), S, 12});
  const BucketGrid index(g, bits);

  const std::uint64_t centers = std::uint64_t{1} << k;
  const int center_shift = S - k - 1;
  auto scan_rows = [&](std::uint64_t a0, std::uint64_t a1) {
    uint128 worst = 0;
    for (std::uint64_t a = a0; a < a1; ++a) {
      const std::uint64_t qx = (2 * a + 1) << center_shift;
      for (std::uint64_t b = 0; b < centers; ++b) {
        const std::uint64_t qy = (2 * b + 1) << center_shift;
        worst = std::max(worst, index.nearest(qx, qy, norm));
      }
    }
    return worst;
  };

  unsigned workers = opts.workers != 0 ? opts.workers
                                       : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, centers));
  uint128 worst = 0;
  if (workers <= 1) {
    worst = scan_rows(0, centers);
  } else {
    std::vector<uint128> partial(workers, 0);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        partial[w] = scan_rows(centers * w / workers, centers * (w + 1) / workers);
      });
    for (auto &t : pool)
      t.join();
    worst = *std::max_element(partial.begin(), partial.end());
  }

  CoveringInterval out;
  out.norm = norm;
  out.k = k;
  const Dyadic value = as_dyadic(worst, S, norm);
  const Dyadic r = cell_coradius(norm, k);
  if (norm == Norm::L2) {
    out.lo_squared = value;
    out.lo = floor_sqrt(value, S + 40);
    out.hi = ceil_sqrt(value, S + 40) + r;
  } else {
    out.lo = value;
    out.hi = value + r;
  }
  return out;
}

MeshRatioInterval mesh_ratio(const CoveringInterval &covering,
                             const SeparationReport &sep) {
  if (covering.norm != sep.norm)
    throw std::domain_error("mesh_ratio: norm mismatch");
  if (sep.radius.is_zero())
    throw std::domain_error("mesh_ratio: separation radius is zero");
  constexpr int bits = 40;
  MeshRatioInterval out;
  if (sep.norm == Norm::L2) {
    const Dyadic lo_sq = covering.lo_squared.value_or(covering.lo * covering.lo);
    out.lo = floor_sqrt(div_floor(lo_sq, sep.radius, 2 * bits), bits);
    out.hi = ceil_sqrt(div_ceil(covering.hi * covering.hi, sep.radius, 2 * bits), bits);
  } else {
    out.lo = div_floor(covering.lo, sep.radius, bits);
    out.hi = div_ceil(covering.hi, sep.radius, bits);
  }
  return out;
}

MeshRatioInterval mesh_ratio(const PointSet &ps, Norm norm, int k,
                             const CoveringOptions &opts) {
  require_pairs(ps, "mesh_ratio");
  return mesh_ratio(covering_certified(ps, norm, k, opts), separation(ps, norm));
}

} // namespace sobolsep
