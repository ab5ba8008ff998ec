#include "sobolsep/digital.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sobolsep {

namespace {

void check_scale(int m, const char *who) {
  if (m < 1 || m > max_scale)
    throw std::domain_error(std::string(who) + ": scale " + std::to_string(m) +
                            " outside 1..64");
}

void check_index(std::uint64_t n, int m, const char *who) {
  if (m < 64 && (n >> m) != 0)
    throw std::domain_error(std::string(who) + ": index " + std::to_string(n) +
                            " >= 2^" + std::to_string(m));
}

// Column j of P_m as a packed word: bit s set iff s is a submask of j-1.
std::uint64_t pascal_column_word(unsigned j) {
  const std::uint64_t top = j - 1;
  std::uint64_t word = 0;
  for (std::uint64_t s = top;; s = (s - 1) & top) {
    word |= std::uint64_t{1} << s;
    if (s == 0)
      break;
  }
  return word;
}

std::vector<std::uint64_t> column_images(const BitMatrix &C, int m) {
  std::vector<std::uint64_t> out(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j)
    out[j - 1] = reverse_bits(C.column(j).to_word(), static_cast<unsigned>(m));
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string &field, const char *what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    if (field.empty() || field[0] == '-')
      throw std::invalid_argument(field);
    v = std::stoull(field, &pos);
  } catch (const std::logic_error &) {
    throw std::invalid_argument(std::string("bad ") + what + " field '" +
                                field + "'");
  }
  if (pos != field.size())
    throw std::invalid_argument(std::string("bad ") + what + " field '" +
                                field + "'");
  return v;
}

} // namespace

DyadicPoint DyadicPoint::rescaled(int new_scale) const {
  if (new_scale < scale || new_scale > max_scale)
    throw std::domain_error("DyadicPoint::rescaled: invalid target scale");
  const int shift = new_scale - scale;
  return {new_scale, nx << shift, ny << shift};
}

bool same_point(const DyadicPoint &a, const DyadicPoint &b) {
  const int s = std::max(a.scale, b.scale);
  return a.rescaled(s) == b.rescaled(s);
}

GeneratorPair::GeneratorPair(BitMatrix c1, BitMatrix c2,
                             std::string description)
    : m_(static_cast<int>(c1.rows())), c1_(std::move(c1)), c2_(std::move(c2)),
      description_(std::move(description)) {
  check_scale(m_, "GeneratorPair");
  const auto m = static_cast<std::size_t>(m_);
  if (c1_.cols() != m || c2_.rows() != m || c2_.cols() != m)
    throw std::domain_error("GeneratorPair: both matrices must be m x m");
  image_x_ = column_images(c1_, m_);
  image_y_ = column_images(c2_, m_);
}

GeneratorPair GeneratorPair::sobol(int m) {
  check_scale(m, "GeneratorPair::sobol");
  const auto size = static_cast<std::size_t>(m);
  return GeneratorPair(BitMatrix::identity(size), pascal_matrix(size),
                       "sobol(m=" + std::to_string(m) + ")");
}

DyadicPoint sobol_point(std::uint64_t n, int m) {
  check_scale(m, "sobol_point");
  check_index(n, m, "sobol_point");
  std::uint64_t y = 0;
  for (std::uint64_t rest = n; rest != 0; rest &= rest - 1)
    y ^= pascal_column_word(static_cast<unsigned>(std::countr_zero(rest)) + 1);
  const auto um = static_cast<unsigned>(m);
  return {m, reverse_bits(n, um), reverse_bits(y, um)};
}

DyadicPoint digital_point(const GeneratorPair &g, std::uint64_t n) {
  check_index(n, g.m(), "digital_point");
  const auto v = binary_expand(n, static_cast<std::size_t>(g.m()));
  const auto um = static_cast<unsigned>(g.m());
  return {g.m(), reverse_bits(matvec(g.c1(), v).to_word(), um),
          reverse_bits(matvec(g.c2(), v).to_word(), um)};
}

// PointSet

PointSet::PointSet(int scale, std::vector<DyadicPoint> points,
                   std::string provenance)
    : scale_(scale), points_(std::move(points)),
      provenance_(std::move(provenance)) {
  check_scale(scale_, "PointSet");
  for (const auto &p : points_) {
    if (p.scale != scale_)
      throw std::domain_error("PointSet: mixed scales");
    if (scale_ < 64 && ((p.nx >> scale_) != 0 || (p.ny >> scale_) != 0))
      throw std::domain_error("PointSet: numerator outside [0, 2^scale)");
  }
}

PointSet PointSet::take(std::size_t n) const {
  if (n > points_.size())
    throw std::domain_error("PointSet::take: n exceeds size");
  return PointSet(scale_, {points_.begin(), points_.begin() + static_cast<std::ptrdiff_t>(n)},
                  provenance_);
}

PointSet PointSet::rescaled(int new_scale) const {
  check_scale(new_scale, "PointSet::rescaled");
  std::vector<DyadicPoint> out;
  out.reserve(points_.size());
  if (new_scale >= scale_) {
    for (const auto &p : points_)
      out.push_back(p.rescaled(new_scale));
  } else {
    const int shift = scale_ - new_scale;
    const std::uint64_t mask = (std::uint64_t{1} << shift) - 1;
    for (const auto &p : points_) {
      if ((p.nx & mask) != 0 || (p.ny & mask) != 0)
        throw std::domain_error("PointSet::rescaled: point not representable "
                                "at scale " + std::to_string(new_scale));
      out.push_back({new_scale, p.nx >> shift, p.ny >> shift});
    }
  }
  return PointSet(new_scale, std::move(out), provenance_);
}

int PointSet::minimal_scale() const noexcept {
  std::uint64_t bits = 0;
  for (const auto &p : points_)
    bits |= p.nx | p.ny;
  if (bits == 0)
    return 1;
  const int trailing = std::countr_zero(bits);
  return std::max(1, scale_ - trailing);
}

PointSet prefix(const GeneratorPair &g, std::uint64_t N) {
  const int m = g.m();
  if (N < 1 || (m < 64 && N > (std::uint64_t{1} << m)))
    throw std::domain_error("prefix: N = " + std::to_string(N) +
                            " outside 1..2^" + std::to_string(m));
  // Going from n to n+1 flips the trailing ones of n and the zero above them,
  // so the images change by the XOR of the first t+1 column images.
  const auto &ix = g.column_images_x();
  const auto &iy = g.column_images_y();
  std::vector<std::uint64_t> run_x(ix.size()), run_y(iy.size());
  std::uint64_t ax = 0, ay = 0;
  for (std::size_t t = 0; t < ix.size(); ++t) {
    run_x[t] = ax ^= ix[t];
    run_y[t] = ay ^= iy[t];
  }
  std::vector<DyadicPoint> pts;
  pts.reserve(static_cast<std::size_t>(N));
  std::uint64_t x = 0, y = 0;
  pts.push_back({m, 0, 0});
  for (std::uint64_t n = 0; n + 1 < N; ++n) {
    const auto t = static_cast<std::size_t>(std::countr_one(n));
    x ^= run_x[t];
    y ^= run_y[t];
    pts.push_back({m, x, y});
  }
  return PointSet(m, std::move(pts), g.description());
}

NetReport check_elementary_intervals(const PointSet &ps, bool exhaustive) {
  const int m = ps.scale();
  if (m > 26)
    throw std::domain_error("check_elementary_intervals: scale above 26");
  const std::uint64_t total = std::uint64_t{1} << m;
  if (ps.size() != total)
    throw std::domain_error("check_elementary_intervals: expected 2^" +
                            std::to_string(m) + " points, got " +
                            std::to_string(ps.size()));
  NetReport report;
  report.scale = m;
  std::vector<std::uint32_t> counts(total);
  for (int k = 0; k <= m; ++k) {
    const int l = m - k;
    std::fill(counts.begin(), counts.end(), 0u);
    for (const auto &p : ps) {
      const std::uint64_t a = k == 0 ? 0 : p.nx >> (m - k);
      const std::uint64_t b = l == 0 ? 0 : p.ny >> (m - l);
      ++counts[(a << l) | b];
    }
    ++report.splits_checked;
    for (std::uint64_t cell = 0; cell < total; ++cell) {
      if (counts[cell] == 1)
        continue;
      const CellFailure f{k, l, cell >> l, cell & ((std::uint64_t{1} << l) - 1),
                          counts[cell]};
      report.pass = false;
      if (!report.first_failure)
        report.first_failure = f;
      if (!exhaustive)
        return report;
      report.failures.push_back(f);
    }
  }
  return report;
}

void write_points_csv(std::ostream &os, const PointSet &ps) {
  os << "index,nx,ny,scale\n";
  for (std::size_t i = 0; i < ps.size(); ++i)
    os << i << ',' << ps[i].nx << ',' << ps[i].ny << ',' << ps.scale() << '\n';
}

PointSet read_points_csv(std::istream &is, std::string provenance) {
  std::string line;
  if (!std::getline(is, line) || trim(line) != "index,nx,ny,scale")
    throw std::invalid_argument("points CSV: missing header index,nx,ny,scale");
  std::vector<DyadicPoint> pts;
  int scale = 0;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty())
      continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');)
      fields.push_back(trim(f));
    if (fields.size() != 4)
      throw std::invalid_argument("points CSV line " + std::to_string(lineno) +
                                  ": expected 4 fields");
    const auto index = parse_u64(fields[0], "index");
    const auto s = parse_u64(fields[3], "scale");
    if (index != pts.size())
      throw std::invalid_argument("points CSV line " + std::to_string(lineno) +
                                  ": indices must run 0,1,2,...");
    if (s < 1 || s > 64 || (scale != 0 && static_cast<int>(s) != scale))
      throw std::invalid_argument("points CSV line " + std::to_string(lineno) +
                                  ": bad or inconsistent scale");
    scale = static_cast<int>(s);
    pts.push_back({scale, parse_u64(fields[1], "nx"), parse_u64(fields[2], "ny")});
  }
  if (pts.empty())
    throw std::invalid_argument("points CSV: no points");
  try {
    return PointSet(scale, std::move(pts), std::move(provenance));
  } catch (const std::domain_error &e) {
    throw std::invalid_argument(std::string("points CSV: ") + e.what());
  }
}

GeneratorPair read_generator_matrices(std::istream &is,
                                      std::string description) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(is, line);) {
    line = trim(line);
    if (line.empty() || line[0] == '#')
      continue;
    lines.push_back(line);
  }
  if (lines.empty())
    throw std::invalid_argument("matrix file: empty");
  const auto m = parse_u64(lines[0], "m");
  if (m < 1 || m > 64)
    throw std::invalid_argument("matrix file: m must be in 1..64");
  if (lines.size() != 1 + 2 * m)
    throw std::invalid_argument("matrix file: expected " +
                                std::to_string(2 * m) + " matrix rows, got " +
                                std::to_string(lines.size() - 1));
  std::vector<std::string> r1(lines.begin() + 1, lines.begin() + 1 + static_cast<std::ptrdiff_t>(m));
  std::vector<std::string> r2(lines.begin() + 1 + static_cast<std::ptrdiff_t>(m), lines.end());
  for (const auto &row : lines)
    if (&row != &lines[0] && row.size() != m)
      throw std::invalid_argument("matrix file: each row needs " +
                                  std::to_string(m) + " characters");
  try {
    return GeneratorPair(BitMatrix::from_rows(r1), BitMatrix::from_rows(r2),
                         std::move(description));
  } catch (const std::domain_error &e) {
    throw std::invalid_argument(std::string("matrix file: ") + e.what());
  }
}

} // namespace sobolsep
