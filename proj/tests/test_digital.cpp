#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "sobolsep/digital.hpp"

#include <random>
#include <set>
#include <sstream>

using namespace sobolsep;

namespace {

std::vector<std::pair<std::uint64_t, std::uint64_t>>
numerators(const PointSet &ps) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const auto &p : ps)
    out.emplace_back(p.nx, p.ny);
  return out;
}

GeneratorPair diagonal_pair(int m) {
  const auto I = BitMatrix::identity(static_cast<std::size_t>(m));
  return GeneratorPair(I, I, "diagonal");
}

} // namespace

TEST_CASE("single points") {
  CHECK(sobol_point(0, 7) == DyadicPoint{7, 0, 0});
  CHECK(sobol_point(1, 3) == DyadicPoint{3, 4, 4});
  CHECK(sobol_point(34, 6) == DyadicPoint{6, 17, 3});
  CHECK(sobol_point(60, 6) == DyadicPoint{6, 15, 5});
  CHECK(sobol_point(3, 3) == DyadicPoint{3, 6, 2});
  CHECK_THROWS_AS(sobol_point(8, 3), std::domain_error);
  CHECK_THROWS_AS(sobol_point(0, 65), std::domain_error);
}

TEST_CASE("fast path agrees with the digit-level definition") {
  std::mt19937_64 rng(21);
  for (int m = 1; m <= 64; ++m)
    for (int t = 0; t < 30; ++t) {
      auto n = rng();
      if (m < 64)
        n &= (std::uint64_t{1} << m) - 1;
      const auto p = sobol_point(n, m);
      const auto [ox, oy] = oracle::sobol(n, m);
      CHECK(p.nx == ox);
      CHECK(p.ny == oy);
      CHECK(digital_point(GeneratorPair::sobol(m), n) == p);
    }
}

TEST_CASE("diagonal generator") {
  const auto g = diagonal_pair(5);
  for (std::uint64_t n = 0; n < 32; ++n) {
    const auto p = digital_point(g, n);
    CHECK(p.nx == reverse_bits(n, 5));
    CHECK(p.ny == p.nx);
  }
}

TEST_CASE("prefixes") {
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> m3 = {
      {0, 0}, {4, 4}, {2, 6}, {6, 2}, {1, 5}, {5, 1}, {3, 3}, {7, 7}};
  CHECK(numerators(prefix(GeneratorPair::sobol(3), 8)) == m3);
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> m2 = {
      {0, 0}, {2, 2}, {1, 3}, {3, 1}};
  CHECK(numerators(prefix(GeneratorPair::sobol(2), 4)) == m2);
  CHECK(prefix(GeneratorPair::sobol(9), 1).size() == 1);
  CHECK_THROWS_AS(prefix(GeneratorPair::sobol(3), 9), std::domain_error);
  CHECK_THROWS_AS(prefix(GeneratorPair::sobol(3), 0), std::domain_error);
}

TEST_CASE("incremental prefix equals per-index evaluation") {
  std::mt19937_64 rng(8);
  for (int m : {1, 4, 10, 13}) {
    const auto g = GeneratorPair::sobol(m);
    const auto ps = prefix(g, std::uint64_t{1} << m);
    for (std::uint64_t n = 0; n < ps.size(); ++n)
      REQUIRE(ps[n] == digital_point(g, n));
  }
  // Random non-singular and singular matrices exercise the generic path.
  for (int t = 0; t < 20; ++t) {
    const int m = 1 + static_cast<int>(rng() % 12);
    std::vector<std::string> r1, r2;
    for (int i = 0; i < m; ++i) {
      std::string a, b;
      for (int j = 0; j < m; ++j) {
        a += (rng() & 1) ? '1' : '0';
        b += (rng() & 1) ? '1' : '0';
      }
      r1.push_back(a);
      r2.push_back(b);
    }
    const GeneratorPair g(BitMatrix::from_rows(r1), BitMatrix::from_rows(r2), "random");
    const auto ps = prefix(g, std::uint64_t{1} << m);
    for (std::uint64_t n = 0; n < ps.size(); ++n)
      REQUIRE(ps[n] == digital_point(g, n));
  }
}

TEST_CASE("prefix property") {
  const auto g = GeneratorPair::sobol(12);
  const auto big = prefix(g, 4096);
  for (std::uint64_t n : {1u, 2u, 100u, 777u, 4095u})
    CHECK(big.take(n).points() == prefix(g, n).points());
}

TEST_CASE("growing m pads the digits without moving points") {
  for (std::uint64_t n = 0; n < 1024; ++n) {
    const auto base = sobol_point(n, 10);
    for (int m = 10; m <= 20; ++m) {
      const auto p = sobol_point(n, m);
      REQUIRE(same_point(p, base));
      REQUIRE(p == base.rescaled(m));
    }
  }
}

TEST_CASE("coordinates are distinct within a full prefix") {
  for (int m = 1; m <= 16; ++m) {
    const auto ps = prefix(GeneratorPair::sobol(m), std::uint64_t{1} << m);
    std::set<std::uint64_t> xs, ys;
    for (const auto &p : ps) {
      xs.insert(p.nx);
      ys.insert(p.ny);
    }
    CHECK(xs.size() == ps.size());
    CHECK(ys.size() == ps.size());
  }
}

TEST_CASE("points are linear in the index digits") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 2000; ++t) {
    const int m = 1 + static_cast<int>(rng() % 64);
    const std::uint64_t mask = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
    const auto a = rng() & mask, b = rng() & mask;
    const auto pa = sobol_point(a, m), pb = sobol_point(b, m), pab = sobol_point(a ^ b, m);
    CHECK(pab.nx == (pa.nx ^ pb.nx));
    CHECK(pab.ny == (pa.ny ^ pb.ny));
  }
}

TEST_CASE("net property") {
  auto r3 = check_elementary_intervals(prefix(GeneratorPair::sobol(3), 8));
  CHECK(r3.pass);
  CHECK(r3.splits_checked == 4);
  auto r10 = check_elementary_intervals(prefix(GeneratorPair::sobol(10), 1024));
  CHECK(r10.pass);
  CHECK(r10.splits_checked == 11);
  for (int m = 1; m <= 14; ++m)
    CHECK(check_elementary_intervals(prefix(GeneratorPair::sobol(m), std::uint64_t{1} << m)).pass);
}

TEST_CASE("the diagonal is not a net") {
  const auto ps = prefix(diagonal_pair(2), 4);
  const auto r = check_elementary_intervals(ps);
  CHECK_FALSE(r.pass);
  REQUIRE(r.first_failure);
  const auto full = check_elementary_intervals(ps, true);
  CHECK(full.splits_checked == 3);
  // [0,1/2) x [1/2,1) is empty.
  bool found = false;
  for (const auto &f : full.failures)
    if (f.k == 1 && f.l == 1 && f.a == 0 && f.b == 1 && f.count == 0)
      found = true;
  CHECK(found);
  CHECK_THROWS_AS(check_elementary_intervals(prefix(GeneratorPair::sobol(3), 7)),
                  std::domain_error);
}

TEST_CASE("point CSV round trip") {
  const auto ps = prefix(GeneratorPair::sobol(9), 300);
  std::stringstream ss;
  write_points_csv(ss, ps);
  CHECK(ss.str().rfind("index,nx,ny,scale\n", 0) == 0);
  const auto back = read_points_csv(ss);
  CHECK(back.scale() == 9);
  CHECK(back.points() == ps.points());

  std::stringstream one;
  write_points_csv(one, prefix(GeneratorPair::sobol(1), 1));
  CHECK(one.str() == "index,nx,ny,scale\n0,0,0,1\n");

  std::stringstream bad("index,nx,ny,scale\n0,9,0,3\n");
  CHECK_THROWS(read_points_csv(bad));
  std::stringstream garbage("hello\n");
  CHECK_THROWS(read_points_csv(garbage));
}

TEST_CASE("matrix files") {
  std::stringstream ss("# sobol, m = 3\n3\n100\n010\n001\n\n111\n010\n001\n");
  const auto g = read_generator_matrices(ss);
  CHECK(g.c1() == BitMatrix::identity(3));
  CHECK(g.c2() == pascal_matrix(3));
  for (std::uint64_t n = 0; n < 8; ++n)
    CHECK(digital_point(g, n) == sobol_point(n, 3));

  std::stringstream short_file("2\n10\n01\n11\n");
  CHECK_THROWS(read_generator_matrices(short_file));
  std::stringstream bad_char("1\n2\n1\n");
  CHECK_THROWS(read_generator_matrices(bad_char));
}
