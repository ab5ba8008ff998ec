// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include "sobolsep/digital.hpp"
#include "sobolsep/geometry.hpp"
#include "sobolsep/lemmas.hpp"
#include "sobolsep/theory.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace sobolsep;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Failures {
public:
  void check(bool ok, const std::string &what) {
    if (!ok && messages_.size() < 5)
      messages_.push_back(what);
    failed_ = failed_ || !ok;
  }
  Outcome outcome(std::string detail) const {
    if (!failed_)
      return {true, std::move(detail)};
    std::string all;
    for (const auto &m : messages_)
      all += (all.empty() ? "" : "; ") + m;
    return {false, all};
  }

private:
  bool failed_ = false;
  std::vector<std::string> messages_;
};

PointSet sobol_set(int m) {
  return prefix(GeneratorPair::sobol(m), std::uint64_t{1} << m);
}

std::string str(int m) { return std::to_string(m); }

Outcome exact_small() {
  Failures f;
  for (int m = 1; m <= 14; ++m) {
    const auto ps = sobol_set(m);
    const auto naive = separation_naive(ps, Norm::LInf);
    const auto sweep = separation(ps, Norm::LInf);
    f.check(naive.radius == separation_formula(m),
            "m=" + str(m) + " all-pairs radius " + naive.radius.str());
    f.check(sweep == naive, "m=" + str(m) + " sweep disagrees with all-pairs scan");
  }
  return f.outcome("m=1..14, all-pairs scan and sweep equal the closed form");
}

Outcome exact_large() {
  Failures f;
  for (int m = 15; m <= 20; ++m) {
    const auto r = separation(sobol_set(m), Norm::LInf);
    f.check(r.radius == separation_formula(m), "m=" + str(m) + " radius " + r.radius.str());
  }
  return f.outcome("m=15..20, sweep equals the closed form");
}

Outcome witnesses() {
  Failures f;
  const auto a = sobol_point(34, 6), b = sobol_point(60, 6);
  // V = 4, W = 2: (2^-W + 2^-(V+W), 2^-V - 2^-(V+W)) and
  // (2^-W - 2^-(V+W), 2^-V + 2^-(V+W)).
  f.check(a == DyadicPoint{6, 17, 3}, "x_34 != (17/64, 3/64)");
  f.check(b == DyadicPoint{6, 15, 5}, "x_60 != (15/64, 5/64)");
  f.check(a.nx == 16 + 1 && a.ny == 4 - 1 && b.nx == 16 - 1 && b.ny == 4 + 1,
          "m=6 coordinates do not match the V, W expressions");
  f.check(norm_distance(a, b, Norm::LInf) == Dyadic::pow2(-5), "m=6 distance");
  f.check(witness_pair(6) == std::pair<std::uint64_t, std::uint64_t>{34, 60}, "m=6 pair");
  int general = 0;
  for (int m = 1; m <= 24; ++m) {
    const auto d = decompose(m);
    const auto w = witness_pair(m);
    if (d.kind != MKind::General) {
      f.check(!w, "m=" + str(m) + " should have no closed-form pair");
      continue;
    }
    ++general;
    if (!w) {
      f.check(false, "m=" + str(m) + " missing pair");
      continue;
    }
    const auto dist = norm_distance(sobol_point(w->first, m), sobol_point(w->second, m), Norm::LInf);
    f.check(dist == Dyadic::pow2(1 - static_cast<int>(d.V() + d.W())),
            "m=" + str(m) + " pair distance " + dist.str());
    f.check(dist == separation_formula(m) + separation_formula(m), "m=" + str(m) + " not 2q");
  }
  return f.outcome("m=6 coordinates exact; " + std::to_string(general) +
                   " general m <= 24 pairs at distance 2^(1-V-W)");
}

Outcome prefix_bounds() {
  Failures f;
  std::vector<int> equal_at;
  for (int m = 1; m <= 24; ++m) {
    const Dyadic q = m <= 20 ? separation(sobol_set(m), Norm::LInf).radius
                             : separation_formula(m);
    f.check(q == separation_formula(m), "m=" + str(m) + " sweep vs closed form");
    const auto b = corollary_bounds(m);
    f.check(b.general_quarters == -(3 * m + 5), "m=" + str(m) + " general exponent");
    f.check(within_pow2_quarters(q, b.general_quarters), "m=" + str(m) + " general bound");
    f.check(b.strong_quarters.has_value() == (m != 1 && m != 5), "m=" + str(m) + " strong presence");
    if (!b.strong_quarters)
      continue;
    f.check(*b.strong_quarters == -(3 * m + 6), "m=" + str(m) + " strong exponent");
    f.check(within_pow2_quarters(q, *b.strong_quarters), "m=" + str(m) + " strong bound");
    if (equals_pow2_quarters(q, *b.strong_quarters))
      equal_at.push_back(m);
  }
  f.check(equal_at == std::vector<int>{2, 6, 14}, "equality set differs from {2, 6, 14}");
  return f.outcome("general bound m<=24, strong bound m!=1,5, equality exactly at {2, 6, 14} "
                   "(q by sweep for m<=20, closed form beyond)");
}

Outcome limsup() {
  Failures f;
  const auto prof = separation_profile(GeneratorPair::sobol(12), 4096, Norm::LInf);
  f.check(prof.size() == 4095, "profile length");
  std::size_t checked = 0;
  for (const auto &r : prof) {
    f.check(scaled_separation_within(r.N, r.radius, -2),
            "N=" + std::to_string(r.N) + " exceeds 2^-1/2 N^-3/4");
    if (r.N >= 64)
      f.check(scaled_separation_within(r.N, r.radius, -3),
              "N=" + std::to_string(r.N) + " exceeds 2^-3/4 N^-3/4");
    f.check(limsup_constant_quarters(r.N) == (r.N >= 64 ? -3 : -2), "constant switch");
    ++checked;
  }
  return f.outcome("N=2..4096 (" + std::to_string(checked) +
                   " prefixes), N^3 q^4 compared exactly against 2^-2 and 2^-3");
}

Outcome nets() {
  Failures f;
  int splits = 0;
  for (int m = 1; m <= 16; ++m) {
    const auto r = check_elementary_intervals(sobol_set(m), true);
    f.check(r.pass && r.failures.empty(), "m=" + str(m) + " has a bad cell");
    f.check(r.splits_checked == m + 1, "m=" + str(m) + " split count");
    splits += r.splits_checked;
  }
  return f.outcome("m=1..16, " + std::to_string(splits) + " splits, every cell holds one point");
}

Outcome pascal_lemma() {
  Failures f;
  std::mt19937_64 rng(20240601);
  const auto random_vector = [&](std::size_t len) {
    BitVector v(len);
    for (std::size_t i = 1; i <= len; ++i)
      v.set(i, (rng() & 1) != 0);
    return v;
  };
  std::size_t vectors = 0;
  for (int v = 1; v <= 6; ++v) {
    const std::size_t V = std::size_t{1} << v;
    for (int w = 0; w < v; ++w) {
      const std::size_t W = std::size_t{1} << w;
      const std::string tag = "(v,w)=(" + str(v) + "," + str(w) + ")";
      f.check(lemmas::column_pow2_support(pascal_matrix(2 * W), W), tag + " item i");
      f.check(lemmas::column_sum_support(pascal_matrix(V + W), V, W) &&
                  lemmas::column_sum_support(pascal_matrix(2 * V), V, W),
              tag + " item ii");
      for (std::size_t m = V; m <= 2 * V - 1; ++m) {
        const auto P = pascal_matrix(m);
        for (int t = 0; t < 1000; ++t, ++vectors) {
          const auto p = random_vector(m);
          bool ok = lemmas::row_pow2_fixed(P, p, V);
          if (m >= V + W && m <= V + 2 * W - 1)
            ok = ok && lemmas::row_sum_fixed(P, p, V, W);
          if (m <= 2 * V - 2)
            ok = ok && lemmas::row_before_pow2(P, p, V);
          if (!ok) {
            f.check(false, tag + " m=" + std::to_string(m) + " items iii/iv");
            break;
          }
        }
      }
      f.check(lemmas::self_similar_blocks(V) && lemmas::self_similar_blocks(W), tag + " item v");
      f.check(lemmas::ones_image_pow2(W) && lemmas::ones_image_pow2(V), tag + " item vi");
      f.check(lemmas::ones_image_sum(V, W), tag + " item vii");
    }
  }
  return f.outcome("21 (v,w) cases, " + std::to_string(vectors) +
                   " random vectors; row V+W checked for m <= V+2W-1");
}

Outcome near_digits() {
  Failures f;
  std::mt19937_64 rng(20240601);
  std::size_t distinct = 0, split = 0;
  for (int t = 0; t < 10000; ++t) {
    const auto x = lemmas::sample_near_pair(rng);
    f.check(lemmas::forward_close(x.p, x.q, x.m, x.l), "sampler broke the closeness precondition");
    f.check(lemmas::near_pair_statements_hold(x),
            "m=" + str(x.m) + " l=" + str(x.l) + " p=" + std::to_string(x.p) +
                " q=" + std::to_string(x.q));
    distinct += x.p != x.q;
    split += !lemmas::classify_near_digits(x.p, x.q, x.m, x.l).same_prefix;
  }
  f.check(split > 0 && split < 10000, "sample never exercised both alternatives");
  return f.outcome("10000 instances (" + std::to_string(distinct) + " with p != q, " +
                   std::to_string(split) + " in the split alternative)");
}

Outcome covering() {
  Failures f;
  const int k = 11;
  const auto r = cell_coradius(Norm::LInf, k);
  for (int m = 1; m <= 12; ++m) {
    const auto ps = sobol_set(m);
    const auto cov = covering_certified(ps, Norm::LInf, k);
    // lo >= 2^-(m/2+1) - r_k, squared: (lo + r_k)^2 >= 2^-(m+2).
    const auto reach = cov.lo + r;
    f.check(reach * reach >= Dyadic::pow2(-(m + 2)), "m=" + str(m) + " lo below 1/(2 sqrt N) - r_k");
    f.check(cov.hi * cov.hi >= Dyadic::pow2(-(m + 2)), "m=" + str(m) + " hi below 1/(2 sqrt N)");
    if (m % 2 != 0)
      continue;
    const auto ratio = mesh_ratio(cov, separation(ps, Norm::LInf));
    f.check(scaled_ratio_at_least(std::uint64_t{1} << m, ratio.lo, -1),
            "m=" + str(m) + " rho_lo " + ratio.lo.str() + " below 2^-1/4 N^1/4");
  }
  return f.outcome("m=1..12 at k=11; rho_lo from the grid alone for even m");
}

Outcome oracle_equivalence() {
  Failures f;
  std::mt19937_64 rng(4242);
  for (int t = 0; t < 200; ++t) {
    const int scale = std::uniform_int_distribution<int>(3, 12)(rng);
    const std::uint64_t side = std::uint64_t{1} << scale;
    const std::size_t want = std::uniform_int_distribution<std::size_t>(2, 256)(rng);
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
    std::vector<DyadicPoint> pts;
    while (pts.size() < want && seen.size() < side * side) {
      const std::uint64_t x = rng() % side, y = rng() % side;
      if (seen.insert({x, y}).second)
        pts.push_back({scale, x, y});
    }
    const PointSet ps(scale, pts, "random");
    for (Norm norm : {Norm::LInf, Norm::L1, Norm::L2})
      f.check(separation(ps, norm) == separation_naive(ps, norm),
              "set " + std::to_string(t) + " norm " + std::string(to_string(norm)));
  }
  return f.outcome("200 random sets, N <= 256, all three norms, value and witness equal");
}

} // namespace

int main() {
  const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
      {"exact separation, m = 1..14", exact_small},
      {"exact separation, m = 15..20", exact_large},
      {"witness pairs", witnesses},
      {"dyadic-prefix bounds", prefix_bounds},
      {"N^-3/4 decay for N <= 4096", limsup},
      {"elementary intervals", nets},
      {"Pascal matrix identities", pascal_lemma},
      {"digits of close radical inverses", near_digits},
      {"covering and mesh ratio", covering},
      {"sweep versus all-pairs oracle", oracle_equivalence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu (%s): %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
