#include "sobolsep/report.hpp"

#include "sobolsep/digital.hpp"
#include "sobolsep/lemmas.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sobolsep {

namespace {

std::vector<std::string> split_fields(const std::string &line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');)
    fields.push_back(f);
  if (!line.empty() && line.back() == ',')
    fields.emplace_back();
  return fields;
}

std::size_t parse_size(const std::string &s, std::size_t lineno) {
  std::size_t pos = 0;
  try {
    if (!s.empty() && s[0] != '-') {
      const auto v = std::stoull(s, &pos);
      if (pos == s.size())
        return static_cast<std::size_t>(v);
    }
  } catch (const std::logic_error &) {
  }
  throw std::invalid_argument("separation CSV line " + std::to_string(lineno) +
                              ": bad integer '" + s + "'");
}

// Powers of two as their log2, anything else as num/2^e.
std::string log2_or_exact(const Dyadic &d) {
  if (const auto l = d.log2())
    return std::to_string(*l);
  return d.str();
}

} // namespace

std::string format_log2(std::optional<double> v) {
  if (!v)
    return {};
  if (*v == std::floor(*v))
    return std::to_string(static_cast<long long>(*v));
  std::ostringstream os;
  os << *v;
  return os.str();
}

void write_separation_csv(std::ostream &os,
                          const std::vector<SeparationReport> &rows) {
  os << separation_csv_header << '\n';
  for (const auto &r : rows)
    os << r.N << ',' << to_string(r.norm) << ',' << r.min_dist.str() << ','
       << format_log2(r.min_dist_log2()) << ',' << format_log2(r.radius_log2())
       << ',' << r.witness_i << ',' << r.witness_j << '\n';
}

std::vector<SeparationReport> read_separation_csv(std::istream &is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("separation CSV: empty input");
  if (!line.empty() && line.back() == '\r')
    line.pop_back();
  if (line != separation_csv_header)
    throw std::invalid_argument("separation CSV: unexpected header '" + line +
                                "'");
  std::vector<SeparationReport> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    const auto f = split_fields(line);
    if (f.size() != 7)
      throw std::invalid_argument("separation CSV line " +
                                  std::to_string(lineno) + ": expected 7 fields");
    SeparationReport r;
    r.N = parse_size(f[0], lineno);
    try {
      r.norm = parse_norm(f[1]);
      r.min_dist = Dyadic::parse(f[2]);
    } catch (const std::exception &e) {
      throw std::invalid_argument("separation CSV line " +
                                  std::to_string(lineno) + ": " + e.what());
    }
    r.radius = r.norm == Norm::L2 ? r.min_dist.quartered() : r.min_dist.halved();
    r.witness_i = parse_size(f[5], lineno);
    r.witness_j = parse_size(f[6], lineno);
    if (format_log2(r.min_dist_log2()) != f[3] ||
        format_log2(r.radius_log2()) != f[4])
      throw std::invalid_argument("separation CSV line " +
                                  std::to_string(lineno) +
                                  ": log2 columns disagree with min_dist");
    rows.push_back(r);
  }
  return rows;
}

void write_covering_csv(std::ostream &os, const std::vector<CoveringRow> &rows) {
  os << covering_csv_header << '\n';
  for (const auto &r : rows)
    os << r.N << ',' << to_string(r.covering.norm) << ','
       << r.covering.lo.str() << ',' << r.covering.hi.str() << ','
       << r.covering.k << ',' << r.ratio.lo.str() << ',' << r.ratio.hi.str()
       << '\n';
}

bool VerifyResult::ok() const noexcept {
  if (random_pairs_failed != 0)
    return false;
  for (const auto &r : rows)
    if (!r.ok())
      return false;
  return true;
}

VerifyResult run_verification(const VerifyOptions &opts) {
  if (opts.m_max < 1)
    throw std::domain_error("verify: m_max must be positive");
  const int ceiling = opts.naive ? opts.naive_ceiling : opts.exhaustive_ceiling;
  const int exhaustive_max =
      opts.formula_only ? std::min(opts.formula_only_ceiling, ceiling)
                        : opts.m_max;
  if (!opts.formula_only && opts.m_max > ceiling)
    throw std::domain_error("verify: m_max " + std::to_string(opts.m_max) +
                            " exceeds the exhaustive ceiling " +
                            std::to_string(ceiling) +
                            " (use --formula-only)");
  if (opts.formula_only && opts.m_max > max_scale)
    throw std::domain_error("verify: m_max exceeds 64");

  VerifyResult result;
  for (int m = 1; m <= opts.m_max; ++m) {
    VerifyRow row;
    row.decomposition = decompose(m);
    row.q_formula = opts.formula(m);
    row.witness = witness_pair(m);

    if (m <= exhaustive_max) {
      const auto points = prefix(GeneratorPair::sobol(m), std::uint64_t{1} << m);
      const auto sep = opts.naive ? separation_naive(points, Norm::LInf)
                                  : separation(points, Norm::LInf);
      row.q_exhaustive = sep.radius;
      row.formula_matches = sep.radius == row.q_formula;
      if (!row.witness)
        row.witness = std::pair<std::uint64_t, std::uint64_t>{sep.witness_i,
                                                              sep.witness_j};
    }

    // Bounds are checked on the best available value of q.
    const Dyadic q = row.q_exhaustive.value_or(row.q_formula);
    const auto bounds = corollary_bounds(m);
    bool ok = within_pow2_quarters(q, bounds.general_quarters);
    if (bounds.strong_quarters) {
      ok = ok && within_pow2_quarters(q, *bounds.strong_quarters);
      ok = ok && equals_pow2_quarters(q, *bounds.strong_quarters) ==
                     bounds.equality_expected;
    }
    if (m < 64) {
      const std::uint64_t N = std::uint64_t{1} << m;
      ok = ok && scaled_separation_within(N, q, limsup_constant_quarters(N));
    }
    if (row.decomposition.kind == MKind::General && m <= max_scale) {
      const auto [p, r] = *row.witness;
      const auto d = norm_distance(sobol_point(p, m), sobol_point(r, m), Norm::LInf);
      ok = ok && d == row.q_formula + row.q_formula;
    }
    row.bounds_hold = ok;
    result.rows.push_back(row);
  }

  std::mt19937_64 rng(opts.seed);
  for (std::size_t t = 0; t < opts.random_pairs; ++t) {
    if (!lemmas::near_pair_statements_hold(lemmas::sample_near_pair(rng)))
      ++result.random_pairs_failed;
    ++result.random_pairs_checked;
  }
  return result;
}

void write_verify_csv(std::ostream &os, const std::vector<VerifyRow> &rows) {
  os << verify_csv_header << '\n';
  for (const auto &r : rows) {
    const auto &d = r.decomposition;
    const bool general = d.kind == MKind::General;
    std::string match;
    if (!r.formula_matches)
      match = "MISMATCH";
    else if (!r.bounds_hold)
      match = "BOUND_FAIL";
    else
      match = r.q_exhaustive ? "yes" : "skipped";
    os << d.m << ',' << to_string(d.kind) << ',' << d.v << ','
       << (general ? std::to_string(d.w) : "") << ','
       << (general ? std::to_string(d.c) : "") << ','
       << log2_or_exact(r.q_formula) << ','
       << (r.q_exhaustive ? log2_or_exact(*r.q_exhaustive) : "") << ','
       << match << ',';
    if (r.witness)
      os << r.witness->first << ',' << r.witness->second;
    else
      os << ',';
    os << '\n';
  }
}

} // namespace sobolsep
