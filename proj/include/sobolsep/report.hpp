#pragma once

// CSV tables for separation, covering and verification results. Exact values
// are written as `num/2^e`; log2 columns are filled only when the value is a
// power of two (half-integers occur for l2).

#include "sobolsep/geometry.hpp"
#include "sobolsep/theory.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sobolsep {

inline constexpr const char *separation_csv_header =
    "N,norm,min_dist_num,min_dist_log2,radius_log2,witness_i,witness_j";
inline constexpr const char *covering_csv_header =
    "N,norm,h_lo,h_hi,k,rho_lo,rho_hi";
inline constexpr const char *verify_csv_header =
    "m,kind,v,w,c,q_formula_log2,q_exhaustive_log2,match,witness_p,witness_q";

/// "" for nullopt, otherwise the shortest exact decimal ("-6", "-4.5").
std::string format_log2(std::optional<double> v);

void write_separation_csv(std::ostream &os,
                          const std::vector<SeparationReport> &rows);
/// Parses a table written by write_separation_csv. Throws
/// std::invalid_argument on malformed input.
std::vector<SeparationReport> read_separation_csv(std::istream &is);

struct CoveringRow {
  std::size_t N = 0;
  CoveringInterval covering;
  MeshRatioInterval ratio;
};

void write_covering_csv(std::ostream &os, const std::vector<CoveringRow> &rows);

// Verification of the closed form against exhaustive search.

struct VerifyOptions {
  int m_max = 14;
  /// Exhaustive search only up to formula_only_ceiling.
  bool formula_only = false;
  /// Use the O(N^2) pair scan instead of the plane sweep.
  bool naive = false;
  int exhaustive_ceiling = 20;
  int naive_ceiling = 14;
  int formula_only_ceiling = 14;
  std::function<Dyadic(int)> formula = separation_formula;
  /// Random close index pairs checked against the near-digit statements.
  std::size_t random_pairs = 10000;
  std::uint64_t seed = 20240601;
};

struct VerifyRow {
  MDecomposition decomposition;
  Dyadic q_formula;
  std::optional<Dyadic> q_exhaustive;
  /// Formula equals exhaustive value (true when not computed).
  bool formula_matches = true;
  /// Rate bounds and the explicit pair's distance check out.
  bool bounds_hold = true;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> witness;

  bool ok() const noexcept { return formula_matches && bounds_hold; }
};

struct VerifyResult {
  std::vector<VerifyRow> rows;
  std::size_t random_pairs_checked = 0;
  std::size_t random_pairs_failed = 0;
  bool ok() const noexcept;
};

/// Runs m = 1..m_max. Throws std::domain_error when m_max is beyond the
/// ceiling for the selected mode.
VerifyResult run_verification(const VerifyOptions &opts);

void write_verify_csv(std::ostream &os, const std::vector<VerifyRow> &rows);

} // namespace sobolsep
