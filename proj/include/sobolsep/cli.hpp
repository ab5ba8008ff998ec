#pragma once

#include "sobolsep/report.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace sobolsep::cli {

/// Process exit codes.
enum ExitCode : int {
  ok = 0,
  verification_failed = 1,
  usage_error = 2,
  budget_exceeded = 3,
};

/// Entry point of the `sobolsep` tool; args excludes the program name.
/// Data goes to `out` unless -o is given, diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

/// ok when every row and random check passed; otherwise lists the failures
/// on `err` and returns verification_failed.
int verification_exit_code(const VerifyResult &result, std::uint64_t seed,
                           std::ostream &err);

struct PlotPoint {
  double log2_n = 0;
  double log2_q = 0;
};

/// log2 q versus log2 N as a self-contained 800 x 600 SVG, with reference
/// lines of slope -1/2 (q = 1/(2 sqrt N)) and -3/4 (q = 2^-1/2 N^-3/4).
std::string render_profile_svg(const std::vector<PlotPoint> &points,
                               const std::string &title);

} // namespace sobolsep::cli
