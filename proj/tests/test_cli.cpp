#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sobolsep/cli.hpp"
#include "sobolsep/digital.hpp"
#include "sobolsep/geometry.hpp"
#include "sobolsep/report.hpp"
#include "sobolsep/theory.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sobolsep;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string &name) {
  const auto dir = fs::temp_directory_path() / "sobolsep_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<std::string> lines(const std::string &s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);)
    out.push_back(l);
  return out;
}

std::vector<std::string> fields(const std::string &line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');)
    out.push_back(f);
  if (!line.empty() && line.back() == ',')
    out.emplace_back();
  return out;
}

} // namespace

TEST_CASE("generate") {
  const auto r = run({"generate", "--sobol", "-m", "3", "-N", "8"});
  CHECK(r.code == 0);
  CHECK(r.out == "index,nx,ny,scale\n0,0,0,3\n1,4,4,3\n2,2,6,3\n3,6,2,3\n"
                 "4,1,5,3\n5,5,1,3\n6,3,3,3\n7,7,7,3\n");
  CHECK(run({"generate", "--sobol", "-m", "1", "-N", "1"}).out ==
        "index,nx,ny,scale\n0,0,0,1\n");
  const auto full = run({"generate", "--sobol", "-m", "5"});
  CHECK(lines(full.out).size() == 33);
}

TEST_CASE("generate from a matrix file") {
  const auto path = scratch("gen.txt");
  {
    std::ofstream f(path);
    f << "4\n1000\n0100\n0010\n0001\n1111\n0101\n0011\n0001\n";
  }
  const auto r = run({"generate", "--matrices", path.string(), "-N", "4"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  const auto ps = read_points_csv(in);
  REQUIRE(ps.size() == 4);
  std::ifstream f(path);
  const auto g = read_generator_matrices(f);
  for (std::uint64_t n = 0; n < 4; ++n)
    CHECK(ps[n] == digital_point(g, n));
  CHECK(g.c2() == pascal_matrix(4));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"generate"}).code == 2);
  CHECK(run({"generate", "--sobol"}).code == 2);
  CHECK(run({"generate", "--sobol", "-m", "65", "-N", "1"}).code == 2);
  CHECK(run({"generate", "--sobol", "-m", "3", "-N", "9"}).code == 2);
  CHECK(run({"generate", "--sobol", "-m", "3", "--bogus"}).code == 2);
  CHECK(run({"generate", "--matrices", "/nonexistent/file"}).code == 2);
  const auto r = run({"analyze", "--sobol", "-m", "4", "--norm", "l3"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("analyze reports the closed-form radius") {
  for (auto [m, expected] : {std::pair{"6", "-6"}, std::pair{"2", "-3"}}) {
    const auto r = run({"analyze", "--sobol", "-m", m, "--norm", "linf", "-k", "8"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 5);
    CHECK(ls[0] == separation_csv_header);
    CHECK(fields(ls[1])[4] == expected);
    CHECK(ls[2].empty());
    CHECK(ls[3] == covering_csv_header);
    CHECK(fields(ls[4])[4] == "8");
  }
  // Default grid exponent.
  const auto d = run({"analyze", "--sobol", "-m", "2"});
  REQUIRE(d.code == 0);
  CHECK(fields(lines(d.out)[4])[4] == "11");
}

TEST_CASE("analyze preconditions and budget") {
  const auto one = scratch("one.csv");
  {
    std::ofstream f(one);
    f << "index,nx,ny,scale\n0,0,0,1\n";
  }
  CHECK(run({"analyze", "--input", one.string()}).code == 2);
  CHECK(run({"analyze", "--sobol", "-m", "3", "-N", "1"}).code == 2);
  const auto big = run({"analyze", "--sobol", "-m", "4", "-k", "14"});
  CHECK(big.code == 3);
  CHECK(big.err.find("error") != std::string::npos);
}

TEST_CASE("generate then analyze matches in-process analysis") {
  const auto pts = scratch("pts.csv");
  REQUIRE(run({"generate", "--sobol", "-m", "7", "-N", "100", "-o", pts.string()}).code == 0);
  for (const char *norm : {"l1", "l2", "linf"}) {
    const auto via_file = run({"analyze", "--input", pts.string(), "--norm", norm, "-k", "7"});
    const auto direct = run({"analyze", "--sobol", "-m", "7", "-N", "100", "--norm", norm, "-k", "7"});
    REQUIRE(via_file.code == 0);
    CHECK(via_file.out == direct.out);

    const auto ps = prefix(GeneratorPair::sobol(7), 100);
    const auto sep = separation(ps, parse_norm(norm));
    const auto cov = covering_certified(ps, parse_norm(norm), 7);
    std::ostringstream expect;
    write_separation_csv(expect, {sep});
    expect << '\n';
    write_covering_csv(expect, {{ps.size(), cov, mesh_ratio(cov, sep)}});
    CHECK(via_file.out == expect.str());
  }
}

TEST_CASE("file outputs are reproducible and carry a sidecar") {
  const auto a = scratch("a.csv"), b = scratch("b.csv");
  for (const auto &p : {a, b})
    REQUIRE(run({"analyze", "--sobol", "-m", "8", "-k", "6", "-o", p.string()}).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(scratch("a.covering.csv")) == slurp(scratch("b.covering.csv")));
  CHECK(slurp(a).rfind(separation_csv_header, 0) == 0);
  const auto meta = nlohmann::json::parse(slurp(scratch("a.csv.meta.json")));
  CHECK(meta["command"] == "analyze");
  CHECK(meta.contains("created_utc"));

  const auto g1 = scratch("g1.csv"), g2 = scratch("g2.csv");
  run({"generate", "--sobol", "-m", "10", "-o", g1.string()});
  run({"generate", "--sobol", "-m", "10", "-o", g2.string()});
  CHECK(slurp(g1) == slurp(g2));
}

TEST_CASE("profile") {
  const auto r = run({"profile", "--sobol", "-m", "8"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  const auto rows = read_separation_csv(in);
  CHECK(rows == separation_profile(GeneratorPair::sobol(8), 256, Norm::LInf));
  CHECK(run({"profile", "--sobol", "-m", "3", "-N", "1"}).code == 2);
}

TEST_CASE("verify") {
  const auto r = run({"verify", "--m-max", "14"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 15);
  CHECK(ls[0] == verify_csv_header);
  CHECK(ls[6] == "6,general,2,1,0,-6,-6,yes,34,60");
  CHECK(ls[8] == "8,pow2,3,,,-9,-9,yes,1,129");
  for (std::size_t i = 1; i < ls.size(); ++i)
    CHECK(fields(ls[i])[7] == "yes");
  CHECK(run({"verify", "--m-max", "14", "--seed", "5"}).out == r.out);
}

TEST_CASE("verify with the formula only") {
  const auto r = run({"verify", "--m-max", "20", "--formula-only"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 21);
  CHECK(fields(ls[14])[7] == "yes");
  CHECK(fields(ls[15])[7] == "skipped");
  CHECK(fields(ls[15])[6].empty());
  CHECK(fields(ls[20])[7] == "skipped");
}

TEST_CASE("verify ceilings") {
  CHECK(run({"verify", "--m-max", "21"}).code == 2);
  CHECK(run({"verify", "--m-max", "15", "--exhaustive"}).code == 2);
  CHECK(run({"verify", "--m-max", "0"}).code == 2);
  CHECK(run({"verify", "--m-max", "10", "--exhaustive"}).code == 0);
}

TEST_CASE("a patched formula fails verification") {
  VerifyOptions opts;
  opts.m_max = 8;
  opts.random_pairs = 100;
  opts.formula = [](int m) {
    return m == 6 ? Dyadic::pow2(-7) : separation_formula(m);
  };
  const auto result = run_verification(opts);
  CHECK_FALSE(result.ok());
  std::ostringstream csv, err;
  write_verify_csv(csv, result.rows);
  CHECK(lines(csv.str())[6].find("MISMATCH") != std::string::npos);
  CHECK(cli::verification_exit_code(result, opts.seed, err) == cli::verification_failed);
  CHECK(err.str().find("m = 6") != std::string::npos);

  opts.formula = separation_formula;
  const auto good = run_verification(opts);
  std::ostringstream quiet;
  CHECK(cli::verification_exit_code(good, opts.seed, quiet) == cli::ok);
  CHECK(good.random_pairs_checked == 100);
}

TEST_CASE("plot") {
  const auto prof = scratch("profile.csv");
  REQUIRE(run({"profile", "--sobol", "-m", "12", "-o", prof.string()}).code == 0);
  const auto r = run({"plot", "--input", prof.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("<svg", 0) == 0);
  CHECK(r.out.find("viewBox=\"0 0 800 600\"") != std::string::npos);
  std::size_t circles = 0;
  for (auto pos = r.out.find("<circle"); pos != std::string::npos; pos = r.out.find("<circle", pos + 1))
    ++circles;
  CHECK(circles == 4095);

  // Every plotted point is on or below the slope -3/4 line through 2^-1/2.
  std::ifstream in(prof);
  const auto rows = read_separation_csv(in);
  for (const auto &row : rows)
    CHECK(scaled_separation_within(row.N, row.radius, -2));
  for (int m = 1; m <= 12; ++m)
    CHECK(rows[(std::size_t{1} << m) - 2].radius == separation_formula(m));

  const auto out = scratch("plot.svg");
  REQUIRE(run({"plot", "--input", prof.string(), "-o", out.string()}).code == 0);
  CHECK(slurp(out) == r.out);
}

TEST_CASE("plot input errors") {
  const auto empty = scratch("empty.csv");
  {
    std::ofstream f(empty);
    f << separation_csv_header << '\n';
  }
  CHECK(run({"plot", "--input", empty.string()}).code == 2);
  const auto bad = scratch("bad.csv");
  {
    std::ofstream f(bad);
    f << separation_csv_header << "\n4,linf,1/2^2,-3,-3,1,2\n";
  }
  CHECK(run({"plot", "--input", bad.string()}).code == 2);
  const auto blank = scratch("blank.csv");
  {
    std::ofstream f(blank);
  }
  CHECK(run({"plot", "--input", blank.string()}).code == 2);
  CHECK(run({"plot"}).code == 2);
}
