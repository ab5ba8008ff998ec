#include "sobolsep/cli.hpp"

#include "sobolsep/digital.hpp"
#include "sobolsep/geometry.hpp"
#include "sobolsep/report.hpp"
#include "sobolsep/theory.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace sobolsep::cli {

namespace {

constexpr const char *tool_version = "1.0.0";

/// Invalid input detected after argument parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  bool sobol = false;
  std::string matrices;
  std::string input;
  int m = 0;
  std::uint64_t N = 0;
  std::string norm = "linf";
  int k = default_grid_exponent;
  int m_max = 14;
  bool exhaustive = false;
  bool formula_only = false;
  std::uint64_t seed = 20240601;
  std::string output;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes `data` to cfg.output (plus a provenance sidecar) or to `out`.
void emit(const RunConfig &cfg, const std::string &data, std::ostream &out,
          const std::string &command, const std::vector<std::string> &args) {
  if (cfg.output.empty()) {
    out << data;
    return;
  }
  {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f)
      throw UsageError("cannot write '" + cfg.output + "'");
    f << data;
  }
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  const nlohmann::json meta = {{"tool", "sobolsep"},
                               {"version", tool_version},
                               {"command", command},
                               {"arguments", args},
                               {"output", cfg.output},
                               {"created_utc", stamp}};
  std::ofstream side(cfg.output + ".meta.json");
  side << meta.dump(2) << '\n';
}

GeneratorPair load_generator(const RunConfig &cfg) {
  if (cfg.sobol == !cfg.matrices.empty())
    throw UsageError("choose exactly one of --sobol and --matrices");
  if (cfg.sobol) {
    if (cfg.m < 1 || cfg.m > max_scale)
      throw UsageError("--sobol needs -m in 1..64");
    return GeneratorPair::sobol(cfg.m);
  }
  std::istringstream in(read_file(cfg.matrices));
  auto g = read_generator_matrices(in, "matrices(" + cfg.matrices + ")");
  if (cfg.m != 0 && cfg.m != g.m())
    throw UsageError("-m " + std::to_string(cfg.m) +
                     " disagrees with the matrix file (m = " +
                     std::to_string(g.m()) + ")");
  return g;
}

std::uint64_t resolve_count(const RunConfig &cfg, int m) {
  const bool full_fits = m < 64;
  if (cfg.N == 0) {
    if (!full_fits)
      throw UsageError("-N is required when m = 64");
    return std::uint64_t{1} << m;
  }
  if (full_fits && cfg.N > (std::uint64_t{1} << m))
    throw UsageError("-N " + std::to_string(cfg.N) + " exceeds 2^" +
                     std::to_string(m));
  return cfg.N;
}

// Points for analyze/profile: from --input CSV or from a generator.
PointSet load_points(const RunConfig &cfg) {
  if (!cfg.input.empty()) {
    if (cfg.sobol || !cfg.matrices.empty())
      throw UsageError("--input cannot be combined with --sobol/--matrices");
    std::istringstream in(read_file(cfg.input));
    auto ps = read_points_csv(in, "csv(" + cfg.input + ")");
    if (cfg.N != 0) {
      if (cfg.N > ps.size())
        throw UsageError("-N exceeds the number of points in the input");
      ps = ps.take(cfg.N);
    }
    return ps;
  }
  const auto g = load_generator(cfg);
  const auto N = resolve_count(cfg, g.m());
  if (N > (std::uint64_t{1} << 30))
    throw UsageError("refusing to materialize more than 2^30 points");
  return prefix(g, N);
}

int cmd_generate(const RunConfig &cfg, std::ostream &out,
                 const std::vector<std::string> &args) {
  const auto g = load_generator(cfg);
  const auto N = resolve_count(cfg, g.m());
  if (N < 1)
    throw UsageError("-N must be positive");
  if (N > (std::uint64_t{1} << 30))
    throw UsageError("refusing to write more than 2^30 points");
  std::ostringstream data;
  write_points_csv(data, prefix(g, N));
  emit(cfg, data.str(), out, "generate", args);
  return ok;
}

int cmd_analyze(const RunConfig &cfg, std::ostream &out,
                const std::vector<std::string> &args) {
  const auto ps = load_points(cfg);
  if (ps.size() < 2)
    throw UsageError("analyze needs at least 2 points");
  const Norm norm = parse_norm(cfg.norm);
  const auto sep = separation(ps, norm);
  const auto cov = covering_certified(ps, norm, cfg.k);
  if (sep.radius.is_zero())
    throw UsageError("point set contains duplicate points; mesh ratio undefined");
  const CoveringRow row{ps.size(), cov, mesh_ratio(cov, sep)};

  std::ostringstream s1, s2;
  write_separation_csv(s1, {sep});
  write_covering_csv(s2, {row});
  if (cfg.output.empty()) {
    out << s1.str() << '\n' << s2.str();
    return ok;
  }
  emit(cfg, s1.str(), out, "analyze", args);
  RunConfig second = cfg;
  const std::filesystem::path p(cfg.output);
  second.output = (p.parent_path() / p.stem()).string() + ".covering.csv";
  emit(second, s2.str(), out, "analyze", args);
  return ok;
}

int cmd_profile(const RunConfig &cfg, std::ostream &out,
                const std::vector<std::string> &args) {
  const auto ps = load_points(cfg);
  if (ps.size() < 2)
    throw UsageError("profile needs at least 2 points");
  std::ostringstream data;
  write_separation_csv(data, separation_profile(ps, ps.size(), parse_norm(cfg.norm)));
  emit(cfg, data.str(), out, "profile", args);
  return ok;
}

int cmd_verify(const RunConfig &cfg, std::ostream &out, std::ostream &err,
               const std::vector<std::string> &args) {
  VerifyOptions opts;
  opts.m_max = cfg.m_max;
  opts.formula_only = cfg.formula_only;
  opts.naive = cfg.exhaustive;
  opts.seed = cfg.seed;
  VerifyResult result;
  try {
    result = run_verification(opts);
  } catch (const std::domain_error &e) {
    throw UsageError(e.what());
  }
  std::ostringstream data;
  write_verify_csv(data, result.rows);
  emit(cfg, data.str(), out, "verify", args);
  return verification_exit_code(result, cfg.seed, err);
}

int cmd_plot(const RunConfig &cfg, std::ostream &out,
             const std::vector<std::string> &args) {
  if (cfg.input.empty())
    throw UsageError("plot needs --input <separation or profile CSV>");
  std::istringstream in(read_file(cfg.input));
  std::vector<SeparationReport> rows;
  try {
    rows = read_separation_csv(in);
  } catch (const std::invalid_argument &e) {
    throw UsageError(e.what());
  }
  if (rows.empty())
    throw UsageError("plot: no data rows in '" + cfg.input + "'");
  std::vector<PlotPoint> pts;
  for (const auto &r : rows) {
    if (r.radius.is_zero())
      continue;
    pts.push_back({std::log2(static_cast<double>(r.N)), std::log2(r.radius_value())});
  }
  if (pts.empty())
    throw UsageError("plot: no plottable rows");
  const std::string title =
      "separation radius q (" + std::string(to_string(rows.front().norm)) + ")";
  emit(cfg, render_profile_svg(pts, title), out, "plot", args);
  return ok;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

} // namespace

int verification_exit_code(const VerifyResult &result, std::uint64_t seed,
                           std::ostream &err) {
  if (result.ok())
    return ok;
  for (const auto &r : result.rows)
    if (!r.ok())
      err << "verify: m = " << r.decomposition.m << " failed\n";
  if (result.random_pairs_failed != 0)
    err << "verify: " << result.random_pairs_failed << " of "
        << result.random_pairs_checked
        << " random close pairs broke the near-digit statements (seed " << seed
        << ")\n";
  return verification_failed;
}

std::string render_profile_svg(const std::vector<PlotPoint> &points,
                               const std::string &title) {
  constexpr double width = 800, height = 600;
  constexpr double left = 70, right = 30, top = 50, bottom = 60;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!points.empty()) {
    x0 = x1 = points.front().log2_n;
    y0 = y1 = points.front().log2_q;
    for (const auto &p : points) {
      x0 = std::min(x0, p.log2_n);
      x1 = std::max(x1, p.log2_n);
      y0 = std::min(y0, p.log2_q);
      y1 = std::max(y1, p.log2_q);
    }
  }
  x0 = std::floor(x0);
  x1 = std::max(std::ceil(x1), x0 + 1);
  y0 = std::floor(y0) - 1;
  y1 = std::ceil(y1) + 1;
  const auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * (width - left - right); };
  const auto sy = [&](double y) { return top + (y1 - y) / (y1 - y0) * (height - top - bottom); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
       "viewBox=\"0 0 800 600\">\n";
  s << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  s << "<defs><clipPath id=\"plot\"><rect x=\"" << fmt(left) << "\" y=\"" << fmt(top)
    << "\" width=\"" << fmt(width - left - right) << "\" height=\""
    << fmt(height - top - bottom) << "\"/></clipPath></defs>\n";
  s << "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"16\">"
    << title << "</text>\n";

  // Axes and integer ticks.
  s << "<g stroke=\"black\" stroke-width=\"1\">\n";
  s << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(height - bottom) << "\" x2=\""
    << fmt(width - right) << "\" y2=\"" << fmt(height - bottom) << "\"/>\n";
  s << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(left)
    << "\" y2=\"" << fmt(height - bottom) << "\"/>\n";
  s << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  const int xstep = std::max(1, static_cast<int>((x1 - x0) / 12) + 1);
  for (int t = static_cast<int>(x0); t <= static_cast<int>(x1); t += xstep)
    s << "<text x=\"" << fmt(sx(t)) << "\" y=\"" << fmt(height - bottom + 18)
      << "\" text-anchor=\"middle\">" << t << "</text>\n";
  const int ystep = std::max(1, static_cast<int>((y1 - y0) / 12) + 1);
  for (int t = static_cast<int>(y0); t <= static_cast<int>(y1); t += ystep)
    s << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(sy(t) + 4)
      << "\" text-anchor=\"end\">" << t << "</text>\n";
  s << "<text x=\"" << fmt((left + width - right) / 2) << "\" y=\"" << fmt(height - 18)
    << "\" text-anchor=\"middle\">log2 N</text>\n";
  s << "<text x=\"18\" y=\"" << fmt((top + height - bottom) / 2)
    << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << fmt((top + height - bottom) / 2) << ")\">log2 q</text>\n";
  s << "</g>\n";

  // Reference lines.
  const auto line = [&](double intercept, double slope, const char *colour,
                        const char *label, double label_dy) {
    s << "<line clip-path=\"url(#plot)\" x1=\"" << fmt(sx(x0)) << "\" y1=\""
      << fmt(sy(intercept + slope * x0)) << "\" x2=\"" << fmt(sx(x1)) << "\" y2=\""
      << fmt(sy(intercept + slope * x1)) << "\" stroke=\"" << colour
      << "\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
    s << "<text x=\"" << fmt(width - right - 200) << "\" y=\"" << fmt(top + label_dy)
      << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << colour << "\">"
      << label << "</text>\n";
  };
  line(-1.0, -0.5, "#1f77b4", "slope -1/2: q = 1/(2 sqrt N)", 16);
  line(-0.5, -0.75, "#d62728", "slope -3/4: q = 2^-1/2 N^-3/4", 32);

  s << "<g fill=\"black\">\n";
  for (const auto &p : points)
    s << "<circle cx=\"" << fmt(sx(p.log2_n)) << "\" cy=\"" << fmt(sy(p.log2_q))
      << "\" r=\"2\"/>\n";
  s << "</g>\n</svg>\n";
  return s.str();
}

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Separation and covering radii of two-dimensional digital sequences",
               "sobolsep"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto add_source = [&](CLI::App *sub) {
    sub->add_flag("--sobol", cfg.sobol, "Sobol' generator (identity, Pascal)");
    sub->add_option("--matrices", cfg.matrices, "Generator matrix file");
    sub->add_option("-m", cfg.m, "Scale m (points are k/2^m)");
    sub->add_option("-N", cfg.N, "Number of points (default 2^m)");
  };
  const auto add_output = [&](CLI::App *sub) {
    sub->add_option("-o", cfg.output, "Output path (default stdout)");
  };

  auto *gen = app.add_subcommand("generate", "Write the first N points as CSV");
  add_source(gen);
  add_output(gen);

  auto *analyze = app.add_subcommand(
      "analyze", "Separation, certified covering radius and mesh ratio");
  add_source(analyze);
  analyze->add_option("--input", cfg.input, "Points CSV (index,nx,ny,scale)");
  analyze->add_option("--norm", cfg.norm, "l1, l2 or linf")
      ->check(CLI::IsMember({"l1", "l2", "linf"}));
  analyze->add_option("-k", cfg.k, "Covering grid exponent (4^k centers)");
  add_output(analyze);

  auto *profile = app.add_subcommand(
      "profile", "Exact separation of every prefix N = 2..N_max");
  add_source(profile);
  profile->add_option("--input", cfg.input, "Points CSV (index,nx,ny,scale)");
  profile->add_option("--norm", cfg.norm, "l1, l2 or linf")
      ->check(CLI::IsMember({"l1", "l2", "linf"}));
  add_output(profile);

  auto *verify = app.add_subcommand(
      "verify", "Check the closed-form separation against exhaustive search");
  verify->add_option("--m-max", cfg.m_max, "Largest m to check");
  verify->add_flag("--formula-only", cfg.formula_only,
                   "Exhaustive search only up to m = 14");
  verify->add_flag("--exhaustive", cfg.exhaustive,
                   "Use the all-pairs scan instead of the plane sweep");
  verify->add_option("--seed", cfg.seed, "Seed for randomized checks");
  add_output(verify);

  auto *plot = app.add_subcommand("plot", "SVG log-log plot of a separation CSV");
  plot->add_option("--input", cfg.input, "Separation or profile CSV");
  add_output(plot);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  try {
    if (*gen)
      return cmd_generate(cfg, out, args);
    if (*analyze)
      return cmd_analyze(cfg, out, args);
    if (*profile)
      return cmd_profile(cfg, out, args);
    if (*verify)
      return cmd_verify(cfg, out, err, args);
    if (*plot)
      return cmd_plot(cfg, out, args);
  } catch (const ResourceError &e) {
    err << "error: " << e.what() << '\n';
    return budget_exceeded;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }
  return usage_error;
}

} // namespace sobolsep::cli
