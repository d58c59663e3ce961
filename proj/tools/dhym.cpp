// Command-line front end: analyze, solve, sweep, figure, check.
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "dhym/report.hpp"

namespace {

constexpr int kExitConfig = 64;
constexpr int kExitTraceAnomaly = 3;

std::string slurp(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dhym::ConfigError(fmt::format("cannot read config '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to --out when given, else to stdout.
void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", out_path));
  out << text;
}

int cmd_analyze(const dhym::RunConfig& cfg, const std::string& out) {
  const dhym::AnalysisReport rep = dhym::analyze(cfg.geometry, cfg.tol);
  emit(out, dhym::to_json(rep).dump(2) + "\n");
  return dhym::exit_code(rep.existence);
}

int cmd_solve(const dhym::RunConfig& cfg, const std::string& out) {
  const dhym::ExistenceVerdict ev = dhym::existence_verdict(cfg.geometry, cfg.tol);
  if (ev.value != dhym::Existence::Exists) {
    std::cerr << fmt::format("solve: existence is {} ({}); nothing to trace\n", dhym::to_string(ev.value),
                             dhym::to_string(ev.route));
    for (const auto& note : ev.notes) std::cerr << "  " << note << "\n";
    return dhym::exit_code(ev);
  }
  dhym::SolutionCurve curve;
  try {
    curve = dhym::trace_solution(cfg.geometry, cfg.tol);
  } catch (const dhym::TraceError& e) {
    std::cerr << fmt::format("solve: trace failed although a solution exists: {} ({})\n", e.what(),
                             dhym::to_string(e.kind()));
    return kExitTraceAnomaly;
  }
  const dhym::VerificationReport check = dhym::verify_solution(curve, cfg.geometry, cfg.tol);
  std::ostringstream csv;
  dhym::write_curve_csv(csv, curve);
  emit(out, csv.str());
  // The summary shares stdout only when the CSV went to a file.
  (out.empty() ? std::cerr : std::cout) << dhym::solve_summary(curve, check).dump(2) << "\n";
  return check.passed ? 0 : kExitTraceAnomaly;
}

int cmd_sweep(const dhym::RunConfig& cfg, const std::string& out, unsigned threads) {
  if (!cfg.sweep) throw dhym::ConfigError("sweep: config has no 'sweep' section");
  const auto rows = dhym::run_sweep(cfg.geometry, *cfg.sweep, cfg.tol, threads);
  std::ostringstream csv;
  dhym::write_sweep_csv(csv, rows);
  emit(out, csv.str());
  return 0;
}

int cmd_figure(const dhym::RunConfig& cfg, const std::string& out) {
  emit(out, dhym::render_figure(cfg.geometry, cfg.figure.value_or(dhym::FigureSpec{}), cfg.tol));
  return 0;
}

// Randomized self-check: shared level value and trace of stable instances.
int cmd_check(std::uint64_t seed, int count, int n_max, const std::string& out) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dn(2, n_max);
  std::uniform_real_distribution<double> da(1.0, 10.0), dpq(-10.0, 10.0);
  const dhym::Tolerances tol;
  int degenerate = 0, stable = 0, traced = 0, level_fail = 0, trace_fail = 0;
  double worst_level = 0.0;
  for (int i = 0; i < count; ++i) {
    dhym::Geometry g{dn(rng), da(rng), dpq(rng), dpq(rng)};
    if (g.a <= 1.0) g.a = std::nextafter(1.0, 2.0);
    if (dhym::theta_hat(g, tol).degenerate) {
      ++degenerate;
      continue;
    }
    const auto ctx = dhym::LevelSetContext::from(g, tol);
    const double gap = std::abs(dhym::phi(g.a, g.p, ctx) - ctx.c) / dhym::charge_scale(g);
    worst_level = std::max(worst_level, gap);
    if (gap > 1e-9) ++level_fail;
    if (dhym::stability_verdict(g, tol).overall != dhym::Overall::Stable) continue;
    ++stable;
    try {
      const auto curve = dhym::trace_solution(g, tol);
      if (dhym::verify_solution(curve, g, tol).passed) ++traced;
      else ++trace_fail;
    } catch (const dhym::TraceError&) {
      ++trace_fail;
    }
  }
  const dhym::ordered_json j{{"seed", seed},     {"count", count},         {"degenerate", degenerate},
                             {"level_failures", level_fail}, {"worst_level_gap", worst_level},
                             {"stable", stable}, {"traced", traced},       {"trace_failures", trace_fail}};
  emit(out, j.dump(2) + "\n");
  return level_fail == 0 && trace_fail == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Existence and numerical solutions of the deformed Hermitian-Yang-Mills equation on the blowup of P^n"};
  app.require_subcommand(1);
  std::string config_path, out_path;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  int count = 1000, n_max = 12;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file ('-' or omitted: standard input)");
    sub->add_option("--out", out_path, "output file (default: standard output)");
  };
  auto* analyze = app.add_subcommand("analyze", "charges, stability, lift and existence verdict as JSON");
  auto* solve = app.add_subcommand("solve", "trace the solution curve and write it as CSV");
  auto* sweep = app.add_subcommand("sweep", "stability map over a (p, q) grid as CSV");
  auto* figure = app.add_subcommand("figure", "SVG of the level set, ray sets and solution");
  auto* check = app.add_subcommand("check", "randomized self-check over generated instances");
  for (auto* sub : {analyze, solve, sweep, figure}) add_common(sub);
  sweep->add_option("--threads", threads, "worker threads (0: hardware concurrency)");
  check->add_option("--seed", seed, "random seed");
  check->add_option("--count", count, "number of instances")->check(CLI::PositiveNumber);
  check->add_option("--n-max", n_max, "largest dimension")->check(CLI::Range(2, 32));
  check->add_option("--out", out_path, "output file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (check->parsed()) return cmd_check(seed, count, n_max, out_path);
    const dhym::RunConfig cfg = dhym::parse_config_text(slurp(config_path));
    if (analyze->parsed()) return cmd_analyze(cfg, out_path);
    if (solve->parsed()) return cmd_solve(cfg, out_path);
    if (sweep->parsed()) return cmd_sweep(cfg, out_path, threads);
    if (figure->parsed()) return cmd_figure(cfg, out_path);
  } catch (const dhym::ConfigError& e) {
    std::cerr << "dhym: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "dhym: " << e.what() << "\n";
    return 70;
  }
  return 0;
}
