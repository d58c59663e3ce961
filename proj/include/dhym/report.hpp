#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dhym/contour.hpp"
#include "dhym/stability.hpp"
#include "dhym/trace.hpp"

namespace dhym {

using ordered_json = nlohmann::ordered_json;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SweepSpec {
  double p_min = -1.0;
  double p_max = 1.0;
  int p_count = 11;
  double q_min = -1.0;
  double q_max = 1.0;
  int q_count = 11;
};

struct FigureSpec {
  std::optional<Window> window;
  int samples = 400;  // marching-squares cells along x
  int width = 800;    // pixels
  bool level_set = true;
  bool rays_n = true;
  bool rays_n_minus_1 = true;
  bool curve = true;
  bool endpoints = true;
};

struct RunConfig {
  Geometry geometry;
  Tolerances tol;
  std::optional<SweepSpec> sweep;
  std::optional<FigureSpec> figure;
};

/// Parses and validates a configuration document. Unknown keys are rejected.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(std::string_view text);

struct AnalysisReport {
  Geometry geometry;
  ChargeReport charges;
  DegeneracyResult degeneracy;
  std::optional<StabilityReport> stability;
  std::optional<LiftResult> sector;
  std::optional<LiftResult> linear;
  std::optional<LiftedAngle> lift;
  ExistenceVerdict existence;
  std::optional<ComponentResult> component;
  std::optional<GraphicalResult> graphical;
};

AnalysisReport analyze(const Geometry& g, const Tolerances& tol = {});
ordered_json to_json(const AnalysisReport& rep);

/// 0 exists, 1 does not exist, 2 inconclusive or degenerate.
int exit_code(const ExistenceVerdict& v);

void write_curve_csv(std::ostream& os, const SolutionCurve& curve);
ordered_json solve_summary(const SolutionCurve& curve, const VerificationReport& check);

struct SweepRow {
  double p = 0.0;
  double q = 0.0;
  std::string stability;
  std::string existence;
  bool lift_defined = false;
  double stability_margin = 0.0;  // smallest sector margin over k and both divisors
  double sector_margin = 0.0;
  double divisor_margin = 0.0;    // NaN when no lift
};

/// Row-major over (p, q): p varies slowest. Rows are evaluated on worker threads.
std::vector<SweepRow> run_sweep(const Geometry& base, const SweepSpec& spec, const Tolerances& tol = {},
                                unsigned threads = 0);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// Deterministic SVG 1.1 rendering of the level set, the ray sets, the
/// endpoints and (when it exists) the traced solution. Throws ConfigError
/// when the window misses an endpoint.
std::string render_figure(const Geometry& g, const FigureSpec& spec, const Tolerances& tol = {});

/// "%.17g".
std::string format_double(double v);

}  // namespace dhym
