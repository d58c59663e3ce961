#include "dhym/trace.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace dhym {

namespace {

constexpr double kPi = std::numbers::pi;

// Dormand-Prince 5(4) tableau.
constexpr std::array<double, 7> kC{0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr std::array<double, 7> kB5{35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr std::array<double, 7> kB4{5179.0 / 57600, 0.0, 7571.0 / 16695, 393.0 / 640,
                                    -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

// Unit tangent of the level set. The gradient of Phi points along
// (sin b, cos b) with b = (n-1) arg z - theta, so the tangent is
// sigma (cos b, -sin b); sigma is fixed once so that x increases at the start.
struct TangentField {
  int n;
  double theta;
  double sigma = 1.0;

  double angle(double x, double y) const { return (n - 1) * std::atan2(y, x) - theta; }

  bool operator()(double x, double y, std::array<double, 2>& d) const {
    if (x == 0.0 && y == 0.0) return false;
    const double b = angle(x, y);
    d = {sigma * std::cos(b), -sigma * std::sin(b)};
    return true;
  }

  // dy/dx along the curve; large but finite close to a vertical tangent.
  double slope(double x, double y) const {
    const double b = angle(x, y);
    return -std::sin(b) / std::cos(b);
  }
};

CurveSample make_sample(int n, double theta, double x, double f, double fp) {
  CurveSample s{x, f, fp, 0.0, 0.0};
  s.residual = ode_residual(n, theta, x, f, fp);
  s.theta = (n - 1) * std::atan(f / x) + std::atan(fp);
  return s;
}

void finish(SolutionCurve& curve, const Geometry& g) {
  double sq = 0.0;
  curve.residual_max = 0.0;
  for (const auto& s : curve.samples) {
    curve.residual_max = std::max(curve.residual_max, std::abs(s.residual));
    sq += s.residual * s.residual;
  }
  curve.residual_l2 = std::sqrt(sq / static_cast<double>(curve.samples.size()));
  curve.endpoint_error = std::abs(curve.samples.back().f - g.p);
}

}  // namespace

const char* to_string(TraceError::Kind k) {
  switch (k) {
    case TraceError::Kind::NotGraphical: return "not_graphical";
    case TraceError::Kind::VerticalTangent: return "vertical_tangent";
    case TraceError::Kind::StepLimitExceeded: return "step_limit_exceeded";
  }
  return "?";
}

double ode_residual(int n, double theta_hat, double x, double f, double f_prime) {
  const cplx z{x, f};
  cplx w{1.0, 0.0};
  for (int i = 0; i < n - 1; ++i) w *= z;
  return (std::polar(1.0, -theta_hat) * w * cplx{1.0, f_prime}).imag();
}

SolutionCurve trace_solution(const Geometry& g, const Tolerances& tol, const TraceOptions& opt) {
  const LevelSetContext ctx = LevelSetContext::from(g, tol);
  SolutionCurve curve;
  curve.n = g.n;
  curve.c = ctx.c;

  if (opt.require_graphical) {
    const GraphicalResult gr = graphical_existence(g, tol);
    if (gr.value != Graphical::Yes) throw TraceError(TraceError::Kind::NotGraphical, gr.reason);
  }

  const ComponentResult comp = same_component(g, tol);
  if (!opt.force_continuation && comp.kind == ComponentKind::OnZeroLevel && comp.same_ray) {
    // The arc is a segment of a line through the origin.
    constexpr int kSamples = 257;
    curve.linear = true;
    for (int i = 0; i < kSamples; ++i) {
      const double x = i + 1 == kSamples ? g.a : 1.0 + (g.a - 1.0) * i / (kSamples - 1);
      curve.samples.push_back(make_sample(g.n, ctx.theta_hat, x, g.q * x, g.q));
    }
    finish(curve, g);
    return curve;
  }

  // Continuation in arclength: the step stays well conditioned when the
  // curve is nearly vertical, which stable instances allow arbitrarily close
  // to an endpoint.
  TangentField field{g.n, ctx.theta_hat};
  const double span = g.a - 1.0;
  const double h_max = std::hypot(span, g.p - g.q) * tol.initial_step;
  const double h_min = span * tol.min_step;
  const double level_tol = tol.tol_level * ctx.scale;
  const double atol = 1e-10 * std::max({1.0, std::abs(g.p), std::abs(g.q)});
  const double rtol = 1e-10;
  const double land_tol = 1e-12 * g.a;

  // Newton along the gradient back onto Phi = c.
  auto project = [&](double& x, double& y) {
    const double x0 = x, y0 = y;
    for (int it = 0; it < 40; ++it) {
      const double resid = phi(x, y, ctx) - ctx.c;
      if (std::abs(resid) <= level_tol) break;
      const PhiGradient gr = phi_gradient(x, y, ctx);
      const double g2 = gr.phi_x * gr.phi_x + gr.phi_y * gr.phi_y;
      if (g2 == 0.0 || !std::isfinite(g2)) return false;
      x -= resid * gr.phi_x / g2;
      y -= resid * gr.phi_y / g2;
    }
    const double moved = std::hypot(x - x0, y - y0);
    return std::abs(phi(x, y, ctx) - ctx.c) <= level_tol && moved <= 1e-6 * (1.0 + std::hypot(x0, y0));
  };
  // Final landing on x = a: Newton in y only.
  auto project_y = [&](double x, double& y) {
    for (int it = 0; it < 60; ++it) {
      const double resid = phi(x, y, ctx) - ctx.c;
      if (std::abs(resid) <= level_tol) return true;
      const double dphi = phi_gradient(x, y, ctx).phi_y;
      if (dphi == 0.0 || !std::isfinite(dphi)) return false;
      y -= resid / dphi;
    }
    return std::abs(phi(x, y, ctx) - ctx.c) <= level_tol;
  };

  double x = 1.0;
  double y = g.q;
  const double b0 = field.angle(x, y);
  if (std::abs(std::cos(b0)) < 1e-15)
    throw TraceError(TraceError::Kind::VerticalTangent, "vertical tangent at (1, q)");
  field.sigma = std::cos(b0) > 0.0 ? 1.0 : -1.0;
  curve.samples.push_back(make_sample(g.n, ctx.theta_hat, x, y, field.slope(x, y)));

  double h = h_max;
  int overshoots = 0;
  std::array<std::array<double, 2>, 7> k{};
  while (x < g.a) {
    if (curve.steps_accepted + curve.steps_rejected > tol.max_steps)
      throw TraceError(TraceError::Kind::StepLimitExceeded, fmt::format("step limit reached at x = {:.12g}", x));

    bool ok = field(x, y, k[0]);
    for (int st = 1; st < 7 && ok; ++st) {
      double xs = x, ys = y;
      for (int j = 0; j < st; ++j) {
        xs += h * kA[st][j] * k[j][0];
        ys += h * kA[st][j] * k[j][1];
      }
      ok = field(xs, ys, k[st]);
    }
    double x5 = x, y5 = y, ex = 0.0, ey = 0.0;
    if (ok) {
      for (int st = 0; st < 7; ++st) {
        x5 += h * kB5[st] * k[st][0];
        y5 += h * kB5[st] * k[st][1];
        ex += h * (kB5[st] - kB4[st]) * k[st][0];
        ey += h * (kB5[st] - kB4[st]) * k[st][1];
      }
    }
    const double ratio = ok ? std::max(std::abs(ex) / (atol + rtol * std::max(std::abs(x), std::abs(x5))),
                                       std::abs(ey) / (atol + rtol * std::max(std::abs(y), std::abs(y5))))
                            : std::numeric_limits<double>::infinity();

    bool accepted = false;
    bool overshoot = false;
    if (ratio <= 1.0 && project(x5, y5)) {
      if (std::cos(field.angle(x5, y5)) * field.sigma <= 0.0) {
        throw TraceError(TraceError::Kind::VerticalTangent,
                         fmt::format("level curve turns back at x = {:.12g}, y = {:.12g}", x5, y5));
      }
      if (x5 > g.a + land_tol) {
        overshoot = true;
      } else {
        if (g.a - x5 <= land_tol) {
          x5 = g.a;
          if (!project_y(x5, y5))
            throw TraceError(TraceError::Kind::StepLimitExceeded, "could not land on x = a");
        }
        if (x5 > x) {
          x = x5;
          y = y5;
          curve.samples.push_back(make_sample(g.n, ctx.theta_hat, x, y, field.slope(x, y)));
          ++curve.steps_accepted;
          accepted = true;
        }
      }
    }
    if (overshoot && g.a - x <= 1e-6 * span) {
      // Close enough: interpolate onto x = a and correct in y.
      double ya = y + (y5 - y) * (g.a - x) / (x5 - x);
      if (!project_y(g.a, ya)) throw TraceError(TraceError::Kind::StepLimitExceeded, "could not land on x = a");
      x = g.a;
      y = ya;
      curve.samples.push_back(make_sample(g.n, ctx.theta_hat, x, y, field.slope(x, y)));
      ++curve.steps_accepted;
      break;
    }
    if (overshoot) {
      // Aim the next step at x = a; dx/ds is smooth, so this converges fast.
      h *= std::max(0.1, (g.a - x) / (x5 - x));
      ++curve.steps_rejected;
      if (++overshoots > 200) throw TraceError(TraceError::Kind::StepLimitExceeded, "could not land on x = a");
    } else if (accepted) {
      const double grow = ratio > 0.0 ? 0.9 * std::pow(ratio, -0.2) : 5.0;
      h = std::min(h_max, h * std::clamp(grow, 0.2, 5.0));
    } else {
      ++curve.steps_rejected;
      h *= std::isfinite(ratio) && ratio > 1.0 ? std::max(0.2, 0.9 * std::pow(ratio, -0.2)) : 0.25;
    }
    if (h < h_min && x < g.a)
      throw TraceError(TraceError::Kind::StepLimitExceeded,
                       fmt::format("step size underflow at x = {:.12g}, y = {:.12g}", x, y));
  }
  finish(curve, g);
  return curve;
}

VerificationReport verify_solution(const SolutionCurve& curve, const Geometry& g, const Tolerances& tol) {
  VerificationReport rep;
  if (curve.samples.empty()) {
    rep.failures.push_back("empty curve");
    return rep;
  }
  const LevelSetContext ctx = LevelSetContext::from(g, tol);
  const double zmax = std::max(std::abs(g.z1()), std::abs(g.z2()));
  rep.residual_bound = tol.tol_residual * (1.0 + std::pow(zmax, g.n - 1));

  double tmin = curve.samples.front().theta;
  double tmax = tmin;
  double tsum = 0.0;
  rep.monotone = std::abs(curve.samples.front().x - 1.0) == 0.0;
  for (std::size_t i = 0; i < curve.samples.size(); ++i) {
    const auto& s = curve.samples[i];
    const double r = ode_residual(g.n, ctx.theta_hat, s.x, s.f, s.f_prime);
    rep.residual_max = std::max(rep.residual_max, std::abs(r));
    rep.level_drift = std::max(rep.level_drift, std::abs(phi(s.x, s.f, ctx) - ctx.c) / ctx.scale);
    const double th = (g.n - 1) * std::atan(s.f / s.x) + std::atan(s.f_prime);
    tmin = std::min(tmin, th);
    tmax = std::max(tmax, th);
    tsum += th;
    if (i > 0 && !(s.x > curve.samples[i - 1].x)) rep.monotone = false;
  }
  rep.monotone = rep.monotone && curve.samples.back().x == g.a;
  rep.theta_oscillation = tmax - tmin;
  rep.theta_mean = tsum / static_cast<double>(curve.samples.size());
  rep.theta_matches_average = std::abs(wrap_angle(rep.theta_mean - ctx.theta_hat)) <= tol.tol_angle;
  rep.theta_in_range = std::abs(rep.theta_mean) < g.n * kPi / 2.0;
  rep.endpoint_error = std::abs(curve.samples.back().f - g.p);

  if (const auto L = lift_angle(g, tol)) rep.lift_difference = std::abs(rep.theta_mean - L->lifted);

  if (!rep.monotone) rep.failures.push_back("x is not strictly increasing from 1 to a");
  if (rep.residual_max > rep.residual_bound)
    rep.failures.push_back(fmt::format("ODE residual {:.3e} exceeds {:.3e}", rep.residual_max, rep.residual_bound));
  if (rep.level_drift > 100.0 * tol.tol_level)
    rep.failures.push_back(fmt::format("level drift {:.3e}", rep.level_drift));
  if (rep.theta_oscillation > tol.tol_angle)
    rep.failures.push_back(fmt::format("pointwise angle oscillates by {:.3e}", rep.theta_oscillation));
  if (!rep.theta_matches_average) rep.failures.push_back("pointwise angle differs from theta mod 2 pi");
  if (!rep.theta_in_range) rep.failures.push_back("pointwise angle outside (-n pi/2, n pi/2)");
  if (rep.lift_difference && *rep.lift_difference > tol.tol_angle)
    rep.failures.push_back(fmt::format("pointwise angle differs from the lifted angle by {:.3e}", *rep.lift_difference));
  if (rep.endpoint_error > tol.tol_endpoint * std::max(1.0, std::abs(g.p)))
    rep.failures.push_back(fmt::format("endpoint error {:.3e}", rep.endpoint_error));
  rep.passed = rep.failures.empty();
  return rep;
}

}  // namespace dhym
