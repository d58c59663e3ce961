#include "dhym/level_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace dhym {

const char* to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::Same: return "same";
    case ComponentKind::Different: return "different";
    case ComponentKind::OnZeroLevel: return "on_zero_level";
  }
  return "?";
}

const char* to_string(Graphical g) {
  switch (g) {
    case Graphical::Yes: return "yes";
    case Graphical::No: return "no";
    case Graphical::Inconclusive: return "inconclusive";
  }
  return "?";
}

LevelSetContext LevelSetContext::from(const Geometry& g, const Tolerances& tol) {
  const AverageAngle th = dhym::theta_hat(g, tol);
  if (th.degenerate) throw std::domain_error("level set: zeta vanishes");
  LevelSetContext ctx;
  ctx.n = g.n;
  ctx.theta_hat = th.theta;
  ctx.scale = std::max(1.0, charge_scale(g));
  ctx.c = phi(1.0, g.q, ctx);
  return ctx;
}

double phi(double x, double y, const LevelSetContext& ctx) {
  const double r = std::hypot(x, y);
  if (r == 0.0) return 0.0;
  return std::pow(r, ctx.n) * std::sin(ctx.n * std::atan2(y, x) - ctx.theta_hat);
}

PhiGradient phi_gradient(double x, double y, const LevelSetContext& ctx) {
  const double r = std::hypot(x, y);
  if (r == 0.0) return {};
  const double mag = ctx.n * std::pow(r, ctx.n - 1);
  const double ang = (ctx.n - 1) * std::atan2(y, x) - ctx.theta_hat;
  return {mag * std::sin(ang), mag * std::cos(ang)};
}

ComponentResult same_component(const Geometry& g, const Tolerances& tol) {
  const LevelSetContext ctx = LevelSetContext::from(g, tol);
  const RaySet rn = ray_set(g.n, ctx.theta_hat, g.n);
  const double arg1 = std::arg(g.z1());
  const double arg2 = std::arg(g.z2());

  ComponentResult out;
  out.c = ctx.c;
  // |c| = |z_l|^n |sin(n arg z_l - theta)|, so comparing against the smaller
  // modulus tests that *both* points sit on R_n.
  const double small = std::min(std::pow(std::abs(g.z1()), g.n), std::pow(std::abs(g.z2()), g.n));
  if (std::abs(ctx.c) <= tol.eps_zero * small) {
    out.kind = ComponentKind::OnZeroLevel;
    const auto [j1, d1] = nearest_ray(arg1, rn);
    const auto [j2, d2] = nearest_ray(arg2, rn);
    out.same_ray = j1 == j2 && d1 <= tol.eps_angle && d2 <= tol.eps_angle;
    return out;
  }
  out.rays_between = rays_strictly_between(arg1, arg2, rn, tol.eps_angle);
  out.kind = out.rays_between == 0 ? ComponentKind::Same : ComponentKind::Different;
  return out;
}

GraphicalResult graphical_existence(const Geometry& g, const Tolerances& tol) {
  const ComponentResult comp = same_component(g, tol);
  GraphicalResult out;
  if (comp.kind == ComponentKind::Different) {
    out.reason = fmt::format("endpoints on different components ({} rays of R_n between)", comp.rays_between);
    return out;
  }
  if (comp.kind == ComponentKind::OnZeroLevel && !comp.same_ray) {
    out.reason = "endpoints on distinct lines of the zero level set";
    return out;
  }

  const double theta = theta_hat(g, tol).theta;
  const RaySet vertical = ray_set(g.n - 1, theta, g.n);
  const SectorVerdict s1 = sector_of(g.z1(), g.n - 1, theta, g.n, tol.eps_angle);
  const SectorVerdict s2 = sector_of(g.z2(), g.n - 1, theta, g.n, tol.eps_angle);
  out.vertical_margin = std::min(s1.margin, s2.margin);
  if (s1.value == SectorSign::OnRay || s2.value == SectorSign::OnRay) {
    out.value = Graphical::Inconclusive;
    out.reason = "an endpoint has a vertical tangent";
    return out;
  }
  const int crossings = rays_strictly_between(std::arg(g.z1()), std::arg(g.z2()), vertical, tol.eps_angle);
  if (crossings > 0) {
    out.reason = fmt::format("level curve turns vertical ({} rays of R_(n-1) between the endpoints)", crossings);
    return out;
  }
  out.value = Graphical::Yes;
  return out;
}

}  // namespace dhym
