#include "dhym/charge.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace dhym {

namespace {
constexpr double kPi = std::numbers::pi;
}

void Geometry::validate() const {
  if (!std::isfinite(a) || !std::isfinite(p) || !std::isfinite(q))
    throw std::invalid_argument("geometry: a, p, q must be finite");
  if (n < 2) throw std::invalid_argument(fmt::format("geometry: n must be >= 2 (got {})", n));
  if (!(a > 1.0)) throw std::invalid_argument(fmt::format("geometry: a must be > 1 (got {})", a));
}

std::string SubvarietyClass::label() const {
  switch (kind) {
    case SubvarietyKind::FullSpace: return "X";
    case SubvarietyKind::HyperplanePower: return fmt::format("H^{}", dim);
    case SubvarietyKind::ExceptionalPower: return fmt::format("E^{}", dim);
  }
  return "?";
}

double wrap_angle(double angle) {
  double w = std::fmod(angle + kPi, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  w -= kPi;
  return w >= kPi ? w - 2.0 * kPi : w;
}

double principal_arg(cplx z) {
  const double t = std::arg(z);  // (-pi, pi]
  return t >= kPi ? -kPi : t;
}

cplx polar_pow(cplx z, int k) {
  if (k == 0) return {1.0, 0.0};
  const double r = std::abs(z);
  if (r == 0.0) return {0.0, 0.0};
  return std::polar(std::pow(r, k), k * std::arg(z));
}

cplx i_pow(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

double charge_scale(const Geometry& g) {
  return std::max(std::pow(std::abs(g.z1()), g.n), std::pow(std::abs(g.z2()), g.n));
}

cplx zeta(const Geometry& g) {
  g.validate();
  const cplx z = polar_pow(g.z2(), g.n) - polar_pow(g.z1(), g.n);
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::invalid_argument("geometry: zeta overflows double precision");
  return z;
}

AverageAngle theta_hat(const Geometry& g, const Tolerances& tol) {
  const cplx z = zeta(g);
  AverageAngle out;
  out.r_x = std::abs(z);
  out.theta = principal_arg(z);
  out.degenerate = out.r_x <= tol.eps_zero * charge_scale(g);
  return out;
}

cplx central_charge(const Geometry& g, const SubvarietyClass& v) {
  g.validate();
  switch (v.kind) {
    case SubvarietyKind::FullSpace:
      if (v.dim != g.n) throw std::domain_error("central_charge: X has dimension n");
      return -i_pow(-g.n) * zeta(g);
    case SubvarietyKind::HyperplanePower:
    case SubvarietyKind::ExceptionalPower: {
      if (v.dim < 1 || v.dim > g.n - 1)
        throw std::domain_error(fmt::format("central_charge: dimension {} outside 1..{}", v.dim, g.n - 1));
      const cplx z = v.kind == SubvarietyKind::HyperplanePower ? g.z2() : g.z1();
      return -i_pow(-v.dim) * polar_pow(z, v.dim);
    }
  }
  throw std::domain_error("central_charge: unknown subvariety kind");
}

DegeneracyResult degeneracy_check(const Geometry& g, const Tolerances& tol) {
  const AverageAngle th = theta_hat(g, tol);
  const double r1 = std::abs(g.z1());
  const double r2 = std::abs(g.z2());
  const double delta = std::abs(std::arg(g.z2()) - std::arg(g.z1()));
  const double step = 2.0 * kPi / g.n;

  DegeneracyResult out;
  out.m = static_cast<int>(std::lround(delta / step));
  out.modulus_gap = std::abs(r2 - r1) / std::max(r1, r2);
  out.angle_gap = std::abs(delta - out.m * step);
  out.relative_zeta = th.r_x / charge_scale(g);
  // |zeta|^2 = (r2^n - r1^n)^2 + 4 r1^n r2^n sin^2(n*delta/2): zeta vanishes
  // exactly when both the modulus and the angle conditions hold.
  out.degenerate = th.degenerate;
  return out;
}

ChargeReport charge_report(const Geometry& g, const Tolerances& tol) {
  const AverageAngle th = theta_hat(g, tol);
  ChargeReport rep;
  rep.zeta = zeta(g);
  rep.theta_hat = th.theta;
  rep.r_x = th.r_x;
  rep.scale = charge_scale(g);
  rep.degenerate = th.degenerate;
  for (int k = 1; k < g.n; ++k) {
    for (const auto& v : {SubvarietyClass::hyperplane(k), SubvarietyClass::exceptional(k)})
      rep.charges.push_back({v, central_charge(g, v)});
  }
  rep.charges.push_back({SubvarietyClass::full(g.n), central_charge(g, SubvarietyClass::full(g.n))});
  return rep;
}

}  // namespace dhym
