#include "dhym/stability.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace dhym {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;

LevelVerdict combine(SectorSign h, SectorSign e) {
  if (h == SectorSign::OnRay || e == SectorSign::OnRay) return LevelVerdict::Inconclusive;
  if (h != e) return LevelVerdict::Unstable;
  return h == SectorSign::Positive ? LevelVerdict::PositiveStable : LevelVerdict::NegativeStable;
}
}  // namespace

const char* to_string(LevelVerdict v) {
  switch (v) {
    case LevelVerdict::PositiveStable: return "positive_stable";
    case LevelVerdict::NegativeStable: return "negative_stable";
    case LevelVerdict::Unstable: return "unstable";
    case LevelVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(Overall v) {
  switch (v) {
    case Overall::Stable: return "stable";
    case Overall::Unstable: return "unstable";
    case Overall::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(BoundStatus v) {
  switch (v) {
    case BoundStatus::Ok: return "ok";
    case BoundStatus::Fail: return "fail";
    case BoundStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(Existence v) {
  switch (v) {
    case Existence::Exists: return "exists";
    case Existence::NotExists: return "not_exists";
    case Existence::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(Route v) {
  switch (v) {
    case Route::Stability: return "stability";
    case Route::LiftedAngle: return "lifted_angle";
    case Route::Degenerate: return "degenerate";
  }
  return "?";
}

StabilityReport stability_verdict(const Geometry& g, const Tolerances& tol) {
  const AverageAngle th = theta_hat(g, tol);
  if (th.degenerate) throw std::domain_error("stability_verdict: zeta vanishes");

  StabilityReport rep;
  bool any_unstable = false;
  bool any_inconclusive = false;
  for (int k = 1; k < g.n; ++k) {
    LevelStability lv;
    lv.k = k;
    lv.sign_h = sector_of(g.z2(), k, th.theta, g.n, tol.eps_angle);
    lv.sign_e = sector_of(g.z1(), k, th.theta, g.n, tol.eps_angle);
    lv.verdict = combine(lv.sign_h.value, lv.sign_e.value);
    any_unstable |= lv.verdict == LevelVerdict::Unstable;
    any_inconclusive |= lv.verdict == LevelVerdict::Inconclusive;
    rep.per_k.push_back(lv);
  }
  rep.overall = any_unstable ? Overall::Unstable
                : any_inconclusive ? Overall::Inconclusive
                                   : Overall::Stable;
  if (const auto L = lift_angle(g, tol)) rep.supercritical = supercritical_check(*L, g.n);
  return rep;
}

bool supercritical_check(const LiftedAngle& L, int n) {
  return L.lifted > (n - 2) * kHalfPi && L.lifted < n * kHalfPi;
}

DivisorBound divisor_angle_bounds(const Geometry& g, const LiftedAngle& L, const Tolerances& tol) {
  DivisorBound b;
  b.theta_h = (g.n - 1) * std::arg(g.z2());
  b.theta_e = (g.n - 1) * std::arg(g.z1());
  const double margin_h = kHalfPi - std::abs(b.theta_h - L.lifted);
  const double margin_e = kHalfPi - std::abs(b.theta_e - L.lifted);
  b.which = margin_h <= margin_e ? "H" : "E";
  b.margin = std::min(margin_h, margin_e);
  if (b.margin > tol.eps_angle) b.status = BoundStatus::Ok;
  else if (b.margin < -tol.eps_angle) b.status = BoundStatus::Fail;
  else b.status = BoundStatus::Inconclusive;
  return b;
}

ExistenceVerdict existence_verdict(const Geometry& g, const Tolerances& tol) {
  ExistenceVerdict ev;
  const DegeneracyResult deg = degeneracy_check(g, tol);
  if (deg.degenerate) {
    ev.value = Existence::Inconclusive;
    ev.route = Route::Degenerate;
    ev.notes.push_back(fmt::format("zeta vanishes: |a+ip| = |1+iq| and arg difference 2 pi m/n with m = {}",
                                   deg.m));
    return ev;
  }

  const StabilityReport stab = stability_verdict(g, tol);
  ev.stability_certifies = stab.overall == Overall::Stable;

  const LiftResult sector = sector_lift(g, tol);
  const LiftResult linear = linear_path_lift(g, tol);
  ev.sector_lift_defined = sector.defined();
  ev.linear_lift_defined = linear.defined();
  ev.sector_margin = sector.sector_margin;
  if (!linear.defined()) ev.notes.push_back("linear path: " + linear.reason);

  ev.route = Route::LiftedAngle;
  if (sector.defined()) {
    ev.lift = sector.lift;
    if (linear.defined()) {
      if (linear.lift->winding == sector.lift->winding) ev.lift->method = LiftMethod::Both;
      else ev.notes.push_back(fmt::format("linear path winds differently (winding {} vs {})",
                                          linear.lift->winding, sector.lift->winding));
    }
    ev.bound = divisor_angle_bounds(g, *ev.lift, tol);
    switch (ev.bound->status) {
      case BoundStatus::Ok: ev.value = Existence::Exists; break;
      case BoundStatus::Fail:
        ev.value = Existence::NotExists;
        ev.notes.push_back(fmt::format("divisor {} violates the lifted angle bound by {:.3e}",
                                       ev.bound->which, -ev.bound->margin));
        break;
      case BoundStatus::Inconclusive:
        ev.value = Existence::Inconclusive;
        ev.notes.push_back(fmt::format("divisor {} sits on the lifted angle bound (margin {:.3e})",
                                       ev.bound->which, ev.bound->margin));
        break;
    }
  } else if (sector.status == LiftStatus::SectorCondition && sector.sector_margin < -tol.eps_angle) {
    // Each component of a nonzero level set lies in one open sector of angle
    // pi/n, so endpoints further apart than pi/n cannot be joined by a graph.
    ev.value = Existence::NotExists;
    ev.notes.push_back("lift undefined: " + sector.reason);
  } else {
    ev.value = Existence::Inconclusive;
    ev.notes.push_back("lift undefined: " + sector.reason);
  }
  if (!ev.lift && linear.defined()) ev.lift = linear.lift;

  if (ev.stability_certifies) {
    if (ev.value == Existence::Inconclusive) {
      ev.value = Existence::Exists;
      ev.route = Route::Stability;
    } else if (ev.value == Existence::NotExists) {
      ev.value = Existence::Inconclusive;
      ev.notes.push_back("anomaly: stable instance rejected by the lifted angle test");
    }
  }
  return ev;
}

}  // namespace dhym
