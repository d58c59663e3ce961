#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dhym/lift.hpp"
#include "dhym/stability.hpp"
#include "support/oracles.hpp"

using namespace dhym;
using std::numbers::pi;

TEST_CASE("stability on worked instances") {
  const StabilityReport s = stability_verdict({2, 2, 2, 1});
  CHECK(s.overall == Overall::Stable);
  REQUIRE(s.per_k.size() == 1);
  CHECK(s.per_k[0].verdict == LevelVerdict::PositiveStable);
  CHECK(s.supercritical == true);

  const StabilityReport z = stability_verdict({3, 2, 0, 0});
  CHECK(z.overall == Overall::Inconclusive);
  CHECK(z.per_k[0].sign_h.value == SectorSign::OnRay);
  CHECK(z.per_k[0].sign_e.value == SectorSign::OnRay);
}

TEST_CASE("scaled classes are stable with the predicted signs") {
  oracle::Sampler s(41);
  for (int i = 0; i < 500; ++i) {
    const int n = s.integer(2, 12);
    const double a = s.uniform(1.1, 8.0);
    const double lambda = s.uniform(0.05, 5.0) * (i % 2 ? 1 : -1);
    const Geometry g{n, a, lambda * a, lambda};
    const StabilityReport r = stability_verdict(g);
    bool generic = true;
    for (int k = 1; k < n; ++k) {
      const double ref = std::sin((n - k) * (pi / 2 - std::atan(lambda)));
      if (std::abs(ref) < 1e-6) {
        generic = false;
        continue;
      }
      const LevelVerdict want = ref > 0 ? LevelVerdict::PositiveStable : LevelVerdict::NegativeStable;
      REQUIRE(r.per_k[k - 1].verdict == want);
    }
    if (generic) REQUIRE(r.overall == Overall::Stable);
  }
}

TEST_CASE("supercritical interval") {
  LiftedAngle L;
  L.lifted = pi / 2;
  CHECK(supercritical_check(L, 2));
  L.lifted = 0.0;
  CHECK_FALSE(supercritical_check(L, 3));
  L.lifted = 3 * pi / 2 - 1e-12;
  CHECK(supercritical_check(L, 3));
  L.lifted = 3 * pi / 2;
  CHECK_FALSE(supercritical_check(L, 3));
  L.lifted = pi / 2;
  CHECK_FALSE(supercritical_check(L, 3));
}

TEST_CASE("divisor bounds on worked instances") {
  const Geometry g{2, 2, 2, 1};
  const DivisorBound b = divisor_angle_bounds(g, *lift_angle(g));
  CHECK(b.status == BoundStatus::Ok);
  CHECK(b.theta_h == doctest::Approx(pi / 4));
  CHECK(b.theta_e == doctest::Approx(pi / 4));

  const Geometry z{3, 2, 0, 0};
  const DivisorBound bz = divisor_angle_bounds(z, *lift_angle(z));
  CHECK(bz.status == BoundStatus::Ok);
  CHECK(bz.theta_h == 0.0);
  CHECK(bz.margin == doctest::Approx(pi / 2));
}

TEST_CASE("divisor bounds fail when the arguments are too far apart") {
  oracle::Sampler s(42);
  int checked = 0;
  for (int i = 0; i < 5000; ++i) {
    const Geometry g = s.geometry(3, 10);
    if (theta_hat(g).degenerate) continue;
    const double gap = std::abs(std::atan2(g.p, g.a) - std::atan2(g.q, 1.0));
    if (gap <= pi / (g.n - 1) + 1e-6) continue;
    const auto L = lift_angle(g);
    if (!L) continue;
    ++checked;
    REQUIRE(divisor_angle_bounds(g, *L).status == BoundStatus::Fail);
  }
  CHECK(checked > 50);
}

TEST_CASE("existence on worked instances") {
  const ExistenceVerdict e = existence_verdict({2, 2, 2, 1});
  CHECK(e.value == Existence::Exists);
  CHECK(e.stability_certifies);
  CHECK(e.sector_lift_defined);

  const ExistenceVerdict z = existence_verdict({3, 2, 0, 0});
  CHECK(z.value == Existence::Exists);
  CHECK(z.route == Route::LiftedAngle);
  CHECK_FALSE(z.stability_certifies);

  const double th = 2 * pi / 3 - std::atan(2.0);
  const Geometry d{3, std::sqrt(5.0) * std::cos(th), -std::sqrt(5.0) * std::sin(th), 2.0};
  const ExistenceVerdict dv = existence_verdict(d);
  CHECK(dv.route == Route::Degenerate);
  CHECK(dv.value == Existence::Inconclusive);

  const Geometry sc{3, d.a, 2 * d.p, 2 * d.q};
  const ExistenceVerdict sv = existence_verdict(sc);
  CHECK(sv.value == Existence::NotExists);
  CHECK_FALSE(sv.sector_lift_defined);
  bool mentions_lift = false;
  for (const auto& note : sv.notes) mentions_lift |= note.find("lift undefined") != std::string::npos;
  CHECK(mentions_lift);
}

TEST_CASE("stability inconclusive near a ray") {
  // Put z1 exactly on the k = 1 ray of a scaled class and nudge within the band.
  const Geometry g{3, 2.0, 0.0, 0.0};
  const StabilityReport r = stability_verdict({g.n, g.a, 1e-12, 1e-12});
  CHECK(r.overall == Overall::Inconclusive);
}

TEST_CASE("property: verdict structure and per-level sign consistency") {
  oracle::Sampler s(43);
  for (int i = 0; i < 5000; ++i) {
    const Geometry g = i % 2 ? s.geometry() : s.near_scaled();
    const AverageAngle t = theta_hat(g);
    if (t.degenerate) continue;
    const StabilityReport r = stability_verdict(g);
    REQUIRE(r.per_k.size() == static_cast<std::size_t>(g.n - 1));
    bool any_unstable = false, any_inconclusive = false;
    for (const auto& lv : r.per_k) {
      const int sh = oracle::stability_sign(g.z2(), lv.k, t.theta, g.n);
      const int se = oracle::stability_sign(g.z1(), lv.k, t.theta, g.n);
      if (lv.sign_h.value != SectorSign::OnRay) REQUIRE((lv.sign_h.value == SectorSign::Positive ? 1 : -1) == sh);
      if (lv.sign_e.value != SectorSign::OnRay) REQUIRE((lv.sign_e.value == SectorSign::Positive ? 1 : -1) == se);
      any_unstable |= lv.verdict == LevelVerdict::Unstable;
      any_inconclusive |= lv.verdict == LevelVerdict::Inconclusive;
    }
    const Overall want = any_unstable ? Overall::Unstable : any_inconclusive ? Overall::Inconclusive : Overall::Stable;
    REQUIRE(r.overall == want);
  }
}

TEST_CASE("property: stable implies exists") {
  oracle::Sampler s(44);
  int stable = 0;
  for (int i = 0; i < 20000 && stable < 1000; ++i) {
    const Geometry g = i % 2 ? s.geometry() : s.near_scaled();
    if (theta_hat(g).degenerate || stability_verdict(g).overall != Overall::Stable) continue;
    ++stable;
    REQUIRE(existence_verdict(g).value == Existence::Exists);
  }
  CHECK(stable >= 1000);
}

TEST_CASE("property: supercritical and stable means positive at every level") {
  oracle::Sampler s(45);
  int seen = 0;
  for (int i = 0; i < 40000 && seen < 300; ++i) {
    const Geometry g = i % 2 ? s.geometry() : s.near_scaled();
    if (theta_hat(g).degenerate) continue;
    const StabilityReport r = stability_verdict(g);
    if (r.overall != Overall::Stable || r.supercritical != true) continue;
    ++seen;
    for (const auto& lv : r.per_k) REQUIRE(lv.verdict == LevelVerdict::PositiveStable);
  }
  CHECK(seen >= 300);
}
