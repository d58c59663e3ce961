#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dhym/lift.hpp"
#include "dhym/rays.hpp"

namespace dhym {

enum class LevelVerdict { PositiveStable, NegativeStable, Unstable, Inconclusive };
enum class Overall { Stable, Unstable, Inconclusive };

struct LevelStability {
  int k = 1;
  SectorVerdict sign_h;  // z2 = a + ip, the class H^{n-k}
  SectorVerdict sign_e;  // z1 = 1 + iq, the class (-1)^{n-k-1} E^{n-k}
  LevelVerdict verdict = LevelVerdict::Inconclusive;
};

struct StabilityReport {
  std::vector<LevelStability> per_k;  // k = 1 .. n-1
  Overall overall = Overall::Inconclusive;
  std::optional<bool> supercritical;  // unknown when no lift exists
};

/// Sign test of Im(i^{n-k} e^{-i theta} z_l^k) for every k in 1..n-1.
/// Throws std::domain_error for a degenerate instance.
StabilityReport stability_verdict(const Geometry& g, const Tolerances& tol = {});

/// Lifted angle strictly inside ((n-2) pi/2, n pi/2).
bool supercritical_check(const LiftedAngle& L, int n);

enum class BoundStatus { Ok, Fail, Inconclusive };

struct DivisorBound {
  BoundStatus status = BoundStatus::Ok;
  std::string which;          // "H" or "E": the divisor with the smallest margin
  double margin = 0.0;        // min over divisors of pi/2 - |Theta_V - Theta_X|
  double theta_h = 0.0;       // (n-1) arg(a + ip)
  double theta_e = 0.0;       // (n-1) arg(1 + iq)
};

/// Theta_X - pi/2 < (n-1) arg z_l < Theta_X + pi/2 for both divisors.
DivisorBound divisor_angle_bounds(const Geometry& g, const LiftedAngle& L, const Tolerances& tol = {});

enum class Existence { Exists, NotExists, Inconclusive };
enum class Route { Stability, LiftedAngle, Degenerate };

struct ExistenceVerdict {
  Existence value = Existence::Inconclusive;
  Route route = Route::LiftedAngle;
  bool stability_certifies = false;  // per-level stability alone implies existence
  bool sector_lift_defined = false;
  bool linear_lift_defined = false;
  std::optional<LiftedAngle> lift;
  std::optional<DivisorBound> bound;
  double sector_margin = 0.0;
  std::vector<std::string> notes;
};

ExistenceVerdict existence_verdict(const Geometry& g, const Tolerances& tol = {});

const char* to_string(LevelVerdict v);
const char* to_string(Overall v);
const char* to_string(BoundStatus v);
const char* to_string(Existence v);
const char* to_string(Route v);

}  // namespace dhym
