#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "dhym/charge.hpp"

namespace dhym {

enum class LiftMethod { LinearPath, SectorPath, Both };

/// A real representative of the average angle: lifted = theta_principal + 2 pi winding.
struct LiftedAngle {
  double theta_principal = 0.0;
  int winding = 0;
  double lifted = 0.0;
  LiftMethod method = LiftMethod::SectorPath;
  double margin = 0.0;  // min |gamma(t)| relative to its larger term along the path
};

enum class LiftStatus { Defined, SectorCondition, OriginHit, TrackFailure };

struct LiftResult {
  LiftStatus status = LiftStatus::TrackFailure;
  std::optional<LiftedAngle> lift;
  double t_hit = 0.0;          // where the path met the origin (OriginHit)
  double sector_margin = 0.0;  // pi/n - |arg z2 - arg z1| (sector path only)
  std::string reason;

  bool defined() const { return status == LiftStatus::Defined; }
};

struct ArgTrack {
  double unwrapped = 0.0;
  double principal = 0.0;
  int winding = 0;
};

class TrackFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unwraps the argument along a sampled path, starting from the principal
/// argument of the first sample. Throws TrackFailure when a sample is within
/// min_modulus of the origin or two consecutive arguments differ by pi or more.
ArgTrack continuous_arg_track(std::span<const cplx> samples, double min_modulus = 0.0);

struct PathTrack {
  bool origin_hit = false;
  bool exhausted = false;  // bisection depth ran out
  double t_min = 0.0;
  double min_modulus = 0.0;  // min |path(t)| / size(t)
  double unwrapped = 0.0;
  long evaluations = 0;
};

/// Tracks arg(path(t)) on [0, 1] from `steps` uniform samples, bisecting any
/// interval whose argument change exceeds pi/4. The origin is hit when
/// |path(t)| <= hit_threshold * size(t); an empty `size` means size = 1.
PathTrack track_path(const std::function<cplx(double)>& path, double hit_threshold, int steps, int max_depth,
                     const std::function<double(double)>& size = {});

/// gamma(t) = (a + itp)^n - (1 + itq)^n.
cplx linear_path(const Geometry& g, double t);
LiftResult linear_path_lift(const Geometry& g, const Tolerances& tol = {});

/// Lift along the deformation that keeps real parts fixed and scales both
/// arguments by t. Defined only when |arg(a+ip) - arg(1+iq)| < pi/n.
cplx sector_path(const Geometry& g, double t);
LiftResult sector_lift(const Geometry& g, const Tolerances& tol = {});

/// True when some construction (sector first, then the linear path) lifts theta.
bool lift_exists(const Geometry& g, const Tolerances& tol = {});

/// Preferred lift: sector path, tagged Both when the linear path agrees;
/// falls back to the linear path when the sector condition fails.
std::optional<LiftedAngle> lift_angle(const Geometry& g, const Tolerances& tol = {});

const char* to_string(LiftMethod m);
const char* to_string(LiftStatus s);

}  // namespace dhym
