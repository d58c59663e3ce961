#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dhym/level_set.hpp"
#include "dhym/lift.hpp"

namespace dhym {

struct CurveSample {
  double x = 0.0;
  double f = 0.0;
  double f_prime = 0.0;
  double residual = 0.0;  // Im(e^{-i theta} (x + if)^{n-1} (1 + i f'))
  double theta = 0.0;     // (n-1) arctan(f/x) + arctan(f')

  /// Eigenvalue f/x of the endomorphism, with multiplicity n-1; the last one is f'.
  double lambda_radial() const { return f / x; }
};

struct SolutionCurve {
  int n = 2;
  std::vector<CurveSample> samples;
  double c = 0.0;
  double residual_max = 0.0;
  double residual_l2 = 0.0;
  double endpoint_error = 0.0;
  bool linear = false;  // zero level, f(x) = q x
  long steps_accepted = 0;
  long steps_rejected = 0;
};

struct TraceOptions {
  bool require_graphical = true;    // check graphical_existence first
  bool force_continuation = false;  // trace even when the linear case applies
};

class TraceError : public std::runtime_error {
 public:
  enum class Kind { NotGraphical, VerticalTangent, StepLimitExceeded };
  TraceError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Follows {Phi = c} from (1, q) to x = a: Dormand-Prince 5(4) predictor on the
/// unit tangent field in arclength, Newton projection back onto the level along
/// the gradient, and a final Newton step in y on x = a.
SolutionCurve trace_solution(const Geometry& g, const Tolerances& tol = {}, const TraceOptions& opt = {});

/// ODE residual of the reduced equation at a single point.
double ode_residual(int n, double theta_hat, double x, double f, double f_prime);

struct VerificationReport {
  bool passed = false;
  double residual_max = 0.0;
  double residual_bound = 0.0;
  double level_drift = 0.0;  // max |Phi(x, f) - c| / scale
  double theta_oscillation = 0.0;
  double theta_mean = 0.0;
  bool theta_matches_average = false;  // theta = theta_hat mod 2 pi
  bool theta_in_range = false;         // (-n pi/2, n pi/2)
  std::optional<double> lift_difference;
  double endpoint_error = 0.0;
  bool monotone = false;
  std::vector<std::string> failures;
};

VerificationReport verify_solution(const SolutionCurve& curve, const Geometry& g, const Tolerances& tol = {});

const char* to_string(TraceError::Kind k);

}  // namespace dhym
