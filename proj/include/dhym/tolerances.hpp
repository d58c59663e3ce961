#pragma once

namespace dhym {

// Numerical thresholds shared by every module. Values are relative unless
// noted; "scale" is max(|1+iq|^n, |a+ip|^n) for the instance at hand.
struct Tolerances {
  double eps_zero = 1e-9;       // |zeta| relative to scale; |gamma(t)| relative to its larger term
  double eps_angle = 1e-8;      // radians; on-ray band
  double tol_level = 1e-10;     // |Phi - c| after projection, relative to scale
  double tol_endpoint = 1e-6;   // |f(a) - p| / max(1, |p|)
  double tol_angle = 1e-6;      // oscillation of the pointwise angle (radians)
  double tol_residual = 1e-6;   // ODE residual / (1 + max|z|^(n-1))
  int path_steps = 1024;        // initial samples on lift paths
  int max_refine_depth = 48;    // bisection depth on lift paths
  double initial_step = 1.0 / 256.0;  // largest arclength step, fraction of |(a, p) - (1, q)|
  double min_step = 1e-9;             // fraction of (a - 1)
  long max_steps = 2'000'000;
};

}  // namespace dhym
