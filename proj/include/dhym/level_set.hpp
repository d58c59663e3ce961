#pragma once

#include <string>

#include "dhym/rays.hpp"

namespace dhym {

/// Level value shared by the two boundary points of the reduced equation.
struct LevelSetContext {
  int n = 2;
  double theta_hat = 0.0;
  double c = 0.0;
  double scale = 1.0;  // max(1, |z1|^n, |z2|^n)

  static LevelSetContext from(const Geometry& g, const Tolerances& tol = {});
};

struct PhiGradient {
  double phi_x = 0.0;
  double phi_y = 0.0;
};

/// Phi(x, y) = Im(e^{-i theta} (x + iy)^n).
double phi(double x, double y, const LevelSetContext& ctx);
PhiGradient phi_gradient(double x, double y, const LevelSetContext& ctx);

enum class ComponentKind { Same, Different, OnZeroLevel };

struct ComponentResult {
  ComponentKind kind = ComponentKind::Different;
  int rays_between = 0;   // rays of R_n strictly between arg z1 and arg z2
  bool same_ray = false;  // zero level only
  double c = 0.0;
};

ComponentResult same_component(const Geometry& g, const Tolerances& tol = {});

enum class Graphical { Yes, No, Inconclusive };

struct GraphicalResult {
  Graphical value = Graphical::No;
  std::string reason;
  double vertical_margin = 0.0;  // min angular distance of an endpoint to R_{n-1}
};

/// Whether the arc of {Phi = c} joining (1, q) to (a, p) is a graph over [1, a].
GraphicalResult graphical_existence(const Geometry& g, const Tolerances& tol = {});

const char* to_string(ComponentKind k);
const char* to_string(Graphical g);

}  // namespace dhym
