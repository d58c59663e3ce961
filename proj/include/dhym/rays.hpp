#pragma once

#include <string>
#include <vector>

#include "dhym/charge.hpp"

namespace dhym {

/// The k rays of {Im(i^{n-k} e^{-i theta} z^k) = 0} with argument in
/// [-pi/2, pi/2), stored as angles in strictly decreasing order.
struct RaySet {
  int k = 1;
  int n = 2;
  double theta_hat = 0.0;
  std::vector<double> angles;
};

enum class SectorSign { Positive, Negative, OnRay };

struct SectorVerdict {
  SectorSign value = SectorSign::OnRay;
  double margin = 0.0;  // angular distance from arg z to the nearest zero line
};

struct AlternationResult {
  bool ok = true;
  std::vector<double> interleaving;  // phi_k^1, phi_{k-1}^1, phi_k^2, ..., phi_k^k
  std::string detail;
};

RaySet ray_set(int k, double theta_hat, int n);

/// Sign of Im(i^{n-k} e^{-i theta} z^k). z must be nonzero with arg in [-pi/2, pi/2).
SectorVerdict sector_of(cplx z, int k, double theta_hat, int n, double eps_angle = Tolerances{}.eps_angle);

AlternationResult check_alternation(int k, double theta_hat, int n);

/// Number of rays with angle strictly inside (min(arg1,arg2), max(arg1,arg2)),
/// ignoring rays within eps_angle of either endpoint.
int rays_strictly_between(double arg1, double arg2, const RaySet& rs,
                          double eps_angle = Tolerances{}.eps_angle);

/// Index (0-based, descending order) of the ray nearest to `angle` and its distance.
std::pair<int, double> nearest_ray(double angle, const RaySet& rs);

const char* to_string(SectorSign s);

}  // namespace dhym
