#include "dhym/rays.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace dhym {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kSnap = 1e-13;
constexpr double kOrderTol = 1e-12;

// Offset s in [0, pi) with theta - n*pi/2 = s (mod pi). The lowest ray of
// every R_k sits at -pi/2 + s/k, so s = 0 is the case where all R_k share
// the negative imaginary axis.
double base_offset(double theta_hat, int n) {
  double s = std::fmod(theta_hat - n * kHalfPi, kPi);
  if (s < 0.0) s += kPi;
  if (s >= kPi - kSnap || s < kSnap) s = 0.0;
  return s;
}

}  // namespace

const char* to_string(SectorSign s) {
  switch (s) {
    case SectorSign::Positive: return "positive";
    case SectorSign::Negative: return "negative";
    case SectorSign::OnRay: return "on_ray";
  }
  return "?";
}

RaySet ray_set(int k, double theta_hat, int n) {
  if (n < 1 || k < 1 || k > n)
    throw std::domain_error(fmt::format("ray_set: level k={} outside 1..{}", k, n));
  RaySet rs{k, n, theta_hat, {}};
  const double s = base_offset(theta_hat, n);
  rs.angles.reserve(static_cast<std::size_t>(k));
  for (int j = 1; j <= k; ++j) rs.angles.push_back(-kHalfPi + (s + (k - j) * kPi) / k);
  return rs;
}

SectorVerdict sector_of(cplx z, int k, double theta_hat, int n, double eps_angle) {
  if (z == cplx{0.0, 0.0}) throw std::domain_error("sector_of: z = 0");
  const double phi = principal_arg(z);
  if (phi < -kHalfPi || phi >= kHalfPi)
    throw std::domain_error("sector_of: arg z outside [-pi/2, pi/2)");
  const double s = (n - k) * kHalfPi - theta_hat + k * phi;
  const double to_zero = std::abs(s - kPi * std::round(s / kPi));
  SectorVerdict v;
  v.margin = to_zero / k;
  if (v.margin <= eps_angle) {
    v.value = SectorSign::OnRay;
  } else {
    v.value = std::sin(s) > 0.0 ? SectorSign::Positive : SectorSign::Negative;
  }
  return v;
}

AlternationResult check_alternation(int k, double theta_hat, int n) {
  if (k < 2 || k > n)
    throw std::domain_error(fmt::format("check_alternation: level k={} outside 2..{}", k, n));
  const RaySet upper = ray_set(k, theta_hat, n);
  const RaySet lower = ray_set(k - 1, theta_hat, n);

  AlternationResult out;
  for (int j = 0; j < k - 1; ++j) {
    out.interleaving.push_back(upper.angles[j]);
    out.interleaving.push_back(lower.angles[j]);
  }
  out.interleaving.push_back(upper.angles[k - 1]);

  const auto& seq = out.interleaving;
  if (!(seq.front() < kHalfPi)) {
    out.ok = false;
    out.detail = fmt::format("largest ray {} not below pi/2", seq.front());
    return out;
  }
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const bool last = i + 2 == seq.size();
    const double gap = seq[i] - seq[i + 1];
    if (gap > kOrderTol) continue;
    // Equality is admissible only at the bottom: phi_{k-1}^{k-1} = phi_k^k = -pi/2.
    const bool boundary = last && std::abs(gap) <= kOrderTol &&
                          std::abs(seq[i + 1] + kHalfPi) <= kOrderTol;
    if (!boundary) {
      out.ok = false;
      out.detail = fmt::format("order violated at position {}: {} vs {}", i, seq[i], seq[i + 1]);
      return out;
    }
  }
  if (seq.back() < -kHalfPi - kOrderTol) {
    out.ok = false;
    out.detail = fmt::format("smallest ray {} below -pi/2", seq.back());
  }
  return out;
}

int rays_strictly_between(double arg1, double arg2, const RaySet& rs, double eps_angle) {
  const double lo = std::min(arg1, arg2);
  const double hi = std::max(arg1, arg2);
  int count = 0;
  for (double phi : rs.angles)
    if (phi > lo + eps_angle && phi < hi - eps_angle) ++count;
  return count;
}

std::pair<int, double> nearest_ray(double angle, const RaySet& rs) {
  int best = -1;
  double dist = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < rs.angles.size(); ++j) {
    const double d = std::abs(rs.angles[j] - angle);
    if (d < dist) {
      dist = d;
      best = static_cast<int>(j);
    }
  }
  return {best, dist};
}

}  // namespace dhym
