// Independent reference computations used by the tests. None of these call
// into the library code paths they are used to check.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "dhym/charge.hpp"

namespace oracle {

using dhym::Geometry;
using cplx = std::complex<double>;
using lcplx = std::complex<long double>;
constexpr double pi = std::numbers::pi;

// (x + iy)^n by the binomial theorem in long double.
inline lcplx binomial_pow(long double x, long double y, int n) {
  lcplx sum = 0;
  long double binom = 1;
  lcplx ipow = 1;
  for (int j = 0; j <= n; ++j) {
    sum += binom * std::pow(x, static_cast<long double>(n - j)) * std::pow(y, static_cast<long double>(j)) * ipow;
    binom = binom * (n - j) / (j + 1);
    ipow *= lcplx(0, 1);
  }
  return sum;
}

inline cplx binomial_zeta(const Geometry& g) {
  const lcplx z = binomial_pow(g.a, g.p, g.n) - binomial_pow(1.0L, g.q, g.n);
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// Phi(x, y) = Im(e^{-i theta} (x + iy)^n) through the binomial expansion.
inline double phi_binomial(double x, double y, int n, double theta) {
  const lcplx z = binomial_pow(x, y, n) * std::exp(lcplx(0, -static_cast<long double>(theta)));
  return static_cast<double>(z.imag());
}

// zeta = integral of n z^{n-1} dz along the segment z1 -> z2, so
// arg(zeta) - arg(z2 - z1) lies in the hull of (n-1) arg z over the segment.
// When that hull is narrower than 2 pi it pins down a real-valued angle.
struct SegmentLift {
  bool valid = false;
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;  // the representative of arg(zeta) inside [lo, hi]
};

inline SegmentLift segment_lift(const Geometry& g) {
  SegmentLift out;
  const double phi1 = std::atan2(g.q, 1.0);
  const double phi2 = std::atan2(g.p, g.a);
  const double psi = std::atan2(g.p - g.q, g.a - 1.0);
  out.lo = (g.n - 1) * std::min(phi1, phi2) + psi;
  out.hi = (g.n - 1) * std::max(phi1, phi2) + psi;
  if (out.hi - out.lo >= pi) return out;
  const cplx z = binomial_zeta(g);
  const double principal = std::arg(z);
  const double k = std::round((0.5 * (out.lo + out.hi) - principal) / (2 * pi));
  out.value = principal + 2 * pi * k;
  out.valid = out.value >= out.lo - 1e-9 && out.value <= out.hi + 1e-9;
  return out;
}

// Number of connected pieces of {Phi = c}, c != 0, inside a window, counted
// from the polar parametrisation r(phi) = (c / sin(n phi - theta))^{1/n}
// on each open sector where sin(n phi - theta) has the sign of c.
inline int polar_component_count(int n, double theta, double c, double x0, double x1, double y0, double y1,
                                 int samples_per_sector = 20000) {
  int pieces = 0;
  for (int j = 0; j < 2 * n; ++j) {
    const double lo = (theta + j * pi) / n;
    const double hi = lo + pi / n;
    if ((std::sin(n * (0.5 * (lo + hi)) - theta) > 0) != (c > 0)) continue;
    bool inside_prev = false;
    for (int s = 1; s < samples_per_sector; ++s) {
      const double phi = lo + (hi - lo) * s / samples_per_sector;
      const double r = std::pow(c / std::sin(n * phi - theta), 1.0 / n);
      const double x = r * std::cos(phi), y = r * std::sin(phi);
      const bool inside = x >= x0 && x <= x1 && y >= y0 && y <= y1;
      if (inside && !inside_prev) ++pieces;
      inside_prev = inside;
    }
  }
  return pieces;
}

// Sign of Im(i^{n-k} e^{-i theta} z^k) via the binomial expansion.
inline int stability_sign(cplx z, int k, double theta, int n) {
  const lcplx zk = binomial_pow(z.real(), z.imag(), k);
  lcplx ik = 1;
  for (int j = 0; j < ((n - k) % 4 + 4) % 4; ++j) ik *= lcplx(0, 1);
  const long double v = (ik * std::exp(lcplx(0, -static_cast<long double>(theta))) * zk).imag();
  return (v > 0) - (v < 0);
}

// Random instance generators.
struct Sampler {
  std::mt19937_64 rng;
  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  // n in [n_lo, n_hi], a in (1, 10], p, q in [-10, 10].
  Geometry geometry(int n_lo = 2, int n_hi = 12) {
    Geometry g;
    g.n = integer(n_lo, n_hi);
    g.a = 10.0 - uniform(0.0, 9.0);  // (1, 10]
    if (g.a <= 1.0) g.a = 1.0 + 1e-6;
    g.p = uniform(-10.0, 10.0);
    g.q = uniform(-10.0, 10.0);
    return g;
  }

  // Instances near the scaled class p = lambda a, q = lambda.
  Geometry near_scaled(int n_lo = 2, int n_hi = 12, double spread = 0.3) {
    Geometry g;
    g.n = integer(n_lo, n_hi);
    g.a = uniform(1.05, 6.0);
    const double lambda = std::tan(uniform(-1.4, 1.4));
    g.q = lambda * (1.0 + uniform(-spread, spread));
    g.p = lambda * g.a * (1.0 + uniform(-spread, spread));
    return g;
  }
};

}  // namespace oracle
