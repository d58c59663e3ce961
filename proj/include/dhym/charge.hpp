#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "dhym/tolerances.hpp"

namespace dhym {

using cplx = std::complex<double>;

/// Problem instance on the blowup of P^n at a point:
/// [omega] = a[H] - [E] (Kahler class) and [alpha] = p[H] - q[E].
struct Geometry {
  int n = 2;
  double a = 2.0;
  double p = 0.0;
  double q = 0.0;

  /// Throws std::invalid_argument unless n >= 2, a > 1 and all fields are finite.
  void validate() const;

  cplx z1() const { return {1.0, q}; }  // exceptional side, 1 + iq
  cplx z2() const { return {a, p}; }    // hyperplane side, a + ip
};

enum class SubvarietyKind { FullSpace, HyperplanePower, ExceptionalPower };

/// A subvariety class of dimension `dim`: X itself, H^{n-dim}, or the
/// effective multiple (-1)^{n-dim-1} E^{n-dim}.
struct SubvarietyClass {
  SubvarietyKind kind = SubvarietyKind::FullSpace;
  int dim = 0;

  static SubvarietyClass full(int n) { return {SubvarietyKind::FullSpace, n}; }
  static SubvarietyClass hyperplane(int k) { return {SubvarietyKind::HyperplanePower, k}; }
  static SubvarietyClass exceptional(int k) { return {SubvarietyKind::ExceptionalPower, k}; }

  std::string label() const;
};

struct ChargeEntry {
  SubvarietyClass subvariety;
  cplx charge;
};

struct ChargeReport {
  cplx zeta;
  double theta_hat = 0.0;  // principal value in [-pi, pi)
  double r_x = 0.0;
  double scale = 1.0;
  std::vector<ChargeEntry> charges;
  bool degenerate = false;
};

struct AverageAngle {
  double theta = 0.0;  // [-pi, pi)
  double r_x = 0.0;
  bool degenerate = false;
};

struct DegeneracyResult {
  bool degenerate = false;
  int m = 0;                  // witnessing integer when degenerate
  double modulus_gap = 0.0;   // ||z2| - |z1|| / max(|z1|, |z2|)
  double angle_gap = 0.0;     // distance of |arg z2 - arg z1| to 2 pi m / n
  double relative_zeta = 0.0; // |zeta| / scale
};

/// Principal argument in [-pi, pi).
double principal_arg(cplx z);

/// Wraps any real angle into [-pi, pi).
double wrap_angle(double angle);

/// z^k through the polar form.
cplx polar_pow(cplx z, int k);

/// i^m for any integer m, exactly.
cplx i_pow(int m);

/// max(|z1|^n, |z2|^n).
double charge_scale(const Geometry& g);

cplx zeta(const Geometry& g);
AverageAngle theta_hat(const Geometry& g, const Tolerances& tol = {});
cplx central_charge(const Geometry& g, const SubvarietyClass& v);
DegeneracyResult degeneracy_check(const Geometry& g, const Tolerances& tol = {});
ChargeReport charge_report(const Geometry& g, const Tolerances& tol = {});

}  // namespace dhym
