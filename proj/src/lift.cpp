#include "dhym/lift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace dhym {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxStepAngle = kPi / 4.0;

class Refiner {
 public:
  Refiner(const std::function<cplx(double)>& path, const std::function<double(double)>& size, int max_depth)
      : path_(path), size_(size), max_depth_(max_depth) {
    out_.min_modulus = std::numeric_limits<double>::infinity();
  }

  double relative(double t, cplx v) const { return size_ ? std::abs(v) / size_(t) : std::abs(v); }
  double relative(double t) const { return relative(t, path_(t)); }

  void visit(double t, cplx v, double spacing) {
    ++out_.evaluations;
    const double m = relative(t, v);
    if (m < out_.min_modulus) {
      out_.min_modulus = m;
      out_.t_min = t;
      spacing_at_min_ = spacing;
    }
  }

  // Argument increment from v0 = path(t0) to v1 = path(t1).
  double span(double t0, cplx v0, double t1, cplx v1, int depth) {
    const double d = std::arg(v1 * std::conj(v0));
    if (std::abs(d) <= kMaxStepAngle) return d;
    if (depth >= max_depth_) {
      out_.exhausted = true;
      return d;
    }
    const double tm = 0.5 * (t0 + t1);
    const cplx vm = path_(tm);
    visit(tm, vm, 0.5 * (t1 - t0));
    return span(t0, v0, tm, vm, depth + 1) + span(tm, vm, t1, v1, depth + 1);
  }

  // Golden-section polish of min |path| around the smallest sample.
  void polish() {
    double lo = std::max(0.0, out_.t_min - spacing_at_min_);
    double hi = std::min(1.0, out_.t_min + spacing_at_min_);
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - r * (hi - lo);
    double x2 = lo + r * (hi - lo);
    double f1 = relative(x1);
    double f2 = relative(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - r * (hi - lo);
        f1 = relative(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + r * (hi - lo);
        f2 = relative(x2);
      }
    }
    const double t = 0.5 * (lo + hi);
    const double m = relative(t);
    if (m < out_.min_modulus) {
      out_.min_modulus = m;
      out_.t_min = t;
    }
  }

  PathTrack& result() { return out_; }

 private:
  const std::function<cplx(double)>& path_;
  const std::function<double(double)>& size_;
  int max_depth_;
  PathTrack out_;
  double spacing_at_min_ = 0.0;
};

LiftedAngle make_lift(const Geometry& g, double unwrapped, double min_modulus, LiftMethod method,
                      const Tolerances& tol) {
  const AverageAngle th = theta_hat(g, tol);
  LiftedAngle L;
  L.theta_principal = th.theta;
  L.winding = static_cast<int>(std::lround((unwrapped - th.theta) / (2.0 * kPi)));
  L.lifted = th.theta + 2.0 * kPi * L.winding;
  L.method = method;
  L.margin = min_modulus;
  return L;
}

// Both paths are differences of two n-th powers; a hit is measured against the
// larger term at the same t so that cancellation, not magnitude, decides.
LiftResult run_lift(const Geometry& g, const std::function<cplx(double)>& path,
                    const std::function<double(double)>& size, LiftMethod method, const Tolerances& tol) {
  const double threshold = tol.eps_zero;
  const PathTrack tr = track_path(path, threshold, tol.path_steps, tol.max_refine_depth, size);
  LiftResult res;
  if (tr.min_modulus <= threshold) {
    res.status = LiftStatus::OriginHit;
    res.t_hit = tr.t_min;
    res.reason = fmt::format("path passes through the origin at t = {:.9f}", tr.t_min);
  } else if (tr.exhausted) {
    res.status = LiftStatus::TrackFailure;
    res.reason = "argument refinement exhausted";
  } else {
    res.status = LiftStatus::Defined;
    res.lift = make_lift(g, tr.unwrapped, tr.min_modulus, method, tol);
  }
  return res;
}

}  // namespace

const char* to_string(LiftMethod m) {
  switch (m) {
    case LiftMethod::LinearPath: return "linear_path";
    case LiftMethod::SectorPath: return "sector_path";
    case LiftMethod::Both: return "both";
  }
  return "?";
}

const char* to_string(LiftStatus s) {
  switch (s) {
    case LiftStatus::Defined: return "defined";
    case LiftStatus::SectorCondition: return "sector_condition_fails";
    case LiftStatus::OriginHit: return "origin_hit";
    case LiftStatus::TrackFailure: return "track_failure";
  }
  return "?";
}

ArgTrack continuous_arg_track(std::span<const cplx> samples, double min_modulus) {
  if (samples.empty()) throw TrackFailure("continuous_arg_track: no samples");
  ArgTrack out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const cplx s = samples[i];
    if (std::abs(s) <= min_modulus || s == cplx{0.0, 0.0})
      throw TrackFailure(fmt::format("continuous_arg_track: sample {} at the origin", i));
    if (i == 0) {
      out.unwrapped = principal_arg(s);
      continue;
    }
    const double d = std::arg(s * std::conj(samples[i - 1]));
    if (std::abs(d) >= kPi * (1.0 - 1e-12))
      throw TrackFailure(fmt::format("continuous_arg_track: jump of pi at sample {}", i));
    out.unwrapped += d;
  }
  out.principal = principal_arg(samples.back());
  out.winding = static_cast<int>(std::lround((out.unwrapped - out.principal) / (2.0 * kPi)));
  return out;
}

PathTrack track_path(const std::function<cplx(double)>& path, double hit_threshold, int steps, int max_depth,
                     const std::function<double(double)>& size) {
  Refiner ref(path, size, max_depth);
  const double h = 1.0 / steps;
  cplx prev = path(0.0);
  ref.visit(0.0, prev, h);
  double unwrapped = principal_arg(prev);
  for (int i = 1; i <= steps; ++i) {
    const double t = i == steps ? 1.0 : i * h;
    const cplx cur = path(t);
    ref.visit(t, cur, h);
    unwrapped += ref.span(t - h, prev, t, cur, 0);
    prev = cur;
  }
  // A near miss between samples shows up as a small sampled modulus; polish it.
  if (ref.result().min_modulus < 1e3 * hit_threshold || ref.result().exhausted) ref.polish();
  PathTrack out = ref.result();
  out.unwrapped = unwrapped;
  out.origin_hit = out.min_modulus <= hit_threshold;
  return out;
}

cplx linear_path(const Geometry& g, double t) {
  return polar_pow({g.a, t * g.p}, g.n) - polar_pow({1.0, t * g.q}, g.n);
}

LiftResult linear_path_lift(const Geometry& g, const Tolerances& tol) {
  if (theta_hat(g, tol).degenerate) throw std::domain_error("linear_path_lift: zeta vanishes");
  const auto size = [&g](double t) {
    return std::max(std::pow(std::hypot(g.a, t * g.p), g.n), std::pow(std::hypot(1.0, t * g.q), g.n));
  };
  return run_lift(g, [&g](double t) { return linear_path(g, t); }, size, LiftMethod::LinearPath, tol);
}

cplx sector_path(const Geometry& g, double t) {
  const double phi1 = std::arg(g.z1());
  const double phi2 = std::arg(g.z2());
  // a(1 + i tan(t phi2)) and 1 + i tan(t phi1): real parts fixed, arguments t*phi.
  const cplx w2 = std::polar(std::pow(g.a / std::cos(t * phi2), g.n), g.n * t * phi2);
  const cplx w1 = std::polar(std::pow(1.0 / std::cos(t * phi1), g.n), g.n * t * phi1);
  return w2 - w1;
}

LiftResult sector_lift(const Geometry& g, const Tolerances& tol) {
  if (theta_hat(g, tol).degenerate) throw std::domain_error("sector_lift: zeta vanishes");
  const double delta = std::abs(std::arg(g.z2()) - std::arg(g.z1()));
  const double margin = kPi / g.n - delta;
  if (margin <= tol.eps_angle) {
    LiftResult res;
    res.status = LiftStatus::SectorCondition;
    res.sector_margin = margin;
    res.reason = fmt::format("|arg(a+ip) - arg(1+iq)| = {:.12g} is not below pi/n = {:.12g}", delta,
                             kPi / g.n);
    return res;
  }
  const auto size = [&g](double t) {
    return std::max(std::pow(g.a / std::cos(t * std::arg(g.z2())), g.n), std::pow(1.0 / std::cos(t * std::arg(g.z1())), g.n));
  };
  LiftResult res =
      run_lift(g, [&g](double t) { return sector_path(g, t); }, size, LiftMethod::SectorPath, tol);
  res.sector_margin = margin;
  if (res.status == LiftStatus::OriginHit) res.reason = "anomaly: sector path " + res.reason;
  return res;
}

bool lift_exists(const Geometry& g, const Tolerances& tol) {
  if (theta_hat(g, tol).degenerate) return false;
  return sector_lift(g, tol).defined() || linear_path_lift(g, tol).defined();
}

std::optional<LiftedAngle> lift_angle(const Geometry& g, const Tolerances& tol) {
  if (theta_hat(g, tol).degenerate) return std::nullopt;
  const LiftResult sector = sector_lift(g, tol);
  const LiftResult linear = linear_path_lift(g, tol);
  if (sector.defined()) {
    LiftedAngle L = *sector.lift;
    if (linear.defined() && linear.lift->winding == L.winding) L.method = LiftMethod::Both;
    return L;
  }
  if (linear.defined()) return linear.lift;
  return std::nullopt;
}

}  // namespace dhym
