#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dhym/lift.hpp"
#include "dhym/stability.hpp"
#include "dhym/trace.hpp"
#include "support/oracles.hpp"

using namespace dhym;
using std::numbers::pi;

namespace {

double max_abs_deviation(const SolutionCurve& c, double slope) {
  double m = 0.0;
  for (const auto& s : c.samples) m = std::max(m, std::abs(s.f - slope * s.x));
  return m;
}

}  // namespace

TEST_CASE("scaled class traces the line f = x") {
  const Geometry g{2, 2, 2, 1};
  const SolutionCurve c = trace_solution(g);
  CHECK(c.linear);
  CHECK(c.samples.size() >= 257);
  CHECK(max_abs_deviation(c, 1.0) <= 1e-8);
  const VerificationReport v = verify_solution(c, g);
  CHECK(v.passed);
  CHECK(v.theta_mean == doctest::Approx(pi / 2));

  TraceOptions forced;
  forced.force_continuation = true;
  const SolutionCurve f = trace_solution(g, {}, forced);
  CHECK_FALSE(f.linear);
  CHECK(f.samples.size() >= 257);
  CHECK(max_abs_deviation(f, 1.0) <= 1e-8);
  CHECK(verify_solution(f, g).passed);
}

TEST_CASE("zero class traces f = 0") {
  const Geometry g{3, 2, 0, 0};
  const SolutionCurve c = trace_solution(g);
  for (const auto& s : c.samples) CHECK(s.f == 0.0);
  const VerificationReport v = verify_solution(c, g);
  CHECK(v.passed);
  CHECK(v.theta_mean == 0.0);
}

TEST_CASE("samples run from 1 to a with f(1) = q") {
  const Geometry g{5, 3.2, 1.1, 0.2};
  REQUIRE(graphical_existence(g).value == Graphical::Yes);
  const SolutionCurve c = trace_solution(g);
  CHECK(c.samples.front().x == 1.0);
  CHECK(c.samples.front().f == g.q);
  CHECK(c.samples.back().x == g.a);
  for (std::size_t i = 1; i < c.samples.size(); ++i) CHECK(c.samples[i].x > c.samples[i - 1].x);
  for (const auto& s : c.samples) CHECK(s.lambda_radial() == doctest::Approx(s.f / s.x));
}

TEST_CASE("tracing refuses non-graphical instances") {
  const Geometry g{4, 2.0, 2.0 * std::tan(pi / 4), 0.0};
  REQUIRE(graphical_existence(g).value == Graphical::No);
  CHECK_THROWS_AS(trace_solution(g), TraceError);
  try {
    trace_solution(g);
  } catch (const TraceError& e) {
    CHECK(e.kind() == TraceError::Kind::NotGraphical);
  }
}

TEST_CASE("forced trace through a vertical tangent fails") {
  oracle::Sampler s(71);
  int found = 0;
  for (int i = 0; i < 20000 && found < 10; ++i) {
    const Geometry g = s.geometry(3, 8);
    if (theta_hat(g).degenerate || same_component(g).kind != ComponentKind::Same) continue;
    if (graphical_existence(g).value != Graphical::No) continue;
    ++found;
    TraceOptions opt;
    opt.require_graphical = false;
    bool reached = false;
    try {
      const SolutionCurve c = trace_solution(g, {}, opt);
      reached = verify_solution(c, g).passed;
    } catch (const TraceError&) {
    }
    CHECK_FALSE(reached);
  }
  CHECK(found == 10);
}

TEST_CASE("perturbed curve fails verification") {
  const Geometry g{4, 3, 1, 0.3};
  SolutionCurve c = trace_solution(g);
  REQUIRE(verify_solution(c, g).passed);
  oracle::Sampler s(72);
  for (auto& sample : c.samples) {
    sample.f += 1e-2 * s.uniform(-1, 1);
    sample.f_prime += 1e-2 * s.uniform(-1, 1);
  }
  const VerificationReport v = verify_solution(c, g);
  CHECK_FALSE(v.passed);
  CHECK(v.residual_max > v.residual_bound);
}

TEST_CASE("ode residual vanishes on exact lines") {
  for (int n = 2; n <= 8; ++n)
    for (double lambda : {-3.0, -0.5, 0.0, 0.7, 4.0}) {
      const double theta = wrap_angle(n * std::atan(lambda));
      CHECK(std::abs(ode_residual(n, theta, 1.7, 1.7 * lambda, lambda)) <= 1e-12 * std::pow(1 + std::abs(lambda), n));
    }
}

TEST_CASE("property: exact solutions of scaled classes") {
  oracle::Sampler s(73);
  for (int i = 0; i < 50; ++i) {
    const int n = s.integer(2, 10);
    const double a = s.uniform(1.1, 6.0);
    const double lambda = std::tan(s.uniform(-1.3, 1.3));
    const Geometry g{n, a, lambda * a, lambda};
    TraceOptions opt;
    opt.require_graphical = false;
    opt.force_continuation = true;
    const SolutionCurve c = trace_solution(g, {}, opt);
    REQUIRE(max_abs_deviation(c, lambda) <= 1e-8 * std::max(1.0, std::abs(lambda * a)));
    for (const auto& smp : c.samples)
      REQUIRE(std::abs(wrap_angle(smp.theta - n * std::atan(lambda))) <= 1e-8);
  }
}

TEST_CASE("property: stable instances trace and verify") {
  oracle::Sampler s(74);
  int stable = 0;
  for (int i = 0; i < 20000 && stable < 300; ++i) {
    const Geometry g = i % 2 ? s.geometry() : s.near_scaled();
    if (theta_hat(g).degenerate || stability_verdict(g).overall != Overall::Stable) continue;
    ++stable;
    const SolutionCurve c = trace_solution(g);
    const VerificationReport v = verify_solution(c, g);
    REQUIRE_MESSAGE(v.passed, "n=", g.n, " a=", g.a, " p=", g.p, " q=", g.q, " ",
                    (v.failures.empty() ? std::string() : v.failures.front()));
    REQUIRE(c.endpoint_error <= 1e-6 * std::max(1.0, std::abs(g.p)));
    REQUIRE(v.theta_oscillation <= 1e-6);
    REQUIRE(v.lift_difference.has_value());
    REQUIRE(*v.lift_difference <= 1e-6);
  }
  CHECK(stable == 300);
}

TEST_CASE("start next to a vertical tangent") {
  // z1 lies 1.7e-5 rad from a ray of R_(n-1): the curve leaves (1, q) with slope near 7000.
  const Geometry g{9, 5.290961756077059, -3.2760109084752318, -0.45543453382009474};
  REQUIRE(stability_verdict(g).overall == Overall::Stable);
  REQUIRE(graphical_existence(g).vertical_margin < 1e-4);
  const SolutionCurve c = trace_solution(g);
  CHECK(std::abs(c.samples.front().f_prime) > 1e3);
  const VerificationReport v = verify_solution(c, g);
  CHECK_MESSAGE(v.passed, (v.failures.empty() ? std::string() : v.failures.front()));
}

TEST_CASE("property: endpoints close to vertical tangents") {
  oracle::Sampler s(75);
  int traced = 0;
  for (int i = 0; i < 400; ++i) {
    const int n = s.integer(3, 10);
    const double a = s.uniform(1.2, 5.0);
    const double theta = s.uniform(-pi, pi);
    // Place z1 a distance delta from a random ray of R_(n-1) and z2 by its level value.
    const RaySet rv = ray_set(n - 1, theta, n);
    const double delta = std::pow(10.0, -s.uniform(2.0, 9.0)) * (i % 2 ? 1 : -1);
    const double phi1 = rv.angles[s.integer(0, n - 2)] + delta;
    if (std::abs(phi1) > 1.4) continue;
    Geometry g{n, a, 0.0, std::tan(phi1)};
    g.p = a * std::tan(phi1 + s.uniform(-0.3, 0.3));
    if (theta_hat(g).degenerate || graphical_existence(g).value != Graphical::Yes) continue;
    ++traced;
    const SolutionCurve c = trace_solution(g);
    const VerificationReport v = verify_solution(c, g);
    REQUIRE_MESSAGE(v.passed, "n=", g.n, " a=", g.a, " p=", g.p, " q=", g.q, " ",
                    (v.failures.empty() ? std::string() : v.failures.front()));
  }
  CHECK(traced > 20);
}

TEST_CASE("property: graphical instances trace") {
  oracle::Sampler s(76);
  int traced = 0;
  for (int i = 0; i < 4000; ++i) {
    const Geometry g = i % 2 ? s.geometry() : s.near_scaled();
    if (theta_hat(g).degenerate || graphical_existence(g).value != Graphical::Yes) continue;
    ++traced;
    const SolutionCurve c = trace_solution(g);
    const VerificationReport v = verify_solution(c, g);
    REQUIRE_MESSAGE(v.passed, "n=", g.n, " a=", g.a, " p=", g.p, " q=", g.q, " ",
                    (v.failures.empty() ? std::string() : v.failures.front()));
  }
  CHECK(traced > 500);
}
