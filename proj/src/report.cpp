#include "dhym/report.hpp"

#include <cmath>
#include <limits>
#include <thread>

#include <fmt/format.h>

namespace dhym {

namespace {

ordered_json complex_json(cplx z) { return ordered_json{{"re", z.real()}, {"im", z.imag()}}; }

ordered_json lift_json(const LiftedAngle& L) {
  return ordered_json{{"theta_principal", L.theta_principal},
                      {"winding", L.winding},
                      {"lifted", L.lifted},
                      {"method", to_string(L.method)},
                      {"margin", L.margin}};
}

ordered_json lift_result_json(const LiftResult& r) {
  ordered_json j{{"status", to_string(r.status)}};
  if (r.lift) j["lift"] = lift_json(*r.lift);
  if (r.status == LiftStatus::OriginHit) j["t_hit"] = r.t_hit;
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

ordered_json sector_json(const SectorVerdict& v) {
  return ordered_json{{"sign", to_string(v.value)}, {"margin", v.margin}};
}

}  // namespace

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

AnalysisReport analyze(const Geometry& g, const Tolerances& tol) {
  AnalysisReport rep;
  rep.geometry = g;
  rep.charges = charge_report(g, tol);
  rep.degeneracy = degeneracy_check(g, tol);
  rep.existence = existence_verdict(g, tol);
  if (rep.degeneracy.degenerate) return rep;
  rep.stability = stability_verdict(g, tol);
  rep.sector = sector_lift(g, tol);
  rep.linear = linear_path_lift(g, tol);
  rep.lift = rep.existence.lift;
  rep.component = same_component(g, tol);
  rep.graphical = graphical_existence(g, tol);
  return rep;
}

ordered_json to_json(const AnalysisReport& rep) {
  const Geometry& g = rep.geometry;
  ordered_json j;
  j["geometry"] = ordered_json{{"n", g.n}, {"a", g.a}, {"p", g.p}, {"q", g.q}};

  ordered_json charges = ordered_json::array();
  for (const auto& e : rep.charges.charges)
    charges.push_back(ordered_json{{"subvariety", e.subvariety.label()}, {"dim", e.subvariety.dim},
                                   {"charge", complex_json(e.charge)}});
  j["charge"] = ordered_json{{"zeta", complex_json(rep.charges.zeta)},
                             {"theta_hat", rep.charges.theta_hat},
                             {"r_x", rep.charges.r_x},
                             {"scale", rep.charges.scale},
                             {"degenerate", rep.charges.degenerate},
                             {"central_charges", charges}};
  ordered_json deg{{"degenerate", rep.degeneracy.degenerate},
                   {"modulus_gap", rep.degeneracy.modulus_gap},
                   {"angle_gap", rep.degeneracy.angle_gap},
                   {"relative_zeta", rep.degeneracy.relative_zeta}};
  if (rep.degeneracy.degenerate) deg["m"] = rep.degeneracy.m;
  j["degeneracy"] = deg;

  if (rep.stability) {
    ordered_json levels = ordered_json::array();
    for (const auto& lv : rep.stability->per_k)
      levels.push_back(ordered_json{{"k", lv.k},
                                    {"sign_h", sector_json(lv.sign_h)},
                                    {"sign_e", sector_json(lv.sign_e)},
                                    {"verdict", to_string(lv.verdict)}});
    ordered_json st{{"overall", to_string(rep.stability->overall)}, {"per_k", levels}};
    st["supercritical"] = rep.stability->supercritical ? ordered_json(*rep.stability->supercritical)
                                                       : ordered_json("unknown");
    j["stability"] = st;
  }
  if (rep.sector || rep.linear) {
    ordered_json lift;
    if (rep.sector) {
      lift["sector_path"] = lift_result_json(*rep.sector);
      lift["sector_path"]["sector_margin"] = rep.sector->sector_margin;
    }
    if (rep.linear) lift["linear_path"] = lift_result_json(*rep.linear);
    lift["selected"] = rep.lift ? lift_json(*rep.lift) : ordered_json(nullptr);
    j["lift"] = lift;
  }

  const ExistenceVerdict& ev = rep.existence;
  ordered_json ex{{"verdict", to_string(ev.value)},
                  {"route", to_string(ev.route)},
                  {"stability_certifies", ev.stability_certifies},
                  {"sector_lift_defined", ev.sector_lift_defined},
                  {"linear_lift_defined", ev.linear_lift_defined}};
  if (ev.bound)
    ex["divisor_bounds"] = ordered_json{{"status", to_string(ev.bound->status)},
                                        {"which", ev.bound->which},
                                        {"margin", ev.bound->margin},
                                        {"theta_h", ev.bound->theta_h},
                                        {"theta_e", ev.bound->theta_e}};
  ex["notes"] = ev.notes;
  j["existence"] = ex;

  if (rep.component)
    j["component"] = ordered_json{{"kind", to_string(rep.component->kind)},
                                  {"rays_between", rep.component->rays_between},
                                  {"same_ray", rep.component->same_ray},
                                  {"c", rep.component->c}};
  if (rep.graphical)
    j["graphical"] = ordered_json{{"value", to_string(rep.graphical->value)},
                                  {"reason", rep.graphical->reason},
                                  {"vertical_margin", rep.graphical->vertical_margin}};
  return j;
}

int exit_code(const ExistenceVerdict& v) {
  if (v.route == Route::Degenerate) return 2;
  switch (v.value) {
    case Existence::Exists: return 0;
    case Existence::NotExists: return 1;
    case Existence::Inconclusive: return 2;
  }
  return 2;
}

void write_curve_csv(std::ostream& os, const SolutionCurve& curve) {
  os << "x,f,f_prime,residual,theta\n";
  for (const auto& s : curve.samples)
    os << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", s.x, s.f, s.f_prime, s.residual, s.theta);
}

ordered_json solve_summary(const SolutionCurve& curve, const VerificationReport& check) {
  ordered_json j{{"samples", curve.samples.size()},
                 {"linear", curve.linear},
                 {"c", curve.c},
                 {"residual_max", curve.residual_max},
                 {"residual_l2", curve.residual_l2},
                 {"residual_bound", check.residual_bound},
                 {"endpoint_error", curve.endpoint_error},
                 {"level_drift", check.level_drift},
                 {"theta", check.theta_mean},
                 {"theta_oscillation", check.theta_oscillation},
                 {"steps_accepted", curve.steps_accepted},
                 {"steps_rejected", curve.steps_rejected},
                 {"verified", check.passed}};
  if (check.lift_difference) j["lift_difference"] = *check.lift_difference;
  j["failures"] = check.failures;
  return j;
}

std::vector<SweepRow> run_sweep(const Geometry& base, const SweepSpec& spec, const Tolerances& tol, unsigned threads) {
  const std::size_t total = static_cast<std::size_t>(spec.p_count) * static_cast<std::size_t>(spec.q_count);
  std::vector<SweepRow> rows(total);
  const auto coord = [](double lo, double hi, int count, int i) {
    return count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  };

  const auto evaluate_row = [&](std::size_t idx) {
    SweepRow& row = rows[idx];
    Geometry g = base;
    g.p = row.p = coord(spec.p_min, spec.p_max, spec.p_count, static_cast<int>(idx / spec.q_count));
    g.q = row.q = coord(spec.q_min, spec.q_max, spec.q_count, static_cast<int>(idx % spec.q_count));
    row.divisor_margin = std::numeric_limits<double>::quiet_NaN();
    row.sector_margin = std::numeric_limits<double>::quiet_NaN();
    row.stability_margin = std::numeric_limits<double>::quiet_NaN();
    const ExistenceVerdict ev = existence_verdict(g, tol);
    row.existence = to_string(ev.value);
    if (ev.route == Route::Degenerate) {
      row.stability = "degenerate";
      return;
    }
    const StabilityReport st = stability_verdict(g, tol);
    row.stability = to_string(st.overall);
    row.stability_margin = std::numeric_limits<double>::infinity();
    for (const auto& lv : st.per_k)
      row.stability_margin = std::min({row.stability_margin, lv.sign_h.margin, lv.sign_e.margin});
    row.lift_defined = ev.sector_lift_defined || ev.linear_lift_defined;
    row.sector_margin = ev.sector_margin;
    if (ev.bound) row.divisor_margin = ev.bound->margin;
  };
  const auto evaluate = [&](std::size_t idx) {
    try {
      evaluate_row(idx);
    } catch (const std::exception&) {
      rows[idx].stability = rows[idx].existence = "error";
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(total, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t idx = t; idx < total; idx += threads) evaluate(idx);
    });
  for (auto& th : pool) th.join();
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "p,q,stability,existence,lift_defined,stability_margin,sector_margin,divisor_margin\n";
  const auto num = [](double v) { return std::isfinite(v) ? format_double(v) : std::string(std::isnan(v) ? "nan" : "inf"); };
  for (const auto& r : rows)
    os << fmt::format("{},{},{},{},{},{},{},{}\n", format_double(r.p), format_double(r.q), r.stability, r.existence,
                      r.lift_defined ? "true" : "false", num(r.stability_margin), num(r.sector_margin),
                      num(r.divisor_margin));
}

}  // namespace dhym
