#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "dhym/report.hpp"

namespace dhym {

namespace {

using json = nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, std::string_view where) {
  if (!obj.is_object()) throw ConfigError(fmt::format("{}: expected an object", where));
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw ConfigError(fmt::format("{}: unknown key '{}'", where, key));
}

double number(const json& obj, const char* key, std::string_view where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(fmt::format("{}: missing '{}'", where, key));
  if (!it->is_number()) throw ConfigError(fmt::format("{}: '{}' must be a number", where, key));
  return it->get<double>();
}

int integer(const json& obj, const char* key, std::string_view where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(fmt::format("{}: missing '{}'", where, key));
  if (!it->is_number_integer()) throw ConfigError(fmt::format("{}: '{}' must be an integer", where, key));
  return it->get<int>();
}

template <typename T>
void optional_field(const json& obj, const char* key, T& out, std::string_view where) {
  if (!obj.contains(key)) return;
  if constexpr (std::is_integral_v<T>) out = static_cast<T>(integer(obj, key, where));
  else out = number(obj, key, where);
}

Tolerances parse_tolerances(const json& t) {
  reject_unknown(t,
                 {"eps_zero", "eps_angle", "tol_level", "tol_endpoint", "tol_angle", "tol_residual", "path_steps",
                  "max_refine_depth", "initial_step", "min_step", "max_steps"},
                 "tolerances");
  Tolerances tol;
  optional_field(t, "eps_zero", tol.eps_zero, "tolerances");
  optional_field(t, "eps_angle", tol.eps_angle, "tolerances");
  optional_field(t, "tol_level", tol.tol_level, "tolerances");
  optional_field(t, "tol_endpoint", tol.tol_endpoint, "tolerances");
  optional_field(t, "tol_angle", tol.tol_angle, "tolerances");
  optional_field(t, "tol_residual", tol.tol_residual, "tolerances");
  optional_field(t, "path_steps", tol.path_steps, "tolerances");
  optional_field(t, "max_refine_depth", tol.max_refine_depth, "tolerances");
  optional_field(t, "initial_step", tol.initial_step, "tolerances");
  optional_field(t, "min_step", tol.min_step, "tolerances");
  optional_field(t, "max_steps", tol.max_steps, "tolerances");
  for (double v : {tol.eps_zero, tol.eps_angle, tol.tol_level, tol.tol_endpoint, tol.tol_angle, tol.tol_residual,
                   tol.initial_step, tol.min_step})
    if (!(v > 0.0)) throw ConfigError("tolerances: values must be positive");
  if (tol.path_steps < 1 || tol.max_refine_depth < 0 || tol.max_steps < 1)
    throw ConfigError("tolerances: step counts must be positive");
  return tol;
}

SweepSpec parse_sweep(const json& s) {
  reject_unknown(s, {"p_min", "p_max", "p_count", "q_min", "q_max", "q_count"}, "sweep");
  SweepSpec spec;
  spec.p_min = number(s, "p_min", "sweep");
  spec.p_max = number(s, "p_max", "sweep");
  spec.p_count = integer(s, "p_count", "sweep");
  spec.q_min = number(s, "q_min", "sweep");
  spec.q_max = number(s, "q_max", "sweep");
  spec.q_count = integer(s, "q_count", "sweep");
  if (spec.p_count < 1 || spec.q_count < 1) throw ConfigError("sweep: counts must be >= 1");
  if (spec.p_max < spec.p_min || spec.q_max < spec.q_min) throw ConfigError("sweep: empty range");
  return spec;
}

FigureSpec parse_figure(const json& f) {
  reject_unknown(f, {"window", "samples", "width", "overlays"}, "figure");
  FigureSpec spec;
  if (f.contains("window")) {
    const json& w = f["window"];
    if (!w.is_array() || w.size() != 4 || !std::all_of(w.begin(), w.end(), [](const json& v) { return v.is_number(); }))
      throw ConfigError("figure: 'window' must be [x_min, x_max, y_min, y_max]");
    Window win{w[0].get<double>(), w[1].get<double>(), w[2].get<double>(), w[3].get<double>()};
    if (!(win.x_max > win.x_min) || !(win.y_max > win.y_min)) throw ConfigError("figure: empty window");
    spec.window = win;
  }
  optional_field(f, "samples", spec.samples, "figure");
  optional_field(f, "width", spec.width, "figure");
  if (spec.samples < 64) throw ConfigError("figure: 'samples' must be >= 64");
  if (spec.width < 16) throw ConfigError("figure: 'width' must be >= 16");
  if (f.contains("overlays")) {
    const json& o = f["overlays"];
    if (!o.is_array()) throw ConfigError("figure: 'overlays' must be an array");
    spec.level_set = spec.rays_n = spec.rays_n_minus_1 = spec.curve = spec.endpoints = false;
    for (const json& item : o) {
      if (!item.is_string()) throw ConfigError("figure: overlay names must be strings");
      const auto name = item.get<std::string>();
      if (name == "level_set") spec.level_set = true;
      else if (name == "rays_n") spec.rays_n = true;
      else if (name == "rays_n_minus_1") spec.rays_n_minus_1 = true;
      else if (name == "curve") spec.curve = true;
      else if (name == "endpoints") spec.endpoints = true;
      else throw ConfigError(fmt::format("figure: unknown overlay '{}'", name));
    }
  }
  return spec;
}

}  // namespace

RunConfig parse_config(const nlohmann::json& doc) {
  reject_unknown(doc, {"n", "a", "p", "q", "tolerances", "sweep", "figure"}, "config");
  RunConfig cfg;
  cfg.geometry.n = integer(doc, "n", "config");
  cfg.geometry.a = number(doc, "a", "config");
  cfg.geometry.p = number(doc, "p", "config");
  cfg.geometry.q = number(doc, "q", "config");
  try {
    cfg.geometry.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (doc.contains("tolerances")) cfg.tol = parse_tolerances(doc["tolerances"]);
  if (doc.contains("sweep")) cfg.sweep = parse_sweep(doc["sweep"]);
  if (doc.contains("figure")) cfg.figure = parse_figure(doc["figure"]);
  return cfg;
}

RunConfig parse_config_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(fmt::format("config: malformed JSON ({})", e.what()));
  }
  return parse_config(doc);
}

}  // namespace dhym
