#include <algorithm>
#include <cmath>
#include <utility>
#include <sstream>

#include <fmt/format.h>

#include "dhym/report.hpp"

namespace dhym {

namespace {

class Canvas {
 public:
  Canvas(const Window& w, int width)
      : w_(w), width_(width), height_(static_cast<int>(std::lround(width * (w.y_max - w.y_min) / (w.x_max - w.x_min)))) {}

  double px(double x) const { return (x - w_.x_min) / (w_.x_max - w_.x_min) * width_; }
  double py(double y) const { return (w_.y_max - y) / (w_.y_max - w_.y_min) * height_; }
  std::string point(double x, double y) const { return fmt::format("{:.3f},{:.3f}", px(x), py(y)); }
  int width() const { return width_; }
  int height() const { return height_; }

 private:
  Window w_;
  int width_;
  int height_;
};

// Full line through the origin at angle phi, long enough to leave the window.
void line_through_origin(std::ostringstream& os, const Canvas& cv, const Window& w, double phi, const char* cls) {
  const double reach = 2.0 * (std::abs(w.x_min) + std::abs(w.x_max) + std::abs(w.y_min) + std::abs(w.y_max));
  const double dx = reach * std::cos(phi);
  const double dy = reach * std::sin(phi);
  os << fmt::format("  <line class=\"{}\" x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\"/>\n", cls, cv.px(-dx),
                    cv.py(-dy), cv.px(dx), cv.py(dy));
}

}  // namespace

std::string render_figure(const Geometry& g, const FigureSpec& spec, const Tolerances& tol) {
  const Window w = spec.window.value_or(default_window(g));
  if (!w.contains(1.0, g.q) || !w.contains(g.a, g.p))
    throw ConfigError("figure: window must contain both endpoints (1, q) and (a, p)");
  const LevelSetContext ctx = LevelSetContext::from(g, tol);
  const Canvas cv(w, spec.width);

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
      cv.width(), cv.height(), cv.width(), cv.height());
  os << fmt::format("  <title>Phi = c for n = {}, a = {}, p = {}, q = {}</title>\n", g.n, format_double(g.a),
                    format_double(g.p), format_double(g.q));
  os << "  <style>\n"
        "    .level {fill:none;stroke:#1f4e9c;stroke-width:1.5}\n"
        "    .ray-n {stroke:#555;stroke-width:1;stroke-dasharray:1,4}\n"
        "    .ray-n1 {stroke:#b03030;stroke-width:1;stroke-dasharray:8,4}\n"
        "    .solution {fill:none;stroke:#1a9c3a;stroke-width:3;stroke-opacity:0.6}\n"
        "    .endpoint {fill:#000}\n"
        "  </style>\n";
  os << fmt::format("  <rect width=\"{}\" height=\"{}\" fill=\"#fff\"/>\n", cv.width(), cv.height());

  if (spec.rays_n)
    for (double phi_n : ray_set(g.n, ctx.theta_hat, g.n).angles) line_through_origin(os, cv, w, phi_n, "ray-n");
  if (spec.rays_n_minus_1)
    for (double phi_v : ray_set(g.n - 1, ctx.theta_hat, g.n).angles) line_through_origin(os, cv, w, phi_v, "ray-n1");

  if (spec.level_set) {
    const int nx = spec.samples;
    const int ny = std::max(64, static_cast<int>(std::lround(nx * (w.y_max - w.y_min) / (w.x_max - w.x_min))));
    const ContourSet cs = marching_squares_oracle(ctx, w, nx, ny);
    for (const auto& line : cs.components()) {
      os << "  <polyline class=\"level\" points=\"";
      for (std::size_t i = 0; i < line.points.size(); ++i)
        os << (i ? " " : "") << cv.point(line.points[i][0], line.points[i][1]);
      os << "\"/>\n";
    }
  }

  if (spec.curve && graphical_existence(g, tol).value == Graphical::Yes) {
    try {
      const SolutionCurve curve = trace_solution(g, tol);
      os << "  <polyline class=\"solution\" points=\"";
      for (std::size_t i = 0; i < curve.samples.size(); ++i)
        os << (i ? " " : "") << cv.point(curve.samples[i].x, curve.samples[i].f);
      os << "\"/>\n";
    } catch (const TraceError&) {
      // The figure still shows the level set; `solve` reports the failure.
    }
  }

  if (spec.endpoints) {
    for (const auto& [x, y] : {std::pair{1.0, g.q}, std::pair{g.a, g.p}})
      os << fmt::format("  <circle class=\"endpoint\" cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"4\"/>\n", cv.px(x), cv.py(y));
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace dhym
