#include "dhym/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dhym {

namespace {

double segment_distance(Point2 p, Point2 a, Point2 b) {
  const double dx = b[0] - a[0];
  const double dy = b[1] - a[1];
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p[0] - (a[0] + t * dx), p[1] - (a[1] + t * dy));
}

}  // namespace

double ContourSet::cell_diagonal() const { return std::hypot(cell_width(), cell_height()); }

std::optional<std::size_t> ContourSet::locate(double x, double y, double max_dist) const {
  std::optional<std::size_t> best;
  double best_d = max_dist;
  const Point2 p{x, y};
  for (std::size_t c = 0; c < lines_.size(); ++c) {
    const auto& pts = lines_[c].points;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double d = segment_distance(p, pts[i], pts[i + 1]);
      if (d <= best_d) {
        best_d = d;
        best = c;
      }
    }
    if (pts.size() == 1 && std::hypot(x - pts[0][0], y - pts[0][1]) <= best_d) best = c;
  }
  return best;
}

bool ContourSet::same_component(Point2 a, Point2 b) const {
  const double reach = 2.0 * cell_diagonal();
  const auto ca = locate(a[0], a[1], reach);
  const auto cb = locate(b[0], b[1], reach);
  return ca && cb && *ca == *cb;
}

ContourSet marching_squares(const std::function<double(double, double)>& field, const Window& window, int nx,
                            int ny) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("marching_squares: empty grid");
  const double hx = (window.x_max - window.x_min) / nx;
  const double hy = (window.y_max - window.y_min) / ny;
  const auto node_x = [&](int i) { return i == nx ? window.x_max : window.x_min + i * hx; };
  const auto node_y = [&](int j) { return j == ny ? window.y_max : window.y_min + j * hy; };

  std::vector<double> v(static_cast<std::size_t>(nx + 1) * (ny + 1));
  const auto at = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(j) * (nx + 1) + i]; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) at(i, j) = field(node_x(i), node_y(j));

  // Edge ids: horizontal edges first, then vertical ones.
  const std::size_t n_horizontal = static_cast<std::size_t>(nx) * (ny + 1);
  const auto h_edge = [&](int i, int j) { return static_cast<std::size_t>(j) * nx + i; };
  const auto v_edge = [&](int i, int j) { return n_horizontal + static_cast<std::size_t>(j) * (nx + 1) + i; };
  const std::size_t n_edges = n_horizontal + static_cast<std::size_t>(nx + 1) * ny;

  std::vector<int> vertex_of(n_edges, -1);
  std::vector<Point2> vertices;
  std::vector<std::array<int, 2>> links;

  const auto crossing = [&](std::size_t edge, double xa, double ya, double fa, double xb, double yb, double fb) {
    int& id = vertex_of[edge];
    if (id < 0) {
      const double t = fa / (fa - fb);
      id = static_cast<int>(vertices.size());
      vertices.push_back({xa + t * (xb - xa), ya + t * (yb - ya)});
      links.push_back({-1, -1});
    }
    return id;
  };
  const auto connect = [&](int a, int b) {
    for (int from : {a, b}) {
      const int to = from == a ? b : a;
      auto& slot = links[static_cast<std::size_t>(from)];
      if (slot[0] < 0) slot[0] = to;
      else slot[1] = to;
    }
  };

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double f00 = at(i, j), f10 = at(i + 1, j), f11 = at(i + 1, j + 1), f01 = at(i, j + 1);
      const bool s00 = f00 >= 0.0, s10 = f10 >= 0.0, s11 = f11 >= 0.0, s01 = f01 >= 0.0;
      const double x0 = node_x(i), x1 = node_x(i + 1), y0 = node_y(j), y1 = node_y(j + 1);
      int bottom = -1, right = -1, top = -1, left = -1;
      if (s00 != s10) bottom = crossing(h_edge(i, j), x0, y0, f00, x1, y0, f10);
      if (s10 != s11) right = crossing(v_edge(i + 1, j), x1, y0, f10, x1, y1, f11);
      if (s01 != s11) top = crossing(h_edge(i, j + 1), x0, y1, f01, x1, y1, f11);
      if (s00 != s01) left = crossing(v_edge(i, j), x0, y0, f00, x0, y1, f01);

      const int count = (bottom >= 0) + (right >= 0) + (top >= 0) + (left >= 0);
      if (count == 2) {
        std::array<int, 2> ends{};
        int m = 0;
        for (int e : {bottom, right, top, left})
          if (e >= 0) ends[static_cast<std::size_t>(m++)] = e;
        connect(ends[0], ends[1]);
      } else if (count == 4) {
        const bool centre = 0.25 * (f00 + f10 + f11 + f01) >= 0.0;
        if (centre == s00) {
          connect(bottom, right);
          connect(top, left);
        } else {
          connect(left, bottom);
          connect(right, top);
        }
      }
    }
  }

  std::vector<Polyline> lines;
  std::vector<bool> seen(vertices.size(), false);
  const auto walk = [&](int start) {
    Polyline line;
    int prev = -1;
    int cur = start;
    while (cur >= 0 && !seen[static_cast<std::size_t>(cur)]) {
      seen[static_cast<std::size_t>(cur)] = true;
      line.points.push_back(vertices[static_cast<std::size_t>(cur)]);
      const auto& l = links[static_cast<std::size_t>(cur)];
      const int next = l[0] != prev ? l[0] : l[1];
      prev = cur;
      cur = next;
    }
    if (cur == start && line.points.size() > 2) {
      line.closed = true;
      line.points.push_back(vertices[static_cast<std::size_t>(start)]);
    }
    lines.push_back(std::move(line));
  };
  // Open chains start at a vertex with a single link; the rest are loops.
  for (std::size_t id = 0; id < vertices.size(); ++id)
    if (!seen[id] && links[id][1] < 0) walk(static_cast<int>(id));
  for (std::size_t id = 0; id < vertices.size(); ++id)
    if (!seen[id]) walk(static_cast<int>(id));
  return ContourSet(window, nx, ny, std::move(lines));
}

ContourSet marching_squares_oracle(const LevelSetContext& ctx, const Window& window, int nx, int ny) {
  if (nx < 64 || ny < 64) throw std::invalid_argument("marching_squares_oracle: grid must be at least 64 x 64");
  const double c = ctx.c;
  return marching_squares([&ctx, c](double x, double y) { return phi(x, y, ctx) - c; }, window, nx, ny);
}

Window default_window(const Geometry& g) {
  const double r = 1.05 * std::max(std::abs(g.z1()), std::abs(g.z2()));
  return {0.0, r, -r, r};
}

bool oracle_same_component(const Geometry& g, int grid, const Tolerances& tol) {
  const LevelSetContext ctx = LevelSetContext::from(g, tol);
  const ContourSet cs = marching_squares_oracle(ctx, default_window(g), grid, 2 * grid);
  return cs.same_component({1.0, g.q}, {g.a, g.p});
}

}  // namespace dhym
