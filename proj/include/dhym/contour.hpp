#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "dhym/level_set.hpp"

namespace dhym {

struct Window {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = -1.0;
  double y_max = 1.0;

  bool contains(double x, double y) const {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }
};

using Point2 = std::array<double, 2>;

struct Polyline {
  std::vector<Point2> points;
  bool closed = false;
};

/// Zero set of a sampled field, chained into polylines. Each polyline is one
/// connected component inside the window.
class ContourSet {
 public:
  ContourSet(Window window, int nx, int ny, std::vector<Polyline> lines)
      : window_(window), nx_(nx), ny_(ny), lines_(std::move(lines)) {}

  const Window& window() const { return window_; }
  const std::vector<Polyline>& components() const { return lines_; }
  std::size_t component_count() const { return lines_.size(); }
  double cell_width() const { return (window_.x_max - window_.x_min) / nx_; }
  double cell_height() const { return (window_.y_max - window_.y_min) / ny_; }
  double cell_diagonal() const;

  /// Component whose polyline passes within max_dist of (x, y); the nearest wins.
  std::optional<std::size_t> locate(double x, double y, double max_dist) const;

  /// Both points within two cell diagonals of the same component.
  bool same_component(Point2 a, Point2 b) const;

 private:
  Window window_;
  int nx_;
  int ny_;
  std::vector<Polyline> lines_;
};

/// Marching squares over an nx-by-ny cell grid; saddle cells are resolved by
/// the sign of the cell-centre average.
ContourSet marching_squares(const std::function<double(double, double)>& field, const Window& window, int nx,
                            int ny);

/// Components of {Phi = c} in the window.
ContourSet marching_squares_oracle(const LevelSetContext& ctx, const Window& window, int nx, int ny);

/// [0, R] x [-R, R] with R = 1.05 max(|z1|, |z2|); contains the whole arc between the endpoints.
Window default_window(const Geometry& g);

/// Oracle verdict on whether (1, q) and (a, p) share a component.
bool oracle_same_component(const Geometry& g, int grid, const Tolerances& tol = {});

}  // namespace dhym
