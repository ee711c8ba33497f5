// crofton-lab: conformal metric rho(x,y)^2 (dx^2 + dy^2) on the closed unit disc
#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "crofton/expr.hpp"
#include "crofton/geom.hpp"

namespace crofton {

// Boundary frame at g-arclength s: point on the unit circle, inward normal
// and counterclockwise tangent, both of unit g-norm (coordinate norm 1/rho).
struct BoundaryFrame {
  Vec2 point;
  Vec2 inward_normal;
  Vec2 tangent;
  double angle = 0.0;  // coordinate angle of the point
  double rho = 0.0;    // conformal scale there
};

class ConformalMetric {
 public:
  // Parses rho, validates positivity on a grid_n x grid_n polar grid over
  // the closed disc, and builds the boundary arclength table with
  // 4*grid_n panels. Throws ConfigError when rho fails positivity, ParseError
  // on bad source text.
  static ConformalMetric build(std::string_view rho_source, int grid_n = 256);

  double rho(double x, double y) const { return crho_.eval(x, y); }
  double rho_x(double x, double y) const { return crho_x_.eval(x, y); }
  double rho_y(double x, double y) const { return crho_y_.eval(x, y); }

  // g-area of the disc by Gauss-Legendre (radial) x uniform (angular)
  // quadrature of rho^2 r dr dphi.
  double area(int n_r = 256, int n_t = 512) const;

  double boundary_length() const { return total_length_; }

  // Inverts the cumulative boundary arclength table; s in [0, L).
  BoundaryFrame boundary_point(double s) const;

  // Cumulative g-arclength of the boundary from angle 0 to phi in [0, 2pi].
  double arclength_from_angle(double phi) const;

  // Unit-speed geodesic equation: state (x, y, vx, vy) -> (vx, vy, ax, ay).
  void geodesic_rhs(const double state[4], double deriv[4]) const;

  // g-length of a straight-segment polyline (per-segment Gauss-Legendre).
  double polyline_length(std::span<const Vec2> pts) const;

  double rho_min() const { return rho_min_; }
  const ExprTree& rho_tree() const { return rho_; }
  const ExprTree& rho_x_tree() const { return rho_x_tree_; }
  const ExprTree& rho_y_tree() const { return rho_y_tree_; }

 private:
  ConformalMetric() = default;
  void build_boundary_table(int panels);

  ExprTree rho_, rho_x_tree_, rho_y_tree_;
  CompiledExpr crho_, crho_x_, crho_y_;
  double rho_min_ = 0.0;

  // strictly increasing cumulative arclength at uniformly spaced angles
  std::vector<double> table_angle_;
  std::vector<double> table_s_;
  double total_length_ = 0.0;
};

}  // namespace crofton
