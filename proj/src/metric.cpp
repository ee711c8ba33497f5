// crofton-lab: conformal disc metric
#include "crofton/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crofton/quadrature.hpp"

namespace crofton {

namespace {

// shared 8-point rule for boundary arclength panels
const QuadRule& gl8() {
  static const QuadRule rule = gauss_legendre(8);
  return rule;
}

const QuadRule& gl4() {
  static const QuadRule rule = gauss_legendre(4);
  return rule;
}

}  // namespace

ConformalMetric ConformalMetric::build(std::string_view rho_source, int grid_n) {
  if (grid_n < 64) throw ConfigError("metric.grid_n must be >= 64");
  ConformalMetric m;
  m.rho_ = ExprTree::parse(rho_source);
  m.rho_x_tree_ = m.rho_.derivative('x');
  m.rho_y_tree_ = m.rho_.derivative('y');
  m.crho_ = CompiledExpr(m.rho_);
  m.crho_x_ = CompiledExpr(m.rho_x_tree_);
  m.crho_y_ = CompiledExpr(m.rho_y_tree_);

  // positivity on a polar grid over the closed disc (boundary included)
  m.rho_min_ = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_n; ++i) {
    double r = double(i) / double(grid_n - 1);
    for (int j = 0; j < grid_n; ++j) {
      double phi = 2.0 * M_PI * double(j) / double(grid_n);
      double x = r * std::cos(phi), y = r * std::sin(phi);
      double v;
      try {
        v = m.crho_.eval(x, y);
      } catch (const DomainError& e) {
        throw ConfigError(std::string("conformal scale undefined inside the disc: ") + e.what());
      }
      if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << "conformal scale must be positive on the closed disc; rho(" << x
           << ", " << y << ") = " << v;
        throw ConfigError(os.str());
      }
      m.rho_min_ = std::min(m.rho_min_, v);
    }
  }

  m.build_boundary_table(4 * grid_n);
  return m;
}

void ConformalMetric::build_boundary_table(int panels) {
  table_angle_.resize(panels + 1);
  table_s_.resize(panels + 1);
  double h = 2.0 * M_PI / panels;
  table_angle_[0] = 0.0;
  table_s_[0] = 0.0;
  const QuadRule& rule = gl8();
  double acc = 0.0;
  for (int k = 0; k < panels; ++k) {
    double a = k * h;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      double phi = a + 0.5 * h * (1.0 + rule.nodes[j]);
      acc += 0.5 * h * rule.weights[j] * crho_.eval(std::cos(phi), std::sin(phi));
    }
    table_angle_[k + 1] = (k + 1) * h;
    table_s_[k + 1] = acc;
  }
  total_length_ = acc;
}

double ConformalMetric::arclength_from_angle(double phi) const {
  if (phi <= 0.0) return 0.0;
  if (phi >= 2.0 * M_PI) return total_length_;
  int panels = static_cast<int>(table_angle_.size()) - 1;
  double h = 2.0 * M_PI / panels;
  int k = std::min(static_cast<int>(phi / h), panels - 1);
  double a = table_angle_[k];
  double s = table_s_[k];
  const QuadRule& rule = gl8();
  double w = phi - a;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    double p = a + 0.5 * w * (1.0 + rule.nodes[j]);
    s += 0.5 * w * rule.weights[j] * crho_.eval(std::cos(p), std::sin(p));
  }
  return s;
}

BoundaryFrame ConformalMetric::boundary_point(double s) const {
  if (s < 0.0 || s >= total_length_)
    throw Error("boundary_point: s outside [0, L)");
  // bracketing panel from the monotone table
  auto it = std::upper_bound(table_s_.begin(), table_s_.end(), s);
  int k = std::max(0, static_cast<int>(it - table_s_.begin()) - 1);
  int panels = static_cast<int>(table_angle_.size()) - 1;
  double h = 2.0 * M_PI / panels;
  double lo = table_angle_[k];
  double hi = std::min(2.0 * M_PI, lo + h);
  // Newton with bisection fallback; ds/dphi = rho on the circle
  double phi = lo + (hi - lo) * 0.5;
  for (int it2 = 0; it2 < 60; ++it2) {
    double f = arclength_from_angle(phi) - s;
    if (f > 0.0) hi = phi;
    else lo = phi;
    double d = crho_.eval(std::cos(phi), std::sin(phi));
    double step = f / d;
    double next = phi - step;
    if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
    if (std::abs(next - phi) < 1e-15) {
      phi = next;
      break;
    }
    phi = next;
  }
  BoundaryFrame frame;
  double c = std::cos(phi), sn = std::sin(phi);
  double r = crho_.eval(c, sn);
  frame.point = {c, sn};
  frame.inward_normal = {-c / r, -sn / r};
  frame.tangent = {-sn / r, c / r};
  frame.angle = phi;
  frame.rho = r;
  return frame;
}

double ConformalMetric::area(int n_r, int n_t) const {
  if (n_r < 16 || n_t < 16) throw Error("area: n_r, n_t >= 16 required");
  QuadRule radial = mapped(gauss_legendre(n_r), 0.0, 1.0);
  double sum = 0.0;
  for (int j = 0; j < n_t; ++j) {
    double phi = 2.0 * M_PI * double(j) / double(n_t);
    double c = std::cos(phi), sn = std::sin(phi);
    double inner = 0.0;
    for (int i = 0; i < n_r; ++i) {
      double r = radial.nodes[i];
      double v = crho_.eval(r * c, r * sn);
      inner += radial.weights[i] * v * v * r;
    }
    sum += inner;
  }
  return sum * 2.0 * M_PI / n_t;
}

void ConformalMetric::geodesic_rhs(const double state[4], double deriv[4]) const {
  double x = state[0], y = state[1], vx = state[2], vy = state[3];
  double r = crho_.eval(x, y);
  double phix = crho_x_.eval(x, y) / r;
  double phiy = crho_y_.eval(x, y) / r;
  double d = vx * vx - vy * vy;
  double c = 2.0 * vx * vy;
  deriv[0] = vx;
  deriv[1] = vy;
  deriv[2] = -phix * d - phiy * c;
  deriv[3] = phiy * d - phix * c;
}

double ConformalMetric::polyline_length(std::span<const Vec2> pts) const {
  if (pts.size() < 2) return 0.0;
  const QuadRule& rule = gl4();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Vec2 a = pts[i], b = pts[i + 1];
    double len = dist(a, b);
    if (len == 0.0) continue;
    double seg = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      double t = 0.5 * (1.0 + rule.nodes[j]);
      seg += 0.5 * rule.weights[j] *
             crho_.eval(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
    }
    total += seg * len;
  }
  return total;
}

}  // namespace crofton
