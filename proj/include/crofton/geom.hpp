// crofton-lab: small planar geometry helpers
#pragma once

#include <cmath>
#include <vector>

namespace crofton {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double c, Vec2 a) { return {c * a.x, c * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

using Polyline = std::vector<Vec2>;

// Closed circle of coordinate radius r, n segments, first vertex repeated at
// the end so the polyline closes up.
inline Polyline circle_polyline(double r, int n, Vec2 center = {0.0, 0.0}) {
  Polyline pts;
  pts.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    double a = 2.0 * M_PI * double(i % n) / double(n);
    pts.push_back({center.x + r * std::cos(a), center.y + r * std::sin(a)});
  }
  return pts;
}

}  // namespace crofton
