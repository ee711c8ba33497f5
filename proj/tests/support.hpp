// crofton-lab tests: independent oracles and helpers
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "crofton/expr.hpp"
#include "crofton/geom.hpp"
#include "crofton/rng.hpp"

namespace testsupport {

// Central finite differences; the derivative oracle, deliberately ignorant
// of the symbolic differentiator.
inline double fd_partial(const crofton::ExprTree& tree, char var, double x,
                         double y, double h = 1e-5) {
  if (var == 'x')
    return (tree.eval(x + h, y) - tree.eval(x - h, y)) / (2.0 * h);
  return (tree.eval(x, y + h) - tree.eval(x, y - h)) / (2.0 * h);
}

// Great circle P(t) = A cos t + B sin t on the unit sphere pushed through
// stereographic projection from the north pole: the exact hemisphere
// geodesic with entry boundary angle phi0 and entry angle beta from the
// inward normal. t in (0, pi) stays in the southern hemisphere, i.e. the
// open disc.
struct SphereCurve {
  double ax, ay, az;
  double bx, by, bz;

  SphereCurve(double phi0, double beta) {
    ax = std::cos(phi0);
    ay = std::sin(phi0);
    az = 0.0;
    bx = -std::sin(phi0) * std::sin(beta);
    by = std::cos(phi0) * std::sin(beta);
    bz = -std::cos(beta);
  }

  // plane position, velocity and acceleration at arclength t
  void at(double t, crofton::Vec2& pos, crofton::Vec2& vel,
          crofton::Vec2& acc) const {
    double ct = std::cos(t), st = std::sin(t);
    double X = ax * ct + bx * st, Y = ay * ct + by * st, Z = az * ct + bz * st;
    double Xp = -ax * st + bx * ct, Yp = -ay * st + by * ct, Zp = -az * st + bz * ct;
    // P'' = -P on the unit sphere
    double Xpp = -X, Ypp = -Y, Zpp = -Z;
    double D = 1.0 - Z;
    pos = {X / D, Y / D};
    vel = {Xp / D + X * Zp / (D * D), Yp / D + Y * Zp / (D * D)};
    auto acc1 = [&](double W, double Wp, double Wpp) {
      return Wpp / D + 2.0 * Wp * Zp / (D * D) + W * Zpp / (D * D) +
             2.0 * W * Zp * Zp / (D * D * D);
    };
    acc = {acc1(X, Xp, Xpp), acc1(Y, Yp, Ypp)};
  }
};

// Two-sample Kolmogorov-Smirnov: returns the asymptotic p-value.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) ++i;
    else ++j;
    double fa = double(i) / a.size(), fb = double(j) / b.size();
    d = std::max(d, std::abs(fa - fb));
  }
  double n = double(a.size()), m = double(b.size());
  double ne = std::sqrt(n * m / (n + m));
  double lambda = (ne + 0.12 + 0.11 / ne) * d;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) {
    double term = 2.0 * (k % 2 == 1 ? 1.0 : -1.0) *
                  std::exp(-2.0 * k * k * lambda * lambda);
    p += term;
    if (std::abs(term) < 1e-12) break;
  }
  return std::clamp(p, 0.0, 1.0);
}

// Random expression source strings whose value stays defined near the unit
// disc: log/sqrt arguments are shifted squares.
class RandomExprGen {
 public:
  explicit RandomExprGen(std::uint64_t seed) : rng_(seed) {}

  std::string generate(int depth = 3) { return gen(depth); }

 private:
  std::string gen(int depth) {
    if (depth <= 0) return leaf();
    switch (pick(7)) {
      case 0: return "(" + gen(depth - 1) + "+" + gen(depth - 1) + ")";
      case 1: return "(" + gen(depth - 1) + "-" + gen(depth - 1) + ")";
      case 2: return "(" + gen(depth - 1) + "*" + gen(depth - 1) + ")";
      case 3: return "sin(" + gen(depth - 1) + ")";
      case 4: return "cos(" + gen(depth - 1) + ")";
      case 5: return "((" + gen(depth - 1) + ")^2)";
      case 6: {
        // bounded-denominator division and shifted log/sqrt
        switch (pick(3)) {
          case 0: return "(" + gen(depth - 1) + "/(2+(" + gen(depth - 1) + ")^2))";
          case 1: return "log(1.5+(" + gen(depth - 1) + ")^2)";
          default: return "sqrt(0.5+(" + gen(depth - 1) + ")^2)";
        }
      }
    }
    return leaf();
  }

  std::string leaf() {
    switch (pick(4)) {
      case 0: return "x";
      case 1: return "y";
      case 2: return std::to_string(0.1 + 1.9 * rng_.uniform());
      default: return "exp(" + std::to_string(-0.5 + rng_.uniform()) + "*x)";
    }
  }

  int pick(int n) { return int(rng_.uniform() * n); }

  crofton::Rng rng_;
};

}  // namespace testsupport
