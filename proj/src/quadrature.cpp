// crofton-lab: Gauss-Legendre rules
#include "crofton/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace crofton {

QuadRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev estimate, then Newton on P_n
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

QuadRule composite_gauss_legendre(int n) {
  if (n < 8 || n % 4 != 0) return gauss_legendre(n);
  int panels = n / 4;
  QuadRule panel = gauss_legendre(4);
  QuadRule rule;
  rule.nodes.reserve(n);
  rule.weights.reserve(n);
  double h = 2.0 / panels;
  for (int p = 0; p < panels; ++p) {
    double a = -1.0 + p * h;
    double mid = a + 0.5 * h;
    for (int j = 0; j < 4; ++j) {
      rule.nodes.push_back(mid + 0.5 * h * panel.nodes[j]);
      rule.weights.push_back(0.5 * h * panel.weights[j]);
    }
  }
  return rule;
}

QuadRule mapped(const QuadRule& rule, double a, double b) {
  QuadRule out;
  out.nodes.reserve(rule.nodes.size());
  out.weights.reserve(rule.weights.size());
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    out.nodes.push_back(mid + half * rule.nodes[i]);
    out.weights.push_back(half * rule.weights[i]);
  }
  return out;
}

}  // namespace crofton
