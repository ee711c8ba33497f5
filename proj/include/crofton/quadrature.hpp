// crofton-lab: Gauss-Legendre nodes and weights
#pragma once

#include <vector>

namespace crofton {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on (-1, 1). Nodes by Newton iteration on the
// Legendre recurrence; accurate to machine precision for n up to a few
// thousand.
QuadRule gauss_legendre(int n);

// Composite rule on (-1, 1): n/4 uniform panels of 4-point Gauss-Legendre
// when n is a multiple of 4 and n >= 8, a single n-point rule otherwise.
// The panels keep discontinuous integrands (intersection counts) from
// polluting the whole interval.
QuadRule composite_gauss_legendre(int n);

// Rule mapped to the interval [a, b].
QuadRule mapped(const QuadRule& rule, double a, double b);

}  // namespace crofton
