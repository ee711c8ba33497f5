// crofton-lab: the measure space of oriented boundary-to-boundary geodesics
#pragma once

#include <cstdint>
#include <vector>

#include "crofton/gamma_node.hpp"
#include "crofton/metric.hpp"

namespace crofton {

// Discrete scheme on the chart [0, L) x (-1, 1) carrying the measure du ds.
// Weights are positive and sum to total_mass = 2 L(boundary).
struct GammaScheme {
  enum class Kind { MonteCarlo, Quadrature };

  std::vector<GammaNode> nodes;
  std::vector<double> weights;
  Kind kind = Kind::MonteCarlo;
  int n_s = 0;          // Quadrature only
  int n_u = 0;
  long n = 0;           // MonteCarlo only
  std::uint64_t seed = 0;
  double total_mass = 0.0;
};

// n i.i.d. uniform nodes on [0, L) x (-1, 1), each of weight 2L/n.
// Uniform (s, u) sampling is exactly Liouville sampling of geodesics.
// Deterministic for a given seed.
GammaScheme sample_liouville(const ConformalMetric& metric, long n,
                             std::uint64_t seed);

// Tensor grid: midpoint rule in s (the integrands are periodic in s),
// composite Gauss-Legendre in u. total_mass = 2L by construction.
GammaScheme quadrature_scheme(const ConformalMetric& metric, int n_s, int n_u);

}  // namespace crofton
