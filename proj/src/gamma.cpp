// crofton-lab: schemes on the geodesic space
#include "crofton/gamma.hpp"

#include <algorithm>
#include <cmath>

#include "crofton/quadrature.hpp"
#include "crofton/rng.hpp"

namespace crofton {

GammaScheme sample_liouville(const ConformalMetric& metric, long n,
                             std::uint64_t seed) {
  if (n < 1) throw Error("sample_liouville: n >= 1 required");
  const double L = metric.boundary_length();
  GammaScheme scheme;
  scheme.kind = GammaScheme::Kind::MonteCarlo;
  scheme.n = n;
  scheme.seed = seed;
  scheme.nodes.reserve(n);
  scheme.weights.assign(n, 2.0 * L / double(n));
  Rng rng(seed);
  for (long i = 0; i < n; ++i) {
    double s = L * rng.uniform();
    double u = rng.uniform(-1.0, 1.0);
    u = std::clamp(u, -(1.0 - kGrazingClamp), 1.0 - kGrazingClamp);
    scheme.nodes.push_back({s, u});
  }
  scheme.total_mass = 2.0 * L;
  return scheme;
}

GammaScheme quadrature_scheme(const ConformalMetric& metric, int n_s, int n_u) {
  if (n_s < 8 || n_u < 8) throw Error("quadrature_scheme: n_s, n_u >= 8 required");
  const double L = metric.boundary_length();
  QuadRule u_rule = composite_gauss_legendre(n_u);
  GammaScheme scheme;
  scheme.kind = GammaScheme::Kind::Quadrature;
  scheme.n_s = n_s;
  scheme.n_u = n_u;
  scheme.nodes.reserve(static_cast<std::size_t>(n_s) * n_u);
  scheme.weights.reserve(static_cast<std::size_t>(n_s) * n_u);
  const double ws = L / double(n_s);
  double mass = 0.0;
  for (int i = 0; i < n_s; ++i) {
    double s = (i + 0.5) * ws;
    for (int j = 0; j < n_u; ++j) {
      double u = std::clamp(u_rule.nodes[j], -(1.0 - kGrazingClamp),
                            1.0 - kGrazingClamp);
      scheme.nodes.push_back({s, u});
      double w = ws * u_rule.weights[j];
      scheme.weights.push_back(w);
      mass += w;
    }
  }
  scheme.total_mass = mass;
  return scheme;
}

}  // namespace crofton
