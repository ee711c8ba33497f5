// crofton-lab: identity and inequality estimators
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crofton/gamma.hpp"
#include "crofton/geodesic.hpp"
#include "crofton/intersect.hpp"
#include "crofton/metric.hpp"

namespace crofton {

struct SchemeInfo {
  std::string kind;  // "quadrature", "montecarlo", "closed"
  int n_s = 0;
  int n_u = 0;
  long n = 0;
  std::uint64_t seed = 0;
  // U-statistic standard error of the Monte Carlo side (lhs for the pair
  // integral, rhs for the deficit); 0 for quadrature estimators.
  double mc_stderr = 0.0;
};

struct IdentityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_err = 0.0;  // |lhs - rhs|
  double rel_err = 0.0;  // abs_err / max(|lhs|, |rhs|, 1e-300)
  SchemeInfo scheme;
  double elapsed_seconds = 0.0;
};

struct InequalityReport {
  IdentityReport base;  // lhs = L^2, rhs = 2 pi Area
  bool satisfied = false;
  double hypothesis_fraction = 0.0;  // pairs with >= 2 interior intersections
  // A violated inequality with hypothesis_fraction ~ 0 points at a bug in
  // this artifact, not at the mathematics.
  bool implementation_alarm = false;
};

struct DeficitReport {
  IdentityReport base;  // lhs = L^2 - 2 pi A, rhs from non-intersecting pairs
  double nonintersecting_fraction = 0.0;
  double hypothesis_fraction = 0.0;
  bool validity_warning = false;  // hypothesis_fraction >= 1e-3
};

struct CharacterizationReport {
  std::vector<double> length_bin_edges;  // size bins + 1
  std::vector<long long> length_bin_counts;
  double length_mean = 0.0;
  double length_stddev = 0.0;
  std::map<long, long long> pair_count_histogram;
  double fraction_zero = 0.0;
  double fraction_one = 0.0;
  double fraction_many = 0.0;
  SchemeInfo scheme;
  double elapsed_seconds = 0.0;
};

IdentityReport make_report(std::string name, double lhs, double rhs,
                           SchemeInfo scheme, double elapsed_seconds);

// Vol(Gamma) = 2 L(boundary): scheme mass against the boundary length.
IdentityReport verify_vol_gamma(const ConformalMetric& metric,
                                const GammaScheme& scheme);

// Integral of L(gamma) over Gamma = 2 pi Area.
IdentityReport verify_santalo(const ConformalMetric& metric,
                              const GammaScheme& scheme,
                              const SolverOptions& opts = {},
                              bool serial = false);

// Integral of i(tau, gamma) over Gamma = 4 L(tau); counts interior plus
// boundary intersections; tau must lie in the closed disc.
IdentityReport verify_crofton(const ConformalMetric& metric,
                              const Polyline& tau, const GammaScheme& scheme,
                              const SolverOptions& opts = {});

// Pair integral of i(gamma1, gamma2) = 8 pi Area, by Monte Carlo over
// Liouville samples; scheme.mc_stderr carries the U-statistic error.
IdentityReport verify_proposition(const ConformalMetric& metric, long n,
                                  std::uint64_t seed,
                                  const SolverOptions& opts = {});

// L^2 >= 2 pi Area with the empirical at-most-one-intersection check.
InequalityReport verify_inequality(const ConformalMetric& metric, long n,
                                   std::uint64_t seed,
                                   const SolverOptions& opts = {});

// L^2 - 2 pi A against (1/4) (2L)^2 * fraction of non-intersecting pairs.
DeficitReport deficit_report(const ConformalMetric& metric, long n,
                             std::uint64_t seed,
                             const SolverOptions& opts = {});

// Length and pair-count statistics; the hemisphere signature is
// length_stddev/length_mean <= 1e-3 with fraction_one >= 0.999.
CharacterizationReport characterize(const ConformalMetric& metric, long n,
                                    std::uint64_t seed,
                                    const SolverOptions& opts = {},
                                    int length_bins = 32);

}  // namespace crofton
