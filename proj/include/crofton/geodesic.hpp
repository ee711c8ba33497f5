// crofton-lab: boundary-to-boundary geodesic shooting
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "crofton/gamma_node.hpp"
#include "crofton/geom.hpp"
#include "crofton/metric.hpp"

namespace crofton {

enum class ShotStatus { Exited, MaxLengthExceeded, NumericalFailure };

struct SolverOptions {
  double tol = 1e-9;                // local error tolerance of the RK pair
  double max_length = 0.0;          // g-length guard; 0 = 100 * L(boundary)/pi
  double max_segment_length = 1e-2; // coordinate gap between stored vertices
};

struct GeodesicPath {
  std::vector<Vec2> vertices;   // coordinate points, first on the circle
  std::vector<Vec2> tangents;   // coordinate velocities, unit g-norm
  std::vector<double> times;    // g-arclength at each vertex
  double length = 0.0;          // g-length (the ODE's independent variable)
  double entry_s = 0.0;
  double entry_theta = 0.0;
  double exit_s = 0.0;          // valid when status == Exited
  double exit_theta = 0.0;
  ShotStatus status = ShotStatus::NumericalFailure;
};

// Shoots the unit-speed geodesic entering at boundary arclength s with
// signed angle theta from the inward normal (positive toward the
// counterclockwise boundary tangent). Integration is an adaptive
// Dormand-Prince 5(4) pair in the arclength parameter; the boundary exit is
// localized to 1e-12 in the final step parameter.
GeodesicPath shoot(const ConformalMetric& metric, double s, double theta,
                   const SolverOptions& opts = {});

// Boundary chart of the exit: (s_exit, theta_exit) with the same sign
// convention as entry, taken against the reversed final tangent, so shooting
// from (s_exit, theta_exit) retraces the geodesic backwards.
std::pair<double, double> exit_parameters(const ConformalMetric& metric,
                                          const GeodesicPath& path);

// Batch shooting over gamma nodes (theta = asin(u)). The OpenMP version
// partitions nodes across threads and stores results by node index, so the
// output is independent of the worker count; the serial version is the
// reference the tests compare against.
std::vector<GeodesicPath> shoot_batch(const ConformalMetric& metric,
                                      std::span<const GammaNode> nodes,
                                      const SolverOptions& opts = {});
std::vector<GeodesicPath> shoot_batch_serial(const ConformalMetric& metric,
                                             std::span<const GammaNode> nodes,
                                             const SolverOptions& opts = {});

// Effective guard length: opts.max_length, or the documented default when 0.
double effective_max_length(const ConformalMetric& metric,
                            const SolverOptions& opts);

}  // namespace crofton
