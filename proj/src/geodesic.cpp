// crofton-lab: adaptive Dormand-Prince shooting with boundary exit localization
#include "crofton/geodesic.hpp"

#include <cmath>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace crofton {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double A21 = 1.0 / 5.0;
constexpr double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0;
constexpr double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0;
constexpr double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0,
                 A53 = 64448.0 / 6561.0, A54 = -212.0 / 729.0;
constexpr double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0,
                 A63 = 46732.0 / 5247.0, A64 = 49.0 / 176.0,
                 A65 = -5103.0 / 18656.0;
constexpr double B1 = 35.0 / 384.0, B3 = 500.0 / 1113.0, B4 = 125.0 / 192.0,
                 B5 = -2187.0 / 6784.0, B6 = 11.0 / 84.0;
// y5 - y4 coefficients
constexpr double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0, E4 = 71.0 / 1920.0,
                 E5 = -17253.0 / 339200.0, E6 = 22.0 / 525.0, E7 = -1.0 / 40.0;

struct StepResult {
  double ynew[4];
  double k7[4];    // f(ynew), reusable as k1 of the next step (FSAL)
  double err_norm; // scaled RMS error, accept when <= 1
};

void axpy(double out[4], const double y[4], double h, const double* c,
          const double* k1, const double* k2 = nullptr,
          const double* k3 = nullptr, const double* k4 = nullptr,
          const double* k5 = nullptr, const double* k6 = nullptr) {
  for (int i = 0; i < 4; ++i) {
    double acc = c[0] * k1[i];
    if (k2) acc += c[1] * k2[i];
    if (k3) acc += c[2] * k3[i];
    if (k4) acc += c[3] * k4[i];
    if (k5) acc += c[4] * k5[i];
    if (k6) acc += c[5] * k6[i];
    out[i] = y[i] + h * acc;
  }
}

StepResult dp_step(const ConformalMetric& m, const double y[4], double h,
                   const double k1[4], double tol) {
  double k2[4], k3[4], k4[4], k5[4], k6[4], tmp[4];
  StepResult r;

  const double c2[6] = {A21, 0, 0, 0, 0, 0};
  axpy(tmp, y, h, c2, k1);
  m.geodesic_rhs(tmp, k2);

  const double c3[6] = {A31, A32, 0, 0, 0, 0};
  axpy(tmp, y, h, c3, k1, k2);
  m.geodesic_rhs(tmp, k3);

  const double c4[6] = {A41, A42, A43, 0, 0, 0};
  axpy(tmp, y, h, c4, k1, k2, k3);
  m.geodesic_rhs(tmp, k4);

  const double c5[6] = {A51, A52, A53, A54, 0, 0};
  axpy(tmp, y, h, c5, k1, k2, k3, k4);
  m.geodesic_rhs(tmp, k5);

  const double c6[6] = {A61, A62, A63, A64, A65, 0};
  axpy(tmp, y, h, c6, k1, k2, k3, k4, k5);
  m.geodesic_rhs(tmp, k6);

  for (int i = 0; i < 4; ++i)
    r.ynew[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] +
                            B5 * k5[i] + B6 * k6[i]);
  m.geodesic_rhs(r.ynew, r.k7);

  double err = 0.0;
  for (int i = 0; i < 4; ++i) {
    double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] +
                    E6 * k6[i] + E7 * r.k7[i]);
    double scale = tol + tol * std::max(std::abs(y[i]), std::abs(r.ynew[i]));
    double q = e / scale;
    err += q * q;
  }
  r.err_norm = std::sqrt(err / 4.0);
  return r;
}

double sq_radius(const double y[4]) { return y[0] * y[0] + y[1] * y[1]; }

// Exit localization: phi(lambda) = |position of a single DP step of size
// lambda*h|^2 - 1, bracketed on [lo, hi] with phi(lo) < 0 <= phi(hi),
// solved by the Illinois variant of regula falsi to 1e-12 in lambda.
StepResult localize_exit(const ConformalMetric& m, const double y[4], double h,
                         const double k1[4], double tol, double lo, double flo,
                         double hi, double fhi, double& lambda_out) {
  double lam = hi;
  StepResult best = dp_step(m, y, hi * h, k1, tol);
  int side = 0;
  for (int it = 0; it < 200; ++it) {
    lam = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(lam > lo && lam < hi)) lam = 0.5 * (lo + hi);
    best = dp_step(m, y, lam * h, k1, tol);
    double f = sq_radius(best.ynew) - 1.0;
    if (std::abs(f) < 1e-15 || hi - lo < 1e-12) break;
    if (f < 0.0) {
      lo = lam;
      flo = f;
      if (side == -1) fhi *= 0.5;
      side = -1;
    } else {
      hi = lam;
      fhi = f;
      if (side == +1) flo *= 0.5;
      side = +1;
    }
  }
  // land on the outward side of the bracket so the stored endpoint is the
  // crossing, not a point still strictly inside
  if (sq_radius(best.ynew) - 1.0 < -1e-13) {
    best = dp_step(m, y, hi * h, k1, tol);
    lam = hi;
  }
  lambda_out = lam;
  return best;
}

}  // namespace

double effective_max_length(const ConformalMetric& metric,
                            const SolverOptions& opts) {
  if (opts.max_length > 0.0) return opts.max_length;
  return 100.0 * metric.boundary_length() / M_PI;
}

GeodesicPath shoot(const ConformalMetric& metric, double s, double theta,
                   const SolverOptions& opts) {
  if (!(theta > -M_PI / 2 && theta < M_PI / 2))
    throw ConfigError("shoot: theta must lie strictly inside (-pi/2, pi/2)");
  if (!(opts.tol > 0.0) || !(opts.max_segment_length > 0.0))
    throw ConfigError("shoot: solver tolerances must be positive");

  BoundaryFrame frame = metric.boundary_point(s);
  GeodesicPath path;
  path.entry_s = s;
  path.entry_theta = theta;

  double y[4] = {frame.point.x, frame.point.y,
                 std::cos(theta) * frame.inward_normal.x +
                     std::sin(theta) * frame.tangent.x,
                 std::cos(theta) * frame.inward_normal.y +
                     std::sin(theta) * frame.tangent.y};
  path.vertices.push_back({y[0], y[1]});
  path.tangents.push_back({y[2], y[3]});
  path.times.push_back(0.0);

  const double max_len = effective_max_length(metric, opts);
  const double seg_cap = opts.max_segment_length;
  double k1[4];
  metric.geodesic_rhs(y, k1);

  double t = 0.0;
  double h = 0.5 * seg_cap * frame.rho;
  bool first = true;

  for (;;) {
    if (t >= max_len) {
      path.status = ShotStatus::MaxLengthExceeded;
      path.length = t;
      return path;
    }
    if (h < 1e-14 * std::max(1.0, t)) {
      path.status = ShotStatus::NumericalFailure;
      path.length = t;
      return path;
    }

    StepResult step = dp_step(metric, y, h, k1, opts.tol);
    if (!std::isfinite(step.err_norm) || step.err_norm > 1.0) {
      double fac = std::isfinite(step.err_norm)
                       ? std::max(0.2, 0.9 * std::pow(step.err_norm, -0.2))
                       : 0.2;
      h *= std::min(fac, 0.9);
      continue;
    }

    // vertex density guarantee: reject steps whose coordinate chord is long
    double cd = std::hypot(step.ynew[0] - y[0], step.ynew[1] - y[1]);
    if (cd > seg_cap) {
      h *= 0.9 * seg_cap / cd;
      continue;
    }

    if (sq_radius(step.ynew) >= 1.0) {
      // the step crosses the boundary; bracket the exit in the step parameter
      double lo = 0.0, flo = sq_radius(y) - 1.0;
      if (first || flo >= 0.0) {
        // entry vertex sits on the circle, scan inward for a negative point
        bool found = false;
        double lam = 0.5;
        for (int i = 0; i < 48; ++i) {
          StepResult probe = dp_step(metric, y, lam * h, k1, opts.tol);
          double f = sq_radius(probe.ynew) - 1.0;
          if (f < 0.0) {
            lo = lam;
            flo = f;
            found = true;
            break;
          }
          lam *= 0.5;
        }
        if (!found) {
          path.status = ShotStatus::NumericalFailure;
          path.length = t;
          return path;
        }
      }
      double lambda = 1.0;
      StepResult fin = localize_exit(metric, y, h, k1, opts.tol, lo, flo, 1.0,
                                     sq_radius(step.ynew) - 1.0, lambda);
      t += lambda * h;
      path.vertices.push_back({fin.ynew[0], fin.ynew[1]});
      path.tangents.push_back({fin.ynew[2], fin.ynew[3]});
      path.times.push_back(t);
      path.length = t;
      path.status = ShotStatus::Exited;
      auto [es, et] = exit_parameters(metric, path);
      path.exit_s = es;
      path.exit_theta = et;
      return path;
    }

    // accept
    t += h;
    for (int i = 0; i < 4; ++i) {
      y[i] = step.ynew[i];
      k1[i] = step.k7[i];
    }
    path.vertices.push_back({y[0], y[1]});
    path.tangents.push_back({y[2], y[3]});
    path.times.push_back(t);
    first = false;
    double fac = step.err_norm > 1e-12
                     ? std::min(5.0, std::max(0.2, 0.9 * std::pow(step.err_norm, -0.2)))
                     : 5.0;
    h *= fac;
  }
}

std::pair<double, double> exit_parameters(const ConformalMetric& metric,
                                          const GeodesicPath& path) {
  if (path.status != ShotStatus::Exited)
    throw SolverError("exit_parameters: path did not exit the disc");
  Vec2 p = path.vertices.back();
  Vec2 v = path.tangents.back();
  double psi = std::atan2(p.y, p.x);
  if (psi < 0.0) psi += 2.0 * M_PI;
  if (psi >= 2.0 * M_PI) psi = 0.0;
  double s_exit = metric.arclength_from_angle(psi);
  if (s_exit >= metric.boundary_length()) s_exit = 0.0;
  // reversed tangent against the inward frame at the exit; the conformal
  // factor scales both components equally so coordinate dots suffice
  double c = std::cos(psi), sn = std::sin(psi);
  double wn = -v.x * -c + -v.y * -sn;   // <-v, inward normal direction>
  double wt = -v.x * -sn + -v.y * c;    // <-v, ccw tangent direction>
  double theta_exit = std::atan2(wt, wn);
  return {s_exit, theta_exit};
}

namespace {

std::vector<GeodesicPath> shoot_nodes(const ConformalMetric& metric,
                                      std::span<const GammaNode> nodes,
                                      const SolverOptions& opts, bool parallel) {
  std::vector<GeodesicPath> out(nodes.size());
  std::exception_ptr failure = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
#endif
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(nodes.size()); ++i) {
    if (failure) continue;
    try {
      out[i] = shoot(metric, nodes[i].s, std::asin(nodes[i].u), opts);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace

std::vector<GeodesicPath> shoot_batch(const ConformalMetric& metric,
                                      std::span<const GammaNode> nodes,
                                      const SolverOptions& opts) {
  return shoot_nodes(metric, nodes, opts, true);
}

std::vector<GeodesicPath> shoot_batch_serial(const ConformalMetric& metric,
                                             std::span<const GammaNode> nodes,
                                             const SolverOptions& opts) {
  return shoot_nodes(metric, nodes, opts, false);
}

}  // namespace crofton
