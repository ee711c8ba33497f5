// crofton-lab: estimators for the identities and the inequality
#include "crofton/verify.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

namespace crofton {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

SchemeInfo info_of(const GammaScheme& s) {
  SchemeInfo info;
  info.kind = s.kind == GammaScheme::Kind::Quadrature ? "quadrature" : "montecarlo";
  info.n_s = s.n_s;
  info.n_u = s.n_u;
  info.n = s.n;
  info.seed = s.seed;
  return info;
}

void require_exited(const std::vector<GeodesicPath>& paths) {
  for (const GeodesicPath& p : paths) {
    if (p.status == ShotStatus::MaxLengthExceeded)
      throw SolverError(
          "geodesic exceeded the max-length guard; the metric is outside the "
          "boundary-to-boundary class this tool verifies");
    if (p.status == ShotStatus::NumericalFailure)
      throw SolverError("geodesic integration failed (step-size underflow)");
  }
}

std::vector<Polyline> polylines_of(std::vector<GeodesicPath>& paths) {
  std::vector<Polyline> out;
  out.reserve(paths.size());
  for (GeodesicPath& p : paths) out.push_back(std::move(p.vertices));
  return out;
}

// Standard error of a U-statistic mean over unordered pairs, from the
// per-item conditional means h_i: se^2 ~ 4 var(h) / n.
double ustat_stderr(const std::vector<double>& h) {
  std::size_t n = h.size();
  if (n < 2) return 0.0;
  double mean = std::accumulate(h.begin(), h.end(), 0.0) / double(n);
  double var = 0.0;
  for (double v : h) var += (v - mean) * (v - mean);
  var /= double(n - 1);
  return std::sqrt(4.0 * var / double(n));
}

struct PairRun {
  GammaScheme scheme;
  PairAggregate agg;
  std::vector<double> lengths;
  long n = 0;
  double pair_mean_interior = 0.0;  // over ordered off-diagonal pairs
  double fraction_zero = 0.0;
  double fraction_many = 0.0;  // interior count >= 2
  double se_mean_interior = 0.0;
  double se_fraction_zero = 0.0;
};

PairRun run_pairs(const ConformalMetric& metric, long n, std::uint64_t seed,
                  const SolverOptions& opts) {
  if (n < 2) throw Error("pair estimators need n >= 2");
  PairRun run;
  run.n = n;
  run.scheme = sample_liouville(metric, n, seed);
  auto paths = shoot_batch(metric, run.scheme.nodes, opts);
  require_exited(paths);
  run.lengths.reserve(paths.size());
  for (const GeodesicPath& p : paths) run.lengths.push_back(p.length);
  auto lines = polylines_of(paths);
  run.agg = count_all_pairs(lines);

  double ordered = double(n) * double(n - 1);
  run.pair_mean_interior = 2.0 * double(run.agg.sum_interior) / ordered;
  long long many = 0;
  for (const auto& [count, pairs] : run.agg.histogram)
    if (count >= 2) many += pairs;
  run.fraction_zero = double(run.agg.histogram.count(0) ? run.agg.histogram.at(0) : 0) /
                      double(run.agg.pair_count);
  run.fraction_many = double(many) / double(run.agg.pair_count);

  std::vector<double> h_int(n), h_zero(n);
  for (long i = 0; i < n; ++i) {
    h_int[i] = double(run.agg.partner_interior_sum[i]) / double(n - 1);
    h_zero[i] = 1.0 - double(run.agg.partner_hit_count[i]) / double(n - 1);
  }
  run.se_mean_interior = ustat_stderr(h_int);
  run.se_fraction_zero = ustat_stderr(h_zero);
  return run;
}

}  // namespace

IdentityReport make_report(std::string name, double lhs, double rhs,
                           SchemeInfo scheme, double elapsed_seconds) {
  IdentityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_err = std::abs(lhs - rhs);
  r.rel_err = r.abs_err / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  r.scheme = std::move(scheme);
  r.elapsed_seconds = elapsed_seconds;
  return r;
}

IdentityReport verify_vol_gamma(const ConformalMetric& metric,
                                const GammaScheme& scheme) {
  auto t0 = Clock::now();
  double lhs = scheme.total_mass;
  double rhs = 2.0 * metric.boundary_length();
  return make_report("vol_gamma", lhs, rhs, info_of(scheme), seconds_since(t0));
}

IdentityReport verify_santalo(const ConformalMetric& metric,
                              const GammaScheme& scheme,
                              const SolverOptions& opts, bool serial) {
  auto t0 = Clock::now();
  auto paths = serial ? shoot_batch_serial(metric, scheme.nodes, opts)
                      : shoot_batch(metric, scheme.nodes, opts);
  require_exited(paths);
  double lhs = 0.0;
  for (std::size_t i = 0; i < paths.size(); ++i)
    lhs += scheme.weights[i] * paths[i].length;
  double rhs = 2.0 * M_PI * metric.area();
  return make_report("santalo", lhs, rhs, info_of(scheme), seconds_since(t0));
}

IdentityReport verify_crofton(const ConformalMetric& metric,
                              const Polyline& tau, const GammaScheme& scheme,
                              const SolverOptions& opts) {
  auto t0 = Clock::now();
  if (tau.size() < 2) throw Error("crofton: tau needs >= 2 vertices");
  for (const Vec2& p : tau)
    if (norm(p) > 1.0 + 1e-9)
      throw ConfigError("crofton: tau must lie in the closed unit disc");
  auto paths = shoot_batch(metric, scheme.nodes, opts);
  require_exited(paths);

  std::vector<long> counts(paths.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(paths.size()); ++i)
    counts[i] = count_intersections(tau, paths[i].vertices).total();

  double lhs = 0.0;
  for (std::size_t i = 0; i < paths.size(); ++i)
    lhs += scheme.weights[i] * double(counts[i]);
  double rhs = 4.0 * metric.polyline_length(tau);
  return make_report("crofton", lhs, rhs, info_of(scheme), seconds_since(t0));
}

IdentityReport verify_proposition(const ConformalMetric& metric, long n,
                                  std::uint64_t seed,
                                  const SolverOptions& opts) {
  auto t0 = Clock::now();
  if (n < 100) throw Error("verify_proposition: n >= 100 required");
  PairRun run = run_pairs(metric, n, seed, opts);
  double mass = run.scheme.total_mass;  // 2L
  double lhs = mass * mass * run.pair_mean_interior;
  double rhs = 8.0 * M_PI * metric.area();
  SchemeInfo info = info_of(run.scheme);
  info.mc_stderr = mass * mass * run.se_mean_interior;
  return make_report("proposition", lhs, rhs, info, seconds_since(t0));
}

InequalityReport verify_inequality(const ConformalMetric& metric, long n,
                                   std::uint64_t seed,
                                   const SolverOptions& opts) {
  auto t0 = Clock::now();
  double L = metric.boundary_length();
  double A = metric.area();
  PairRun run = run_pairs(metric, n, seed, opts);
  InequalityReport rep;
  rep.base = make_report("inequality", L * L, 2.0 * M_PI * A, info_of(run.scheme), 0.0);
  rep.hypothesis_fraction = run.fraction_many;
  // equality is admitted up to quadrature noise
  rep.satisfied = rep.base.lhs >= rep.base.rhs * (1.0 - 1e-9);
  rep.implementation_alarm = !rep.satisfied && rep.hypothesis_fraction < 1e-3;
  rep.base.elapsed_seconds = seconds_since(t0);
  return rep;
}

DeficitReport deficit_report(const ConformalMetric& metric, long n,
                             std::uint64_t seed, const SolverOptions& opts) {
  auto t0 = Clock::now();
  double L = metric.boundary_length();
  double A = metric.area();
  PairRun run = run_pairs(metric, n, seed, opts);
  double mass = run.scheme.total_mass;  // 2L
  double lhs = L * L - 2.0 * M_PI * A;
  double rhs = 0.25 * mass * mass * run.fraction_zero;
  SchemeInfo info = info_of(run.scheme);
  info.mc_stderr = 0.25 * mass * mass * run.se_fraction_zero;
  DeficitReport rep;
  rep.base = make_report("deficit", lhs, rhs, info, seconds_since(t0));
  rep.nonintersecting_fraction = run.fraction_zero;
  rep.hypothesis_fraction = run.fraction_many;
  rep.validity_warning = rep.hypothesis_fraction >= 1e-3;
  return rep;
}

CharacterizationReport characterize(const ConformalMetric& metric, long n,
                                    std::uint64_t seed,
                                    const SolverOptions& opts, int length_bins) {
  auto t0 = Clock::now();
  if (n < 100) throw Error("characterize: n >= 100 required");
  if (length_bins < 1) throw Error("characterize: length_bins >= 1");
  PairRun run = run_pairs(metric, n, seed, opts);

  CharacterizationReport rep;
  double lo = 1e300, hi = -1e300, sum = 0.0;
  for (double len : run.lengths) {
    lo = std::min(lo, len);
    hi = std::max(hi, len);
    sum += len;
  }
  rep.length_mean = sum / double(n);
  double var = 0.0;
  for (double len : run.lengths)
    var += (len - rep.length_mean) * (len - rep.length_mean);
  rep.length_stddev = std::sqrt(var / double(n - 1));
  if (hi - lo < 1e-12) {
    lo -= 5e-13;
    hi += 5e-13;
  }
  rep.length_bin_edges.resize(length_bins + 1);
  rep.length_bin_counts.assign(length_bins, 0);
  for (int b = 0; b <= length_bins; ++b)
    rep.length_bin_edges[b] = lo + (hi - lo) * double(b) / double(length_bins);
  for (double len : run.lengths) {
    int b = std::min(length_bins - 1, int((len - lo) / (hi - lo) * length_bins));
    rep.length_bin_counts[std::max(0, b)] += 1;
  }

  rep.pair_count_histogram = run.agg.histogram;
  rep.fraction_zero = run.fraction_zero;
  rep.fraction_many = run.fraction_many;
  rep.fraction_one = 1.0 - rep.fraction_zero - rep.fraction_many;
  rep.scheme = info_of(run.scheme);
  rep.elapsed_seconds = seconds_since(t0);
  return rep;
}

}  // namespace crofton
