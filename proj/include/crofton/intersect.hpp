// crofton-lab: robust intersection counting between geodesic polylines
#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "crofton/geom.hpp"

namespace crofton {

struct IntersectionCount {
  long interior = 0;
  long boundary = 0;  // within tol of the unit circle
  long total() const { return interior + boundary; }
};

// Counts transversal crossings between two polylines. Crossing points closer
// than 3*tol are merged into one intersection (a smooth crossing near a
// shared polyline vertex shows up as two segment hits); an intersection
// within tol of the unit circle is classified as boundary. Symmetric in its
// arguments. Throws on zero-length segments.
IntersectionCount count_intersections(const Polyline& a, const Polyline& b,
                                      double tol = 1e-7);

// Uniform spatial grid over the disc bounding box; cell size is twice the
// longest segment so each segment touches O(1) cells.
struct SegmentIndex {
  struct SegRef {
    std::int32_t path;
    std::int32_t seg;
  };

  static SegmentIndex build(const std::vector<Polyline>& paths,
                            double pad = 1e-6);

  int cell_of_point(double x, double y) const;

  double cell_size = 0.0;
  double x0 = 0.0, y0 = 0.0;
  int nx = 0, ny = 0;
  // CSR layout: cell i holds refs[cell_start[i] .. cell_start[i+1])
  std::vector<std::int64_t> cell_start;
  std::vector<SegRef> refs;
};

// Aggregate over all unordered path pairs (diagonal excluded).
struct PairAggregate {
  long long pair_count = 0;                    // number of unordered pairs
  long long sum_interior = 0;                  // sum of interior counts
  std::map<long, long long> histogram;         // interior count -> pairs
  std::vector<long long> partner_interior_sum; // per path: sum over partners
  std::vector<long long> partner_hit_count;    // per path: partners with >= 1
};

// Pairwise interior-intersection aggregate. The indexed version matches
// count_intersections pair by pair (same predicate, same clustering, applied
// in the same canonical segment order) and parallelizes candidate
// generation; the brute version is the quadratic serial reference.
PairAggregate count_all_pairs(const std::vector<Polyline>& paths,
                              double tol = 1e-7);
PairAggregate count_all_pairs_brute(const std::vector<Polyline>& paths,
                                    double tol = 1e-7);

}  // namespace crofton
