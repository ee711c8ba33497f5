// crofton-lab: segment crossing detection, clustering, all-pairs aggregation
#include "crofton/intersect.hpp"

#include <algorithm>
#include <cmath>

#include "crofton/errors.hpp"

namespace crofton {

namespace {

struct Hit {
  double px, py;
  std::int32_t si, sj;
};

bool hit_order(const Hit& a, const Hit& b) {
  if (a.si != b.si) return a.si < b.si;
  return a.sj < b.sj;
}

// Transversal crossing of segments [a1,a2] and [b1,b2]; parameters may
// overshoot the ends by tol in coordinate distance so endpoint touches are
// admitted (clustering merges the duplicates).
bool segment_hit(Vec2 a1, Vec2 a2, Vec2 b1, Vec2 b2, double tol, Hit& out) {
  Vec2 d1 = a2 - a1, d2 = b2 - b1;
  double len1 = norm(d1), len2 = norm(d2);
  double denom = cross(d1, d2);
  if (std::abs(denom) <= 1e-14 * len1 * len2) return false;  // parallel
  Vec2 r = b1 - a1;
  double t = cross(r, d2) / denom;
  double u = cross(r, d1) / denom;
  double et = tol / len1, eu = tol / len2;
  if (t < -et || t > 1.0 + et || u < -eu || u > 1.0 + eu) return false;
  out.px = a1.x + t * d1.x;
  out.py = a1.y + t * d1.y;
  return true;
}

void check_polyline(const Polyline& p, double tol) {
  if (p.size() < 2) throw Error("intersection counting needs >= 2 vertices");
  if (!(tol > 0.0)) throw Error("intersection tolerance must be positive");
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (p[i].x == p[i + 1].x && p[i].y == p[i + 1].y)
      throw Error("degenerate zero-length segment in polyline");
}

// Greedy clustering in canonical hit order: a hit within 3*tol of an
// existing representative merges into it. Representatives within tol of the
// unit circle are boundary intersections.
IntersectionCount classify_hits(std::vector<Hit>& hits, double tol) {
  std::sort(hits.begin(), hits.end(), hit_order);
  IntersectionCount out;
  std::vector<Vec2> reps;
  double merge = 3.0 * tol;
  for (const Hit& h : hits) {
    bool merged = false;
    for (const Vec2& r : reps) {
      if (std::hypot(h.px - r.x, h.py - r.y) <= merge) {
        merged = true;
        break;
      }
    }
    if (merged) continue;
    reps.push_back({h.px, h.py});
    double d = std::abs(std::hypot(h.px, h.py) - 1.0);
    if (d <= tol) ++out.boundary;
    else ++out.interior;
  }
  return out;
}

}  // namespace

IntersectionCount count_intersections(const Polyline& a, const Polyline& b,
                                      double tol) {
  check_polyline(a, tol);
  check_polyline(b, tol);
  std::vector<Hit> hits;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
      Hit h;
      if (segment_hit(a[i], a[i + 1], b[j], b[j + 1], tol, h)) {
        h.si = static_cast<std::int32_t>(i);
        h.sj = static_cast<std::int32_t>(j);
        hits.push_back(h);
      }
    }
  }
  return classify_hits(hits, tol);
}

SegmentIndex SegmentIndex::build(const std::vector<Polyline>& paths,
                                 double pad) {
  SegmentIndex idx;
  double max_seg = 0.0;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const Polyline& p : paths) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      xmin = std::min(xmin, p[i].x);
      xmax = std::max(xmax, p[i].x);
      ymin = std::min(ymin, p[i].y);
      ymax = std::max(ymax, p[i].y);
      if (i + 1 < p.size()) max_seg = std::max(max_seg, dist(p[i], p[i + 1]));
    }
  }
  idx.cell_size = std::max(2.0 * max_seg, 1e-6);
  idx.x0 = xmin - idx.cell_size;
  idx.y0 = ymin - idx.cell_size;
  idx.nx = std::max(1, int((xmax - idx.x0) / idx.cell_size) + 2);
  idx.ny = std::max(1, int((ymax - idx.y0) / idx.cell_size) + 2);

  auto cells_of_bbox = [&idx](Vec2 a, Vec2 b, double pad, auto&& fn) {
    double lox = std::min(a.x, b.x) - pad, hix = std::max(a.x, b.x) + pad;
    double loy = std::min(a.y, b.y) - pad, hiy = std::max(a.y, b.y) + pad;
    int cx0 = std::clamp(int((lox - idx.x0) / idx.cell_size), 0, idx.nx - 1);
    int cx1 = std::clamp(int((hix - idx.x0) / idx.cell_size), 0, idx.nx - 1);
    int cy0 = std::clamp(int((loy - idx.y0) / idx.cell_size), 0, idx.ny - 1);
    int cy1 = std::clamp(int((hiy - idx.y0) / idx.cell_size), 0, idx.ny - 1);
    for (int cy = cy0; cy <= cy1; ++cy)
      for (int cx = cx0; cx <= cx1; ++cx) fn(cy * idx.nx + cx);
  };

  // two passes: count then fill (CSR); the pad covers hit points that
  // overshoot segment ends by up to tol
  std::vector<std::int64_t> counts(std::size_t(idx.nx) * idx.ny + 1, 0);
  for (std::size_t pi = 0; pi < paths.size(); ++pi) {
    const Polyline& p = paths[pi];
    for (std::size_t si = 0; si + 1 < p.size(); ++si)
      cells_of_bbox(p[si], p[si + 1], pad, [&](int c) { ++counts[c + 1]; });
  }
  for (std::size_t c = 1; c < counts.size(); ++c) counts[c] += counts[c - 1];
  idx.cell_start = counts;
  idx.refs.resize(counts.back());
  std::vector<std::int64_t> cursor(counts.begin(), counts.end() - 1);
  for (std::size_t pi = 0; pi < paths.size(); ++pi) {
    const Polyline& p = paths[pi];
    for (std::size_t si = 0; si + 1 < p.size(); ++si)
      cells_of_bbox(p[si], p[si + 1], pad, [&](int c) {
        idx.refs[cursor[c]++] = {std::int32_t(pi), std::int32_t(si)};
      });
  }
  return idx;
}

int SegmentIndex::cell_of_point(double x, double y) const {
  int cx = std::clamp(int((x - x0) / cell_size), 0, nx - 1);
  int cy = std::clamp(int((y - y0) / cell_size), 0, ny - 1);
  return cy * nx + cx;
}

namespace {

struct PairHit {
  std::uint64_t key;  // (i << 32) | j with i < j
  Hit hit;
};

bool pairhit_order(const PairHit& a, const PairHit& b) {
  if (a.key != b.key) return a.key < b.key;
  return hit_order(a.hit, b.hit);
}

PairAggregate aggregate_from_groups(std::vector<PairHit>& cands,
                                    std::size_t n_paths, double tol) {
  PairAggregate agg;
  agg.partner_interior_sum.assign(n_paths, 0);
  agg.partner_hit_count.assign(n_paths, 0);
  agg.pair_count =
      static_cast<long long>(n_paths) * static_cast<long long>(n_paths - 1) / 2;

  std::sort(cands.begin(), cands.end(), pairhit_order);
  long long pairs_seen_positive = 0;
  std::size_t g = 0;
  std::vector<Hit> hits;
  while (g < cands.size()) {
    std::size_t e = g;
    hits.clear();
    while (e < cands.size() && cands[e].key == cands[g].key) {
      hits.push_back(cands[e].hit);
      ++e;
    }
    IntersectionCount c = classify_hits(hits, tol);
    std::uint32_t i = std::uint32_t(cands[g].key >> 32);
    std::uint32_t j = std::uint32_t(cands[g].key & 0xffffffffu);
    if (c.interior > 0) {
      agg.sum_interior += c.interior;
      agg.histogram[c.interior] += 1;
      agg.partner_interior_sum[i] += c.interior;
      agg.partner_interior_sum[j] += c.interior;
      agg.partner_hit_count[i] += 1;
      agg.partner_hit_count[j] += 1;
      ++pairs_seen_positive;
    }
    g = e;
  }
  agg.histogram[0] = agg.pair_count - pairs_seen_positive;
  return agg;
}

}  // namespace

PairAggregate count_all_pairs(const std::vector<Polyline>& paths, double tol) {
  if (paths.size() < 2) throw Error("count_all_pairs: need >= 2 paths");
  for (const Polyline& p : paths) check_polyline(p, tol);

  SegmentIndex idx = SegmentIndex::build(paths, tol);
  const int n_cells = idx.nx * idx.ny;
  std::vector<PairHit> cands;

#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::vector<PairHit> local;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 64) nowait
#endif
    for (int c = 0; c < n_cells; ++c) {
      std::int64_t lo = idx.cell_start[c], hi = idx.cell_start[c + 1];
      for (std::int64_t a = lo; a < hi; ++a) {
        for (std::int64_t b = a + 1; b < hi; ++b) {
          SegmentIndex::SegRef ra = idx.refs[a], rb = idx.refs[b];
          if (ra.path == rb.path) continue;
          if (ra.path > rb.path) std::swap(ra, rb);
          const Polyline& pa = paths[ra.path];
          const Polyline& pb = paths[rb.path];
          Hit h;
          if (!segment_hit(pa[ra.seg], pa[ra.seg + 1], pb[rb.seg],
                           pb[rb.seg + 1], tol, h))
            continue;
          // a segment pair can share several cells; the hit is owned by the
          // cell containing the crossing point
          if (idx.cell_of_point(h.px, h.py) != c) continue;
          h.si = ra.seg;
          h.sj = rb.seg;
          local.push_back(
              {(std::uint64_t(ra.path) << 32) | std::uint32_t(rb.path), h});
        }
      }
    }
#ifdef _OPENMP
#pragma omp critical
#endif
    cands.insert(cands.end(), local.begin(), local.end());
  }

  return aggregate_from_groups(cands, paths.size(), tol);
}

PairAggregate count_all_pairs_brute(const std::vector<Polyline>& paths,
                                    double tol) {
  if (paths.size() < 2) throw Error("count_all_pairs_brute: need >= 2 paths");
  for (const Polyline& p : paths) check_polyline(p, tol);

  PairAggregate agg;
  agg.partner_interior_sum.assign(paths.size(), 0);
  agg.partner_hit_count.assign(paths.size(), 0);
  agg.pair_count = static_cast<long long>(paths.size()) *
                   static_cast<long long>(paths.size() - 1) / 2;
  long long pairs_seen_positive = 0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t j = i + 1; j < paths.size(); ++j) {
      IntersectionCount c = count_intersections(paths[i], paths[j], tol);
      if (c.interior > 0) {
        agg.sum_interior += c.interior;
        agg.histogram[c.interior] += 1;
        agg.partner_interior_sum[i] += c.interior;
        agg.partner_interior_sum[j] += c.interior;
        agg.partner_hit_count[i] += 1;
        agg.partner_hit_count[j] += 1;
        ++pairs_seen_positive;
      }
    }
  }
  agg.histogram[0] = agg.pair_count - pairs_seen_positive;
  return agg;
}

}  // namespace crofton
