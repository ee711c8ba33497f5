// crofton-lab: a point of the geodesic space chart
#pragma once

namespace crofton {

// Chart point of the geodesic space: boundary arclength s in [0, L) and
// u = sin(theta) in (-1, 1). The u substitution turns the measure
// |cos(theta)| dtheta ds into du ds.
struct GammaNode {
  double s = 0.0;
  double u = 0.0;
};

// Entry angles are kept away from the grazing band: |u| <= 1 - kGrazingClamp.
// The excluded band carries measure 2L * kGrazingClamp, i.e. O(1e-6) of the
// total, far below every verification tolerance.
inline constexpr double kGrazingClamp = 1e-6;

}  // namespace crofton
