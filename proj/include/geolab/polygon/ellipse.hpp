#pragma once

// Ellipse clearance: for foci p, q placed in one planar copy of the n-gon,
// every boundary point x outside the tangency edges must satisfy
// |x - p| + |x - q| >= L_half. When it holds, no path from p to q through
// another edge is shorter than L_half.

#include <vector>

#include "geolab/polygon/ngon.hpp"

namespace geolab::polygon {

struct EdgeMinimum {
  int edge = 0;
  double u = 0.0;        // minimizer along the edge, in [0, 1]
  double focal_sum = 0;  // min over the edge of |x - p| + |x - q|
};

struct ClearanceResult {
  bool clear = true;
  std::vector<EdgeMinimum> edges;  // one entry per edge of the n-gon
  // Smallest focal sum among the checked (non-tangency) edges.
  EdgeMinimum witness;
  Vec2 witness_point;
};

// tangent_edges are the edges carrying the curve's own edge points; they are
// reported but not checked. Requires L_half >= |p - q|.
ClearanceResult ellipse_clearance_check(const DoubledNgon& ngon, const PolygonPoint& p,
                                        const PolygonPoint& q, double l_half,
                                        const std::vector<int>& tangent_edges,
                                        double pass_tol = 1e-9);

}  // namespace geolab::polygon
