#include "geolab/polygon/ellipse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geolab/errors.hpp"

namespace geolab::polygon {

namespace {

// Golden-section minimum of the convex focal sum along one edge.
EdgeMinimum minimize_on_edge(const DoubledNgon& ngon, int e, Vec2 p, Vec2 q) {
  auto f = [&](double u) {
    Vec2 x = ngon.edge_position(e, u);
    return (x - p).norm() + (x - q).norm();
  };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = 1.0;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > 1e-12) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  EdgeMinimum best{e, 0.5 * (lo + hi), f(0.5 * (lo + hi))};
  for (double u : {0.0, 1.0}) {
    double v = f(u);
    if (v < best.focal_sum) best = {e, u, v};
  }
  return best;
}

}  // namespace

ClearanceResult ellipse_clearance_check(const DoubledNgon& ngon, const PolygonPoint& p,
                                        const PolygonPoint& q, double l_half,
                                        const std::vector<int>& tangent_edges, double pass_tol) {
  ngon.validate(p);
  ngon.validate(q);
  for (int e : tangent_edges) {
    if (e < 0 || e >= ngon.n()) throw ValidationError("tangency edge index out of range");
  }
  // p == q is the circle case; the focal sum is then twice the distance to p.
  const Vec2 P = ngon.position(p), Q = ngon.position(q);
  if (l_half < (P - Q).norm() - pass_tol) {
    throw ValidationError("L_half is shorter than the focal chord");
  }
  ClearanceResult out;
  out.witness.focal_sum = std::numeric_limits<double>::infinity();
  for (int e = 0; e < ngon.n(); ++e) {
    EdgeMinimum m = minimize_on_edge(ngon, e, P, Q);
    out.edges.push_back(m);
    if (std::find(tangent_edges.begin(), tangent_edges.end(), e) != tangent_edges.end()) continue;
    if (m.focal_sum < out.witness.focal_sum) out.witness = m;
    if (m.focal_sum < l_half - pass_tol) out.clear = false;
  }
  out.witness_point = ngon.edge_position(out.witness.edge, out.witness.u);
  return out;
}

}  // namespace geolab::polygon
