#pragma once

// Exact distances on X_n by branch-and-bound over unfolded edge sequences.

#include <cstddef>
#include <memory>
#include <vector>

#include "geolab/metric/oracle.hpp"
#include "geolab/polygon/ngon.hpp"

namespace geolab::polygon {

class PolygonMeshOracle;

struct ExactDistanceConfig {
  // Longest edge sequence the search may open before giving up.
  int max_depth = 64;
  // Samples per edge for the one-crossing incumbent.
  int edge_samples = 8;
  // Optional coarse mesh whose distance seeds the incumbent instead.
  std::shared_ptr<const PolygonMeshOracle> seed_mesh;
  double prune_slack = 1e-12;
};

struct EdgeCrossing {
  int edge = 0;
  double u = 0.5;
  Face from = Face::kTop;  // face the path leaves at this crossing
};

struct GeodesicPath {
  PolygonPoint start;
  PolygonPoint end;
  Face start_face = Face::kTop;
  std::vector<EdgeCrossing> crossings;
  double length = 0.0;
  // Smallest distance from a crossing to a polygon vertex (infinity when no crossings).
  double vertex_margin = 0.0;
};

struct DistanceResult {
  double length = 0.0;
  GeodesicPath path;
  std::size_t nodes_explored = 0;
};

// Throws ValidationError for invalid endpoints and BudgetExhausted when the
// search would need sequences longer than cfg.max_depth.
DistanceResult exact_distance(const DoubledNgon& ngon, const PolygonPoint& p,
                              const PolygonPoint& q, const ExactDistanceConfig& cfg = {});

metric::DistanceOracle<PolygonPoint> exact_oracle(const DoubledNgon& ngon,
                                                  ExactDistanceConfig cfg = {});

// Planar positions of the path: start, each crossing, end (in the base chart).
std::vector<Vec2> path_polyline(const DoubledNgon& ngon, const GeodesicPath& path);

struct DiameterEstimate {
  double value = 0.0;
  double error_bound = 0.0;
  int grid = 0;
  std::size_t pairs = 0;
};

// Max of exact distances over a grid x grid lattice on both faces plus grid
// samples per edge; the true diameter lies in [value, value + error_bound].
DiameterEstimate approximate_diameter(const DoubledNgon& ngon, int grid,
                                      const ExactDistanceConfig& cfg = {});

}  // namespace geolab::polygon
