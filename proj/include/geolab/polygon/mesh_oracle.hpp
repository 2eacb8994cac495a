#pragma once

// Brute-force distance backend for X_n: Dijkstra over Steiner points placed at
// spacing <= h on the edges of a fan triangulation of both faces, with every
// pair of Steiner points in a triangle joined by its chord.
//
// A shortest path crosses at most one polygon edge and, on each face, at most
// ceil(n/2) fan spokes. Snapping one crossing to the nearest Steiner point
// (<= h/2 away) lengthens the path by <= h, so the declared error is
// (2 ceil(n/2) + 1) h. Results never undershoot the true distance.

#include <cstdint>
#include <memory>
#include <vector>

#include "geolab/metric/oracle.hpp"
#include "geolab/polygon/ngon.hpp"

namespace geolab::polygon {

class PolygonMeshOracle {
 public:
  // Requires 0 < h < side/4; throws BudgetExhausted above max_nodes.
  PolygonMeshOracle(const DoubledNgon& ngon, double h, std::size_t max_nodes = 4'000'000);

  const DoubledNgon& ngon() const { return ngon_; }
  double h() const { return h_; }
  double error_bound() const { return error_constant() * h_; }
  double error_constant() const;
  std::size_t node_count() const { return node_pos_.size(); }

  double distance(const PolygonPoint& p, const PolygonPoint& q) const;

 private:
  struct Cell {
    std::vector<double> xs, ys;
    std::vector<std::int32_t> ids;
  };
  std::vector<int> cells_of(const PolygonPoint& p) const;
  int cell_index(Face face, int sector) const { return (face == Face::kTop ? 0 : ngon_.n()) + sector; }

  DoubledNgon ngon_;
  double h_;
  std::vector<Vec2> node_pos_;
  std::vector<std::vector<int>> node_cells_;
  std::vector<Cell> cells_;
};

metric::DistanceOracle<PolygonPoint> mesh_oracle(std::shared_ptr<const PolygonMeshOracle> mesh);
metric::DistanceOracle<PolygonPoint> mesh_oracle(const DoubledNgon& ngon, double h);

}  // namespace geolab::polygon
