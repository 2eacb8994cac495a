#pragma once

// Distances on Y_{n,eps} by Dijkstra over Steiner nodes placed at spacing <= h
// on the interfaces between regions (face/cylinder edges, cylinder/lune
// semicircles). Each region is geodesically convex with closed-form chords
// (planar for faces, developed for cylinders, great circles for lunes), so
// nodes of a region are joined by their exact intrinsic chords.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "geolab/metric/oracle.hpp"
#include "geolab/tube/mesh.hpp"
#include "geolab/tube/surface.hpp"

namespace geolab::tube {

struct TubePath {
  // Endpoints plus interface nodes; consecutive entries share a region.
  std::vector<TubePoint> points;
  double length = 0.0;
};

class TubeDistanceGraph {
 public:
  // Empirical ratio err/h from comparing spacing h against h/8 on random pairs.
  static constexpr double kErrorConstant = 0.5;

  TubeDistanceGraph(const TubeSurface& tube, double h, std::size_t max_nodes = 2'000'000);

  const TubeSurface& tube() const { return tube_; }
  double h() const { return h_; }
  double error_bound() const { return kErrorConstant * h_; }
  std::size_t node_count() const { return node_members_.size(); }

  double distance(const TubePoint& p, const TubePoint& q) const;
  TubePath path(const TubePoint& p, const TubePoint& q) const;
  // Point halfway along path(p, q); optionally reports the path length.
  TubePoint midpoint(const TubePoint& p, const TubePoint& q, double* length = nullptr) const;

 private:
  struct Cell {
    Region region;
    int index;
    std::vector<double> xs, ys;   // planar chart (faces, cylinders)
    std::vector<Vec3> dirs;       // unit directions (lunes)
    std::vector<std::int32_t> ids;
    std::vector<TubePoint> points;  // node coordinates in this region
  };
  struct Member {
    int cell;
    int slot;
  };

  int cell_of(const TubePoint& p) const;
  Vec2 chart(const Cell& c, const TubePoint& p) const;
  std::size_t relax(int cell, const TubePoint& from, double base, std::vector<double>& dist,
                    std::vector<std::int32_t>& pred, std::int32_t code) const;
  double search(const TubePoint& p, const TubePoint& q, TubePath* out) const;
  // Slides interface crossings along their interfaces to shorten the path.
  // Returns the refined length.
  double refine(std::vector<TubePoint>& pts, std::vector<TubePoint>& in_prev,
                const std::vector<int>& leg_cells) const;

  TubeSurface tube_;
  double h_;
  std::vector<Cell> cells_;
  std::vector<std::vector<Member>> node_members_;
};

// Oracle over the graph built at the mesh's spacing.
metric::DistanceOracle<TubePoint> mesh_distance_oracle(const TubeMesh& mesh);
metric::DistanceOracle<TubePoint> graph_oracle(std::shared_ptr<const TubeDistanceGraph> graph);

}  // namespace geolab::tube
