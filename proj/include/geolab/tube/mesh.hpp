#pragma once

// Region-conforming triangulation of Y_{n,eps}: each fan triangle of a face is
// subdivided uniformly, and the rim (cylinders and lunes) is a structured grid
// whose rows collapse to the vertex corners at the lune poles.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "geolab/tube/surface.hpp"

namespace geolab::tube {

struct MeshTopology {
  std::size_t vertices = 0, edges = 0, faces = 0;
  std::size_t boundary_edges = 0;     // edges with one incident triangle
  std::size_t nonmanifold_edges = 0;  // edges with more than two
  std::size_t inconsistent_edges = 0; // edges traversed twice in the same direction
  long euler_characteristic = 0;
  bool watertight() const { return boundary_edges == 0 && nonmanifold_edges == 0; }
  bool orientable() const { return inconsistent_edges == 0; }
  // For a closed orientable surface.
  long genus() const { return (2 - euler_characteristic) / 2; }
};

class TubeMesh {
 public:
  const TubeSurface& tube() const { return tube_; }
  double h() const { return h_; }
  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<TubePoint>& params() const { return params_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }

  double area() const;
  MeshTopology topology() const;
  // Largest ambient distance between a vertex and its projection onto X_n.
  double max_projection_displacement() const;
  // ASCII OFF, triangles counterclockwise seen from outside.
  void write_off(std::ostream& os) const;

 private:
  friend TubeMesh build_mesh(const TubeSurface&, double, std::size_t);
  explicit TubeMesh(TubeSurface tube, double h) : tube_(std::move(tube)), h_(h) {}

  TubeSurface tube_;
  double h_;
  std::vector<Vec3> vertices_;
  std::vector<TubePoint> params_;
  std::vector<std::array<int, 3>> triangles_;
};

// Requires 0 < h <= eps/3; throws BudgetExhausted above max_vertices.
TubeMesh build_mesh(const TubeSurface& tube, double h, std::size_t max_vertices = 2'000'000);

// Ambient position of a point of X_n (faces at z = 0).
Vec3 embed_base(const polygon::DoubledNgon& ngon, const polygon::PolygonPoint& p);

}  // namespace geolab::tube
