#include "geolab/tube/mesh.hpp"

#include <cmath>
#include <map>
#include <ostream>

#include "geolab/errors.hpp"

namespace geolab::tube {

using polygon::Face;

namespace {

// Deduplicates vertices by quantized ambient position.
class VertexPool {
 public:
  VertexPool(const TubeSurface& tube, std::vector<Vec3>& v, std::vector<TubePoint>& p,
             std::size_t cap)
      : tube_(tube), v_(v), p_(p), cap_(cap), q_(1e-9 * tube.base().side()) {}

  int add(const TubePoint& tp) {
    Vec3 x = tube_.ambient(tp);
    std::array<long long, 3> key{std::llround(x.x / q_), std::llround(x.y / q_), std::llround(x.z / q_)};
    auto [it, inserted] = index_.emplace(key, static_cast<int>(v_.size()));
    if (inserted) {
      if (v_.size() >= cap_) {
        throw BudgetExhausted("tube mesh exceeds the vertex cap of " + std::to_string(cap_));
      }
      v_.push_back(x);
      p_.push_back(tp);
    }
    return it->second;
  }

 private:
  const TubeSurface& tube_;
  std::vector<Vec3>& v_;
  std::vector<TubePoint>& p_;
  std::size_t cap_;
  double q_;
  std::map<std::array<long long, 3>, int> index_;
};

}  // namespace

TubeMesh build_mesh(const TubeSurface& tube, double h, std::size_t max_vertices) {
  if (!(h > 0.0 && h <= tube.eps() / 3.0)) {
    throw ValidationError("mesh spacing h must satisfy 0 < h <= eps/3");
  }
  TubeMesh mesh(tube, h);
  const auto& g = tube.base();
  const int n = g.n();
  const double eps = tube.eps();
  const int k_edge = static_cast<int>(std::ceil(std::max(g.side(), g.circumradius()) / h));
  const int rows = static_cast<int>(std::ceil(std::numbers::pi * eps / h));
  const int lune_cols = static_cast<int>(std::ceil(tube.lune_angle() * eps / h));
  const std::size_t estimate = 2 * static_cast<std::size_t>(n) * k_edge * k_edge / 2 +
                               static_cast<std::size_t>(n) * (k_edge + lune_cols) * (rows + 1);
  if (estimate > max_vertices) {
    throw BudgetExhausted("tube mesh would need about " + std::to_string(estimate) +
                          " vertices, above the cap of " + std::to_string(max_vertices));
  }
  VertexPool pool(tube, mesh.vertices_, mesh.params_, max_vertices);
  auto& tris = mesh.triangles_;
  auto emit = [&](int a, int b, int c) {
    if (a == b || b == c || a == c) return;
    Vec3 pa = mesh.vertices_[a], pb = mesh.vertices_[b], pc = mesh.vertices_[c];
    Vec3 nrm = cross(pb - pa, pc - pa);
    Vec3 centroid = (pa + pb + pc) * (1.0 / 3.0);
    if (dot(nrm, centroid) < 0.0) std::swap(b, c);
    tris.push_back({a, b, c});
  };

  // Faces: fan triangle (center, v_i, v_{i+1}) split into k_edge^2 pieces.
  for (Face face : {Face::kTop, Face::kBottom}) {
    for (int i = 0; i < n; ++i) {
      Vec2 a = g.vertex(i), b = g.vertex(i + 1);
      auto id = [&](int p, int q) {
        // p steps towards v_i, q towards v_{i+1}; p + q = k_edge is the polygon edge.
        if (p + q == k_edge) {
          double u = static_cast<double>(q) / k_edge;
          return pool.add(TubePoint::cylinder(i, u, face == Face::kTop ? 0.0 : std::numbers::pi));
        }
        Vec2 x = a * (static_cast<double>(p) / k_edge) + b * (static_cast<double>(q) / k_edge);
        return pool.add(TubePoint::face(face, x));
      };
      for (int p = 0; p < k_edge; ++p) {
        for (int q = 0; p + q < k_edge; ++q) {
          emit(id(p, q), id(p + 1, q), id(p, q + 1));
          if (p + q + 2 <= k_edge) emit(id(p + 1, q), id(p + 1, q + 1), id(p, q + 1));
        }
      }
    }
  }

  // Rim: columns run around the polygon, rows from top (phi = 0) to bottom.
  std::vector<std::vector<TubePoint>> columns;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < lune_cols; ++j) {
      double alpha = tube.lune_angle() * j / lune_cols;
      std::vector<TubePoint> col;
      for (int r = 0; r <= rows; ++r) col.push_back(TubePoint::sphere(i, alpha, std::numbers::pi * r / rows));
      columns.push_back(std::move(col));
    }
    for (int k = 0; k < k_edge; ++k) {
      double u = static_cast<double>(k) / k_edge;
      std::vector<TubePoint> col;
      for (int r = 0; r <= rows; ++r) col.push_back(TubePoint::cylinder(i, u, std::numbers::pi * r / rows));
      columns.push_back(std::move(col));
    }
  }
  std::vector<std::vector<int>> ids(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (const auto& tp : columns[c]) ids[c].push_back(pool.add(tp));
  }
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const auto& left = ids[c];
    const auto& right = ids[(c + 1) % columns.size()];
    for (int r = 0; r < rows; ++r) {
      emit(left[r], right[r], right[r + 1]);
      emit(left[r], right[r + 1], left[r + 1]);
    }
  }
  return mesh;
}

double TubeMesh::area() const {
  double total = 0.0;
  for (const auto& t : triangles_) {
    total += 0.5 * cross(vertices_[t[1]] - vertices_[t[0]], vertices_[t[2]] - vertices_[t[0]]).norm();
  }
  return total;
}

MeshTopology TubeMesh::topology() const {
  std::map<std::pair<int, int>, std::pair<int, int>> edges;  // (min,max) -> (count, signed count)
  for (const auto& t : triangles_) {
    for (int k = 0; k < 3; ++k) {
      int a = t[k], b = t[(k + 1) % 3];
      auto& e = edges[{std::min(a, b), std::max(a, b)}];
      e.first += 1;
      e.second += a < b ? 1 : -1;
    }
  }
  MeshTopology topo;
  topo.vertices = vertices_.size();
  topo.faces = triangles_.size();
  topo.edges = edges.size();
  for (const auto& [key, e] : edges) {
    if (e.first == 1) ++topo.boundary_edges;
    if (e.first > 2) ++topo.nonmanifold_edges;
    if (e.first == 2 && e.second != 0) ++topo.inconsistent_edges;
  }
  topo.euler_characteristic = static_cast<long>(topo.vertices) - static_cast<long>(topo.edges) +
                              static_cast<long>(topo.faces);
  return topo;
}

Vec3 embed_base(const polygon::DoubledNgon& ngon, const polygon::PolygonPoint& p) {
  Vec2 xy = ngon.position(p);
  return {xy.x, xy.y, 0.0};
}

double TubeMesh::max_projection_displacement() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    Vec3 base = embed_base(tube_.base(), tube_.project(params_[i]));
    worst = std::max(worst, (vertices_[i] - base).norm());
  }
  return worst;
}

void TubeMesh::write_off(std::ostream& os) const {
  os.precision(17);
  os << "OFF\n" << vertices_.size() << ' ' << triangles_.size() << " 0\n";
  for (const auto& v : vertices_) os << v.x << ' ' << v.y << ' ' << v.z << '\n';
  for (const auto& t : triangles_) os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

}  // namespace geolab::tube
