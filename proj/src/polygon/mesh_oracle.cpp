#include "geolab/polygon/mesh_oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include "geolab/errors.hpp"
#include "geolab/simd/kernels.hpp"

namespace geolab::polygon {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

PolygonMeshOracle::PolygonMeshOracle(const DoubledNgon& ngon, double h, std::size_t max_nodes)
    : ngon_(ngon), h_(h) {
  if (!(h > 0.0 && h < ngon.side() / 4.0)) {
    throw ValidationError("mesh spacing h must satisfy 0 < h < side/4");
  }
  const int n = ngon.n();
  const int k_edge = static_cast<int>(std::ceil(ngon.side() / h));
  const int k_spoke = static_cast<int>(std::ceil(ngon.circumradius() / h));
  const std::size_t expected =
      static_cast<std::size_t>(n) * k_edge + 2 * (1 + static_cast<std::size_t>(n) * (k_spoke - 1));
  if (expected > max_nodes) {
    throw BudgetExhausted("mesh oracle would need " + std::to_string(expected) +
                          " nodes, above the cap of " + std::to_string(max_nodes));
  }

  // Boundary nodes (shared by both faces): edge e, k = 0..k_edge-1, k = 0 is vertex e.
  auto boundary = [&](int e, int k) { return ngon.wrap(e) * k_edge + k; };
  for (int e = 0; e < n; ++e) {
    for (int k = 0; k < k_edge; ++k) node_pos_.push_back(ngon.edge_position(e, double(k) / k_edge));
  }
  // Per face: center, then spoke interiors (spoke i runs center -> vertex i).
  int face_base[2];
  for (int f = 0; f < 2; ++f) {
    face_base[f] = static_cast<int>(node_pos_.size());
    node_pos_.push_back({0.0, 0.0});
    for (int i = 0; i < n; ++i) {
      for (int j = 1; j < k_spoke; ++j) node_pos_.push_back(ngon.vertex(i) * (double(j) / k_spoke));
    }
  }
  auto spoke = [&](int f, int i, int j) {
    return face_base[f] + 1 + ngon.wrap(i) * (k_spoke - 1) + (j - 1);
  };

  node_cells_.resize(node_pos_.size());
  cells_.resize(2 * n);
  for (int f = 0; f < 2; ++f) {
    for (int i = 0; i < n; ++i) {
      int c = f * n + i;
      std::vector<int> ids{face_base[f]};
      for (int j = 1; j < k_spoke; ++j) ids.push_back(spoke(f, i, j));
      for (int j = 1; j < k_spoke; ++j) ids.push_back(spoke(f, i + 1, j));
      for (int k = 0; k < k_edge; ++k) ids.push_back(boundary(i, k));
      ids.push_back(boundary(i + 1, 0));
      for (int id : ids) {
        cells_[c].ids.push_back(id);
        cells_[c].xs.push_back(node_pos_[id].x);
        cells_[c].ys.push_back(node_pos_[id].y);
        node_cells_[id].push_back(c);
      }
    }
  }
}

double PolygonMeshOracle::error_constant() const {
  return 2.0 * std::ceil(ngon_.n() / 2.0) + 1.0;
}

std::vector<int> PolygonMeshOracle::cells_of(const PolygonPoint& p) const {
  const int n = ngon_.n();
  if (auto* e = as_edge(p)) return {cell_index(Face::kTop, e->edge), cell_index(Face::kBottom, e->edge)};
  const auto& in = std::get<InteriorPoint>(p);
  double angle = std::atan2(in.xy.y, in.xy.x);
  int sector = ngon_.wrap(static_cast<int>(std::lround(angle * n / (2.0 * std::numbers::pi))));
  return {cell_index(in.face, sector)};
}

double PolygonMeshOracle::distance(const PolygonPoint& p, const PolygonPoint& q) const {
  ngon_.validate(p);
  ngon_.validate(q);
  const Vec2 P = ngon_.position(p);
  const Vec2 Q = ngon_.position(q);
  const std::vector<int> pc = cells_of(p);
  const std::vector<int> qc = cells_of(q);

  double best = kInf;
  for (int a : pc) {
    for (int b : qc) {
      if (a == b) best = std::min(best, (P - Q).norm());
    }
  }

  const std::size_t nodes = node_pos_.size();
  std::vector<double> dist(nodes, kInf);
  std::vector<std::int32_t> pred(nodes, -1);
  std::vector<double> tail(nodes, kInf);
  for (int c : qc) {
    const Cell& cell = cells_[c];
    for (std::size_t i = 0; i < cell.ids.size(); ++i) {
      tail[cell.ids[i]] = (node_pos_[cell.ids[i]] - Q).norm();
    }
  }
  for (int c : pc) {
    const Cell& cell = cells_[c];
    simd::relax_planar(P, 0.0, cell.xs, cell.ys, cell.ids, dist, pred, -1);
  }

  using Entry = std::pair<double, std::int32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (int c : pc) {
    for (std::int32_t id : cells_[c].ids) heap.push({dist[id], id});
  }
  std::vector<char> done(nodes, 0);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d >= best) break;
    if (done[u] || d > dist[u]) continue;
    done[u] = 1;
    if (tail[u] < kInf) best = std::min(best, d + tail[u]);
    for (int c : node_cells_[u]) {
      const Cell& cell = cells_[c];
      std::size_t updated =
          simd::relax_planar(node_pos_[u], d, cell.xs, cell.ys, cell.ids, dist, pred, u);
      if (updated == 0) continue;
      for (std::int32_t id : cell.ids) {
        if (pred[id] == u && !done[id] && dist[id] < best) heap.push({dist[id], id});
      }
    }
  }
  return best;
}

metric::DistanceOracle<PolygonPoint> mesh_oracle(std::shared_ptr<const PolygonMeshOracle> mesh) {
  metric::DistanceOracle<PolygonPoint> oracle;
  oracle.error_bound = mesh->error_bound();
  oracle.surface_id = mesh->ngon().id();
  oracle.distance = [mesh](const PolygonPoint& a, const PolygonPoint& b) {
    return mesh->distance(a, b);
  };
  return oracle;
}

metric::DistanceOracle<PolygonPoint> mesh_oracle(const DoubledNgon& ngon, double h) {
  return mesh_oracle(std::make_shared<const PolygonMeshOracle>(ngon, h));
}

}  // namespace geolab::polygon
