#include "geolab/tube/distance.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

#include "geolab/errors.hpp"
#include "geolab/simd/kernels.hpp"

namespace geolab::tube {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::int32_t kSourceCode = -2;

struct Leg {
  TubePoint a, b;
  double length;
};

}  // namespace

TubeDistanceGraph::TubeDistanceGraph(const TubeSurface& tube, double h, std::size_t max_nodes)
    : tube_(tube), h_(h) {
  if (!(h > 0.0 && h <= tube.eps() / 3.0)) {
    throw ValidationError("graph spacing h must satisfy 0 < h <= eps/3");
  }
  const auto& g = tube.base();
  const int n = g.n();
  const int k_edge = static_cast<int>(std::ceil(g.side() / h));
  const int rows = static_cast<int>(std::ceil(std::numbers::pi * tube.eps() / h));
  const std::size_t expected = 2 * static_cast<std::size_t>(n) * (k_edge + rows);
  if (expected > max_nodes) {
    throw BudgetExhausted("tube distance graph would need " + std::to_string(expected) +
                          " nodes, above the cap of " + std::to_string(max_nodes));
  }
  const double pi = std::numbers::pi;
  const double beta = tube.lune_angle();

  cells_.resize(2 + 2 * n);
  for (int f = 0; f < 2; ++f) cells_[f].region = Region::kFace, cells_[f].index = f;
  for (int i = 0; i < n; ++i) {
    cells_[2 + i].region = Region::kCylinder;
    cells_[2 + i].index = i;
    cells_[2 + n + i].region = Region::kSphere;
    cells_[2 + n + i].index = i;
  }

  std::map<std::array<long long, 3>, int> index;
  const double quantum = 1e-9 * g.side();
  auto add = [&](int cell, const TubePoint& p) {
    Vec3 x = tube.ambient(p);
    std::array<long long, 3> key{std::llround(x.x / quantum), std::llround(x.y / quantum),
                                 std::llround(x.z / quantum)};
    auto [it, inserted] = index.emplace(key, static_cast<int>(node_members_.size()));
    if (inserted) node_members_.emplace_back();
    int id = it->second;
    Cell& c = cells_[cell];
    int slot = static_cast<int>(c.ids.size());
    c.ids.push_back(id);
    c.points.push_back(p);
    if (c.region == Region::kSphere) {
      c.dirs.push_back(tube.normal(p));
    } else {
      Vec2 xy = chart(c, p);
      c.xs.push_back(xy.x);
      c.ys.push_back(xy.y);
    }
    node_members_[id].push_back({cell, slot});
  };

  for (int f = 0; f < 2; ++f) {
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < k_edge; ++k) {
        add(f, TubePoint::face(f == 0 ? polygon::Face::kTop : polygon::Face::kBottom,
                               g.edge_position(i, static_cast<double>(k) / k_edge)));
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= k_edge; ++k) {
      double u = static_cast<double>(k) / k_edge;
      add(2 + i, TubePoint::cylinder(i, u, 0.0));
      add(2 + i, TubePoint::cylinder(i, u, pi));
    }
    for (int r = 1; r < rows; ++r) {
      add(2 + i, TubePoint::cylinder(i, 0.0, pi * r / rows));
      add(2 + i, TubePoint::cylinder(i, 1.0, pi * r / rows));
    }
    add(2 + n + i, TubePoint::sphere(i, 0.0, 0.0));
    add(2 + n + i, TubePoint::sphere(i, 0.0, pi));
    for (int r = 1; r < rows; ++r) {
      add(2 + n + i, TubePoint::sphere(i, 0.0, pi * r / rows));
      add(2 + n + i, TubePoint::sphere(i, beta, pi * r / rows));
    }
  }
}

Vec2 TubeDistanceGraph::chart(const Cell& c, const TubePoint& p) const {
  if (c.region == Region::kFace) return {p.a, p.b};
  return {p.a * tube_.base().side(), p.b * tube_.eps()};
}

int TubeDistanceGraph::cell_of(const TubePoint& p) const {
  switch (p.region) {
    case Region::kFace: return p.index;
    case Region::kCylinder: return 2 + p.index;
    case Region::kSphere: return 2 + tube_.n() + p.index;
  }
  return 0;
}

std::size_t TubeDistanceGraph::relax(int cell, const TubePoint& from, double base,
                                     std::vector<double>& dist, std::vector<std::int32_t>& pred,
                                     std::int32_t code) const {
  const Cell& c = cells_[cell];
  if (c.region != Region::kSphere) {
    return simd::relax_planar(chart(c, from), base, c.xs, c.ys, c.ids, dist, pred, code);
  }
  const Vec3 d0 = tube_.normal(from);
  const double eps = tube_.eps();
  std::size_t updates = 0;
  for (std::size_t k = 0; k < c.ids.size(); ++k) {
    double chord = (d0 - c.dirs[k]).norm();
    double cand = base + 2.0 * std::asin(std::min(1.0, 0.5 * chord)) * eps;
    if (cand < dist[c.ids[k]]) {
      dist[c.ids[k]] = cand;
      pred[c.ids[k]] = code;
      ++updates;
    }
  }
  return updates;
}

namespace {

// Interface point between two adjacent regions, expressed in both.
struct Slider {
  bool fixed = true;
  double lo = 0.0, hi = 0.0;
  std::function<std::pair<TubePoint, TubePoint>(double)> at;
};

Slider make_slider(const TubeSurface& tube, Region ra, int ia, Region rb, int ib,
                   const TubePoint& in_a, const TubePoint& in_b) {
  Slider s;
  // Interface checks read the cylinder-side coordinates.
  const TubePoint& current = ra == Region::kCylinder ? in_a : in_b;
  const double pi = std::numbers::pi;
  const double beta = tube.lune_angle();
  const int n = tube.n();
  auto face_cyl = [&](int face, int edge, bool face_first) {
    const double phi = face == 0 ? 0.0 : pi;
    s.fixed = false;
    s.lo = 0.0;
    s.hi = 1.0;
    s.at = [&tube, face, edge, phi, face_first](double u) {
      TubePoint f = TubePoint::face(face == 0 ? polygon::Face::kTop : polygon::Face::kBottom,
                                    tube.base().edge_position(edge, u));
      TubePoint c = TubePoint::cylinder(edge, u, phi);
      return face_first ? std::make_pair(f, c) : std::make_pair(c, f);
    };
  };
  auto cyl_lune = [&](int edge, int vertex, bool cyl_first) {
    const bool start = vertex == edge;  // lune at the edge's first vertex
    s.fixed = false;
    s.lo = 0.0;
    s.hi = pi;
    s.at = [edge, vertex, start, beta, cyl_first](double phi) {
      TubePoint c = TubePoint::cylinder(edge, start ? 0.0 : 1.0, phi);
      TubePoint l = TubePoint::sphere(vertex, start ? beta : 0.0, phi);
      return cyl_first ? std::make_pair(c, l) : std::make_pair(l, c);
    };
  };
  if (ra == Region::kFace && rb == Region::kCylinder && std::abs(current.b - (ia == 0 ? 0.0 : pi)) < 1e-12) {
    face_cyl(ia, ib, true);
  } else if (ra == Region::kCylinder && rb == Region::kFace && std::abs(current.b - (ib == 0 ? 0.0 : pi)) < 1e-12) {
    face_cyl(ib, ia, false);
  } else if (ra == Region::kCylinder && rb == Region::kSphere &&
             (ib == ia || ib == (ia + 1) % n)) {
    if (ib == ia && current.a == 0.0) cyl_lune(ia, ib, true);
    if (ib == (ia + 1) % n && current.a == 1.0) cyl_lune(ia, ib, true);
  } else if (ra == Region::kSphere && rb == Region::kCylinder &&
             (ia == ib || ia == (ib + 1) % n)) {
    if (ia == ib && current.a == 0.0) cyl_lune(ib, ia, false);
    if (ia == (ib + 1) % n && current.a == 1.0) cyl_lune(ib, ia, false);
  }
  return s;
}

template <class F>
double golden_min(F&& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double span = hi - lo;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > 1e-13 * span) {
    if (f1 <= f2) {
      hi = x2; x2 = x1; f2 = f1; x1 = hi - inv_phi * (hi - lo); f1 = f(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2; x2 = lo + inv_phi * (hi - lo); f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double TubeDistanceGraph::refine(std::vector<TubePoint>& pts, std::vector<TubePoint>& in_prev,
                                 const std::vector<int>& leg_cells) const {
  // Leg k joins pts[k] and pts[k+1] inside cell leg_cells[k]; pts[k] is in
  // that leg's region and in_prev[k] is the same node in the previous leg's.
  const std::size_t m = pts.size();
  std::vector<Slider> sliders(m);
  for (std::size_t k = 1; k + 1 < m; ++k) {
    const Cell& a = cells_[leg_cells[k - 1]];
    const Cell& b = cells_[leg_cells[k]];
    sliders[k] = make_slider(tube_, a.region, a.index, b.region, b.index, in_prev[k], pts[k]);
  }
  // Endpoint representations inside each leg's region.
  std::vector<TubePoint> left = in_prev, right = pts;
  for (int pass = 0; pass < 60; ++pass) {
    double gain = 0.0;
    for (std::size_t k = 1; k + 1 < m; ++k) {
      const Slider& sl = sliders[k];
      if (sl.fixed) continue;
      auto cost = [&](double t) {
        auto [in_prev, in_next] = sl.at(t);
        return region_chord(tube_, right[k - 1], in_prev) + region_chord(tube_, in_next, left[k + 1]);
      };
      double before = region_chord(tube_, right[k - 1], left[k]) + region_chord(tube_, right[k], left[k + 1]);
      double t = golden_min(cost, sl.lo, sl.hi);
      double after = cost(t);
      if (after < before) {
        auto [in_prev, in_next] = sl.at(t);
        left[k] = in_prev;
        right[k] = in_next;
        pts[k] = in_next;
        gain += before - after;
      }
    }
    if (gain < 1e-15) break;
  }
  pts = std::move(right);
  in_prev = std::move(left);
  double length = 0.0;
  for (std::size_t k = 0; k + 1 < m; ++k) length += region_chord(tube_, pts[k], in_prev[k + 1]);
  return length;
}

double TubeDistanceGraph::search(const TubePoint& p, const TubePoint& q, TubePath* out) const {
  tube_.validate(p);
  tube_.validate(q);
  const int cp = cell_of(p), cq = cell_of(q);
  const int ncell = static_cast<int>(cells_.size());

  double best = kInf;
  int best_node = -1;
  if (auto common = common_region(tube_, p, q)) best = region_chord(tube_, common->first, common->second);

  const std::size_t nodes = node_members_.size();
  std::vector<double> dist(nodes, kInf);
  std::vector<std::int32_t> pred(nodes, -1);
  std::vector<double> tail(nodes, kInf);
  {
    const Cell& c = cells_[cq];
    for (std::size_t k = 0; k < c.ids.size(); ++k) tail[c.ids[k]] = region_chord(tube_, q, c.points[k]);
  }
  relax(cp, p, 0.0, dist, pred, kSourceCode);

  using Entry = std::pair<double, std::int32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (std::int32_t id : cells_[cp].ids) heap.push({dist[id], id});
  std::vector<char> done(nodes, 0);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d >= best) break;
    if (done[u] || d > dist[u]) continue;
    done[u] = 1;
    if (d + tail[u] < best) {
      best = d + tail[u];
      best_node = u;
    }
    for (const Member& m : node_members_[u]) {
      const Cell& c = cells_[m.cell];
      const std::int32_t code = u * ncell + m.cell;
      if (relax(m.cell, c.points[m.slot], d, dist, pred, code) == 0) continue;
      for (std::int32_t id : c.ids) {
        if (pred[id] == code && !done[id] && dist[id] < best) heap.push({dist[id], id});
      }
    }
  }
  if (!std::isfinite(best)) throw NumericalFailure("tube distance graph is disconnected");
  if (best_node < 0) {
    if (out) {
      out->points = {p, q};
      out->length = best;
    }
    return best;
  }

  // Walk predecessors back to p, recording each leg's cell.
  auto point_in = [&](int node, int cell) {
    for (const Member& m : node_members_[node]) {
      if (m.cell == cell) return cells_[m.cell].points[m.slot];
    }
    throw NumericalFailure("tube graph node missing from its cell");
  };
  std::vector<TubePoint> rev{q};
  std::vector<int> rev_cells{cq};
  std::vector<int> rev_nodes;
  for (int v = best_node; v >= 0;) {
    rev_nodes.push_back(v);
    std::int32_t code = pred[v];
    if (code == kSourceCode) {
      rev_cells.push_back(cp);
      break;
    }
    rev_cells.push_back(code % ncell);
    v = code / ncell;
  }
  std::vector<TubePoint> pts{p};
  std::vector<int> leg_cells(rev_cells.rbegin(), rev_cells.rend());
  std::vector<TubePoint> in_prev{p};
  std::vector<int> path_nodes{-1};
  for (auto it = rev_nodes.rbegin(); it != rev_nodes.rend(); ++it) {
    std::size_t k = pts.size();
    pts.push_back(point_in(*it, leg_cells[k]));
    in_prev.push_back(point_in(*it, leg_cells[k - 1]));
    path_nodes.push_back(*it);
  }
  pts.push_back(q);
  in_prev.push_back(q);
  path_nodes.push_back(-1);
  double length = refine(pts, in_prev, leg_cells);

  // A corner pole joining two cells with no shared interface stays pinned
  // during refinement. Try detouring through each third cell at that pole.
  for (std::size_t k = 1; k + 1 < path_nodes.size(); ++k) {
    const int node = path_nodes[k];
    if (node_members_[node].size() < 3) continue;
    const Cell& ca = cells_[leg_cells[k - 1]];
    const Cell& cb = cells_[leg_cells[k]];
    if (!make_slider(tube_, ca.region, ca.index, cb.region, cb.index, in_prev[k], pts[k]).fixed) continue;
    const auto base_pts = pts, base_prev = in_prev;
    const auto base_cells = leg_cells, base_nodes = path_nodes;
    for (const Member& mid : node_members_[node]) {
      if (mid.cell == base_cells[k - 1] || mid.cell == base_cells[k]) continue;
      const Cell& cm = cells_[mid.cell];
      const TubePoint in_mid = cm.points[mid.slot];
      const TubePoint in_a = point_in(node, base_cells[k - 1]);
      const TubePoint in_b = point_in(node, base_cells[k]);
      // Both crossings start at the pole, where moving either alone is
      // neutral; seed each at the point nearest its outer neighbour.
      Slider s1 = make_slider(tube_, ca.region, ca.index, cm.region, cm.index, in_a, in_mid);
      Slider s2 = make_slider(tube_, cm.region, cm.index, cb.region, cb.index, in_mid, in_b);
      if (s1.fixed || s2.fixed) continue;
      auto [a1, m1] = s1.at(golden_min(
          [&](double t) { return region_chord(tube_, base_pts[k - 1], s1.at(t).first); }, s1.lo, s1.hi));
      auto [m2, b2] = s2.at(golden_min(
          [&](double t) { return region_chord(tube_, s2.at(t).second, base_prev[k + 1]); }, s2.lo, s2.hi));
      auto p2 = base_pts, prev2 = base_prev;
      auto cells2 = base_cells;
      auto nodes2 = base_nodes;
      p2[k] = m1;
      prev2[k] = a1;
      p2.insert(p2.begin() + k + 1, b2);
      prev2.insert(prev2.begin() + k + 1, m2);
      cells2.insert(cells2.begin() + k, mid.cell);
      nodes2.insert(nodes2.begin() + k + 1, node);
      double len2 = refine(p2, prev2, cells2);
      if (len2 < length) {
        length = len2;
        pts = std::move(p2);
        in_prev = std::move(prev2);
        leg_cells = std::move(cells2);
        path_nodes = std::move(nodes2);
      }
    }
  }
  length = std::min(length, best);
  if (out) {
    out->points = std::move(pts);
    out->length = length;
  }
  return length;
}

double TubeDistanceGraph::distance(const TubePoint& p, const TubePoint& q) const {
  return search(p, q, nullptr);
}

TubePath TubeDistanceGraph::path(const TubePoint& p, const TubePoint& q) const {
  TubePath out;
  search(p, q, &out);
  return out;
}

TubePoint TubeDistanceGraph::midpoint(const TubePoint& p, const TubePoint& q, double* length) const {
  TubePath path = this->path(p, q);
  std::vector<Leg> legs;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < path.points.size(); ++k) {
    auto common = common_region(tube_, path.points[k], path.points[k + 1]);
    if (!common) throw NumericalFailure("tube path leg leaves every region");
    double len = region_chord(tube_, common->first, common->second);
    legs.push_back({common->first, common->second, len});
    total += len;
  }
  if (length) *length = total;
  double target = 0.5 * total;
  for (const Leg& leg : legs) {
    if (target <= leg.length || &leg == &legs.back()) {
      double lambda = leg.length > 0.0 ? std::clamp(target / leg.length, 0.0, 1.0) : 0.0;
      return region_interpolate(tube_, leg.a, leg.b, lambda);
    }
    target -= leg.length;
  }
  return p;
}

metric::DistanceOracle<TubePoint> graph_oracle(std::shared_ptr<const TubeDistanceGraph> graph) {
  metric::DistanceOracle<TubePoint> oracle;
  oracle.error_bound = graph->error_bound();
  oracle.surface_id = graph->tube().id();
  oracle.distance = [graph](const TubePoint& a, const TubePoint& b) { return graph->distance(a, b); };
  return oracle;
}

metric::DistanceOracle<TubePoint> mesh_distance_oracle(const TubeMesh& mesh) {
  return graph_oracle(std::make_shared<const TubeDistanceGraph>(mesh.tube(), mesh.h()));
}

}  // namespace geolab::tube
