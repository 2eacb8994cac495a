#include "geolab/polygon/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "geolab/errors.hpp"
#include "geolab/parallel.hpp"
#include "geolab/polygon/mesh_oracle.hpp"

namespace geolab::polygon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Constraint alpha + s * beta <= 0 on the direction parameter s.
bool clip_leq(double alpha, double beta, double& lo, double& hi) {
  const double eps = 1e-14;
  if (beta > eps) {
    hi = std::min(hi, -alpha / beta);
  } else if (beta < -eps) {
    lo = std::max(lo, -alpha / beta);
  } else if (alpha > 1e-14) {
    return false;
  }
  return lo <= hi + 1e-12 * (1.0 + std::abs(hi));
}

struct Unfolded {
  Vec2 a;  // geometric-CCW start of the crossed edge in its copy
  Vec2 b;
  int edge;
  bool flipped;  // copy orientation reversed: a is the image of vertex edge+1
  Face from;
};

class BranchAndBound {
 public:
  BranchAndBound(const DoubledNgon& ngon, const PolygonPoint& p, const PolygonPoint& q,
                 const ExactDistanceConfig& cfg)
      : ngon_(ngon), p_(p), q_(q), cfg_(cfg),
        P_(ngon.position(p)), Q_(ngon.position(q)) {}

  DistanceResult run(double incumbent) {
    bound_ = incumbent;
    std::vector<Face> start_faces;
    if (auto* in = as_interior(p_)) {
      start_faces = {in->face};
    } else {
      start_faces = {Face::kTop, Face::kBottom};
    }
    for (Face f : start_faces) {
      start_face_ = f;
      if (face_compatible(q_, f, -1)) {
        consider(Q_, f);
      }
      for (int e = 0; e < ngon_.n(); ++e) {
        if (auto* pe = as_edge(p_); pe && pe->edge == e) continue;
        Vec2 nu = ngon_.outward_normal(e);
        nu_ = nu;
        tau_ = rot90(nu);
        double lo = -kInf, hi = kInf;
        Isometry2 identity;
        if (!clip_edge(identity, e, lo, hi)) continue;
        double lb = segment_distance(P_, ngon_.vertex(e), ngon_.vertex(e + 1));
        if (lb > bound_ + cfg_.prune_slack) continue;
        stack_.clear();
        push_crossing(identity, e, f);
        descend(identity.compose(ngon_.edge_reflection(e)), e, opposite(f), lo, hi, 1);
        stack_.pop_back();
      }
    }
    if (!found_) {
      throw NumericalFailure("branch-and-bound found no path below the seeded incumbent");
    }
    best_.nodes_explored = nodes_;
    return best_;
  }

 private:
  static bool face_compatible(const PolygonPoint& q, Face face, int last_edge) {
    if (auto* in = as_interior(q)) return in->face == face;
    return std::get<EdgePoint>(q).edge != last_edge;
  }

  // Geometric-CCW endpoints of edge e of copy g.
  void copy_edge(const Isometry2& g, int e, Vec2& a, Vec2& b, bool& flipped) const {
    Vec2 va = g.apply(ngon_.vertex(e));
    Vec2 vb = g.apply(ngon_.vertex(e + 1));
    flipped = g.det() < 0.0;
    if (flipped) std::swap(va, vb);
    a = va;
    b = vb;
  }

  // Rays leaving a convex copy through edge [a, b] have a on their right and b
  // on their left; intersect that with the current direction interval.
  bool clip_edge(const Isometry2& g, int e, double& lo, double& hi) const {
    Vec2 a, b;
    bool flipped;
    copy_edge(g, e, a, b, flipped);
    Vec2 wa = a - P_;
    Vec2 wb = b - P_;
    if (!clip_leq(cross(nu_, wa), cross(tau_, wa), lo, hi)) return false;
    return clip_leq(-cross(nu_, wb), -cross(tau_, wb), lo, hi);
  }

  void push_crossing(const Isometry2& g, int e, Face from) {
    Unfolded u;
    copy_edge(g, e, u.a, u.b, u.flipped);
    u.edge = e;
    u.from = from;
    stack_.push_back(u);
  }

  void descend(const Isometry2& g, int last_edge, Face face, double lo, double hi, int depth) {
    ++nodes_;
    if (face_compatible(q_, face, last_edge)) {
      Vec2 target = g.apply(Q_);
      Vec2 v = target - P_;
      double along = dot(v, nu_);
      if (along > 0.0) {
        double s = dot(v, tau_) / along;
        double slack = 1e-12 * (1.0 + std::abs(s));
        if (s >= lo - slack && s <= hi + slack) consider(target, face);
      }
    }
    struct Child {
      int edge;
      double lb;
      double lo, hi;
    };
    std::vector<Child> children;
    for (int e = 0; e < ngon_.n(); ++e) {
      if (e == last_edge) continue;
      double clo = lo, chi = hi;
      if (!clip_edge(g, e, clo, chi)) continue;
      Vec2 a, b;
      bool flipped;
      copy_edge(g, e, a, b, flipped);
      double lb = segment_distance(P_, a, b);
      if (lb > bound_ + cfg_.prune_slack) continue;
      children.push_back({e, lb, clo, chi});
    }
    std::sort(children.begin(), children.end(),
              [](const Child& x, const Child& y) { return x.lb < y.lb; });
    for (const auto& c : children) {
      if (c.lb > bound_ + cfg_.prune_slack) continue;
      if (depth + 1 > cfg_.max_depth) {
        throw BudgetExhausted("exact_distance: edge sequences longer than max_depth=" +
                              std::to_string(cfg_.max_depth) + " could not be pruned");
      }
      push_crossing(g, c.edge, face);
      descend(g.compose(ngon_.edge_reflection(c.edge)), c.edge, opposite(face), c.lo, c.hi,
              depth + 1);
      stack_.pop_back();
    }
  }

  // Straight unfolded chord from P to target crossing every edge on the stack.
  void consider(Vec2 target, Face /*end_face*/) {
    Vec2 v = target - P_;
    double len = v.norm();
    if (found_ && len >= best_.length) return;
    if (len > bound_ + cfg_.prune_slack) return;
    GeodesicPath path;
    path.start = p_;
    path.end = q_;
    path.start_face = start_face_;
    path.length = len;
    path.vertex_margin = kInf;
    for (const auto& cr : stack_) {
      // Intersection of P + lambda v with the line through a, b.
      Vec2 ab = cr.b - cr.a;
      double denom = cross(v, ab);
      double mu = std::abs(denom) > 0.0 ? cross(v, P_ - cr.a) / denom : 0.5;
      // mu runs a -> b geometrically; convert to the base edge's orientation.
      mu = std::clamp(mu, 0.0, 1.0);
      double u = cr.flipped ? 1.0 - mu : mu;
      path.crossings.push_back({cr.edge, u, cr.from});
      path.vertex_margin = std::min(path.vertex_margin, std::min(u, 1.0 - u) * ngon_.side());
    }
    best_.length = len;
    best_.path = std::move(path);
    bound_ = std::min(bound_, len);
    found_ = true;
  }

  const DoubledNgon& ngon_;
  PolygonPoint p_, q_;
  const ExactDistanceConfig& cfg_;
  Vec2 P_, Q_;
  Vec2 nu_, tau_;
  Face start_face_ = Face::kTop;
  std::vector<Unfolded> stack_;
  double bound_ = kInf;
  bool found_ = false;
  std::size_t nodes_ = 0;
  DistanceResult best_;
};

// Length of a concrete path touching the boundary once: p -> x -> q.
double one_crossing_bound(const DoubledNgon& ngon, Vec2 P, Vec2 Q, int samples) {
  double best = kInf;
  for (int e = 0; e < ngon.n(); ++e) {
    for (int k = 0; k < samples; ++k) {
      Vec2 x = ngon.edge_position(e, (k + 0.5) / samples);
      best = std::min(best, (x - P).norm() + (Q - x).norm());
    }
  }
  return best;
}

}  // namespace

DistanceResult exact_distance(const DoubledNgon& ngon, const PolygonPoint& p,
                              const PolygonPoint& q, const ExactDistanceConfig& cfg) {
  ngon.validate(p);
  ngon.validate(q);
  if (p == q) {
    DistanceResult r;
    r.path.start = p;
    r.path.end = q;
    r.path.vertex_margin = kInf;
    return r;
  }
  double incumbent;
  if (cfg.seed_mesh) {
    incumbent = cfg.seed_mesh->distance(p, q) + 1e-12;
  } else {
    incumbent = one_crossing_bound(ngon, ngon.position(p), ngon.position(q),
                                   std::max(1, cfg.edge_samples)) *
                    (1.0 + 1e-12) +
                1e-15;
  }
  BranchAndBound search(ngon, p, q, cfg);
  return search.run(incumbent);
}

metric::DistanceOracle<PolygonPoint> exact_oracle(const DoubledNgon& ngon,
                                                  ExactDistanceConfig cfg) {
  metric::DistanceOracle<PolygonPoint> oracle;
  oracle.distance = [ngon, cfg](const PolygonPoint& a, const PolygonPoint& b) {
    return exact_distance(ngon, a, b, cfg).length;
  };
  oracle.error_bound = 0.0;
  oracle.surface_id = ngon.id();
  return oracle;
}

std::vector<Vec2> path_polyline(const DoubledNgon& ngon, const GeodesicPath& path) {
  std::vector<Vec2> pts{ngon.position(path.start)};
  for (const auto& c : path.crossings) pts.push_back(ngon.edge_position(c.edge, c.u));
  pts.push_back(ngon.position(path.end));
  return pts;
}

namespace {

// Dihedral-invariant sample set: a barycentric grid on the fundamental triangle
// (center, midpoint of edge 0, vertex 1) and all its images, on both faces.
std::vector<PolygonPoint> dihedral_samples(const DoubledNgon& ngon, int grid,
                                           std::size_t& fundamental_count) {
  const int n = ngon.n();
  const Vec2 m0 = ngon.edge_midpoint(0);
  const Vec2 v1 = ngon.vertex(1);
  std::vector<Vec2> base;
  for (int i = 0; i <= grid; ++i) {
    for (int j = 0; i + j <= grid; ++j) {
      if (j == grid) continue;  // vertex
      base.push_back(m0 * (double(i) / grid) + v1 * (double(j) / grid));
    }
  }
  auto classify = [&](Vec2 x, Face face) -> PolygonPoint {
    const double tol = 1e-12 * ngon.side();
    for (int e = 0; e < n; ++e) {
      if (std::abs(dot(x, ngon.outward_normal(e)) - ngon.apothem()) < tol) {
        Vec2 a = ngon.vertex(e);
        Vec2 b = ngon.vertex(e + 1);
        double u = dot(x - a, b - a) / (b - a).norm2();
        return EdgePoint{e, std::clamp(u, 1e-15, 1.0 - 1e-15)};
      }
    }
    return InteriorPoint{face, x};
  };
  std::map<std::tuple<long long, long long, int>, PolygonPoint> unique;
  auto add = [&](Vec2 x, Face face) {
    PolygonPoint pt = classify(x, face);
    int tag = as_edge(pt) ? 2 : static_cast<int>(face);
    auto key = std::make_tuple(std::llround(x.x * 1e9), std::llround(x.y * 1e9), tag);
    unique.emplace(key, pt);
  };
  std::vector<PolygonPoint> out;
  for (Vec2 x : base) out.push_back(classify(x, Face::kTop));
  fundamental_count = out.size();
  for (Face face : {Face::kTop, Face::kBottom}) {
    for (int k = 0; k < n; ++k) {
      double ang = 2.0 * std::numbers::pi * k / n;
      double c = std::cos(ang), s = std::sin(ang);
      for (Vec2 x : base) {
        Vec2 r{c * x.x - s * x.y, s * x.x + c * x.y};
        add(r, face);
        add({r.x, -r.y}, face);  // reflection across the x-axis
      }
    }
  }
  for (auto& [key, pt] : unique) out.push_back(pt);
  return out;
}

}  // namespace

DiameterEstimate approximate_diameter(const DoubledNgon& ngon, int grid,
                                      const ExactDistanceConfig& cfg) {
  if (grid < 8) throw ValidationError("approximate_diameter needs grid >= 8");
  std::size_t fundamental = 0;
  std::vector<PolygonPoint> pts = dihedral_samples(ngon, grid, fundamental);
  const std::size_t total = pts.size() - fundamental;
  std::vector<double> row_max(fundamental, 0.0);
  parallel_for(fundamental, [&](std::size_t i) {
    double m = 0.0;
    for (std::size_t j = fundamental; j < pts.size(); ++j) {
      m = std::max(m, exact_distance(ngon, pts[i], pts[j], cfg).length);
    }
    row_max[i] = m;
  });
  DiameterEstimate est;
  est.value = *std::max_element(row_max.begin(), row_max.end());
  est.error_bound = 2.0 * ngon.circumradius() / grid;
  est.grid = grid;
  est.pairs = fundamental * total;
  return est;
}

}  // namespace geolab::polygon
