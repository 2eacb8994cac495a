#include "geolab/polygon/ngon.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "geolab/errors.hpp"

namespace geolab::polygon {

const char* face_name(Face f) { return f == Face::kTop ? "top" : "bottom"; }

Isometry2 Isometry2::compose(const Isometry2& o) const {
  Isometry2 r;
  r.m00 = m00 * o.m00 + m01 * o.m10;
  r.m01 = m00 * o.m01 + m01 * o.m11;
  r.m10 = m10 * o.m00 + m11 * o.m10;
  r.m11 = m10 * o.m01 + m11 * o.m11;
  r.t = apply(o.t);
  return r;
}

Isometry2 Isometry2::inverse() const {
  // Orthogonal linear part: inverse is the transpose.
  Isometry2 r;
  r.m00 = m00;
  r.m01 = m10;
  r.m10 = m01;
  r.m11 = m11;
  r.t = -r.apply_linear(t);
  return r;
}

Isometry2 Isometry2::reflection(Vec2 point_on_line, Vec2 nu) {
  Isometry2 r;
  r.m00 = 1.0 - 2.0 * nu.x * nu.x;
  r.m01 = -2.0 * nu.x * nu.y;
  r.m10 = r.m01;
  r.m11 = 1.0 - 2.0 * nu.y * nu.y;
  r.t = nu * (2.0 * dot(point_on_line, nu));
  return r;
}

DoubledNgon::DoubledNgon(int n, double side) : n_(n), side_(side) {
  if (n < 3) throw ValidationError("doubled polygon needs n >= 3, got " + std::to_string(n));
  if (!(side > 0.0)) throw ValidationError("side length must be positive");
  const double pi = std::numbers::pi;
  apothem_ = side / (2.0 * std::tan(pi / n));
  circumradius_ = side / (2.0 * std::sin(pi / n));
  for (int i = 0; i < n; ++i) {
    double angle = (2 * i - 1) * pi / n;
    vertices_.push_back({circumradius_ * std::cos(angle), circumradius_ * std::sin(angle)});
  }
  for (int i = 0; i < n; ++i) {
    double angle = 2.0 * pi * i / n;
    Vec2 nu{std::cos(angle), std::sin(angle)};
    normals_.push_back(nu);
    reflections_.push_back(Isometry2::reflection(vertices_[i], nu));
  }
}

double DoubledNgon::interior_angle() const { return (n_ - 2) * std::numbers::pi / n_; }

double DoubledNgon::width_across_flats() const {
  if (!has_parallel_edges()) throw ValidationError("odd polygons have no parallel edges");
  return 2.0 * apothem_;
}

int DoubledNgon::opposite_edge(int e) const {
  if (!has_parallel_edges()) throw ValidationError("odd polygons have no parallel edges");
  return wrap(e + n_ / 2);
}

Vec2 DoubledNgon::edge_position(int e, double u) const {
  Vec2 a = vertex(e);
  Vec2 b = vertex(e + 1);
  return a + (b - a) * u;
}

double DoubledNgon::signed_boundary_distance(Vec2 p) const {
  double worst = -1e300;
  for (int i = 0; i < n_; ++i) worst = std::max(worst, dot(p, normals_[i]) - apothem_);
  return worst;
}

Vec2 DoubledNgon::position(const PolygonPoint& p) const {
  if (auto* in = as_interior(p)) return in->xy;
  const auto& e = std::get<EdgePoint>(p);
  return edge_position(e.edge, e.u);
}

PolygonPoint DoubledNgon::interior(Face face, Vec2 xy) const {
  PolygonPoint p = InteriorPoint{face, xy};
  validate(p);
  return p;
}

PolygonPoint DoubledNgon::on_edge(int edge, double u) const {
  PolygonPoint p = EdgePoint{edge, u};
  validate(p);
  return p;
}

void DoubledNgon::validate(const PolygonPoint& p) const {
  if (auto* in = as_interior(p)) {
    if (!(signed_boundary_distance(in->xy) < 1e-12 * side_)) {
      throw ValidationError("interior point lies outside the polygon");
    }
    return;
  }
  const auto& e = std::get<EdgePoint>(p);
  if (e.edge < 0 || e.edge >= n_) throw ValidationError("edge index out of range");
  if (!(e.u > 0.0 && e.u < 1.0)) {
    throw ValidationError("edge parameter must lie strictly in (0, 1); vertices are excluded");
  }
}

std::string DoubledNgon::id() const {
  std::ostringstream os;
  os.precision(17);
  os << "doubled-ngon:n=" << n_ << ",side=" << side_;
  return os.str();
}

namespace {

// Face shared by a segment's endpoints, if they pin one down.
bool segment_face(const PolygonPoint& a, const PolygonPoint& b, Face& face) {
  auto* ia = as_interior(a);
  auto* ib = as_interior(b);
  if (ia && ib) {
    if (ia->face != ib->face) throw ValidationError("curve segment jumps between faces");
    face = ia->face;
    return true;
  }
  if (ia) { face = ia->face; return true; }
  if (ib) { face = ib->face; return true; }
  return false;
}

}  // namespace

double PolygonSpace::segment_length(const Point& a, const Point& b) const {
  Face face;
  if (!segment_face(a, b, face)) {
    auto* ea = as_edge(a);
    auto* eb = as_edge(b);
    if (ea->edge != eb->edge) {
      throw ValidationError("segment between edge points on different edges has no face");
    }
  }
  return (ngon_.position(a) - ngon_.position(b)).norm();
}

PolygonPoint PolygonSpace::interpolate(const Point& a, const Point& b, double lambda) const {
  if (lambda <= 0.0) return a;
  if (lambda >= 1.0) return b;
  Face face;
  if (!segment_face(a, b, face)) {
    auto* ea = as_edge(a);
    auto* eb = as_edge(b);
    if (ea->edge != eb->edge) {
      throw ValidationError("segment between edge points on different edges has no face");
    }
    return EdgePoint{ea->edge, ea->u + (eb->u - ea->u) * lambda};
  }
  Vec2 pa = ngon_.position(a);
  Vec2 pb = ngon_.position(b);
  return InteriorPoint{face, pa + (pb - pa) * lambda};
}

}  // namespace geolab::polygon
