#include "geolab/tube/surface.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "geolab/errors.hpp"

namespace geolab::tube {

using polygon::DoubledNgon;
using polygon::EdgePoint;
using polygon::Face;
using polygon::InteriorPoint;
using polygon::PolygonPoint;

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  return a < 0.0 ? a + 2.0 * kPi : a;
}

Vec2 planar(Vec3 x) { return {x.x, x.y}; }

// Unit direction of a lune point: azimuth psi, polar angle phi from +z.
Vec3 direction(double psi, double phi) {
  return {std::sin(phi) * std::cos(psi), std::sin(phi) * std::sin(psi), std::cos(phi)};
}

// Azimuth of edge i-1's outward normal, where lune i starts.
double lune_start(const DoubledNgon& g, int vertex) {
  return 2.0 * kPi * g.wrap(vertex - 1) / g.n();
}

// Alpha in [0, beta] for a horizontal direction at lune `vertex`.
double lune_alpha(const DoubledNgon& g, int vertex, Vec2 horizontal) {
  const double beta = 2.0 * kPi / g.n();
  double alpha = wrap_angle(std::atan2(horizontal.y, horizontal.x) - lune_start(g, vertex));
  if (alpha > beta) alpha = (alpha - beta < 2.0 * kPi - alpha) ? beta : 0.0;
  return alpha;
}

}  // namespace

const char* region_name(Region r) {
  switch (r) {
    case Region::kFace: return "face";
    case Region::kCylinder: return "cylinder";
    case Region::kSphere: return "sphere";
  }
  return "?";
}

TubeSurface::TubeSurface(DoubledNgon base, double eps) : base_(std::move(base)), eps_(eps) {
  const double bound = base_.apothem() / 2.0;
  // Relative margin so a rounded-up apothem cannot admit eps = apothem/2.
  if (!(eps > 0.0 && eps < bound * (1.0 - 1e-12))) {
    std::ostringstream os;
    os.precision(17);
    os << "tube radius eps=" << eps << " must satisfy 0 < eps < apothem/2 = " << bound;
    throw ValidationError(os.str());
  }
}

TubeSurface build_tube(const DoubledNgon& base, double eps) { return TubeSurface(base, eps); }

double TubeSurface::lune_angle() const { return 2.0 * kPi / base_.n(); }

double TubeSurface::area() const {
  return 2.0 * base_.face_area() + kPi * eps_ * base_.perimeter() + 4.0 * kPi * eps_ * eps_;
}

std::string TubeSurface::id() const {
  std::ostringstream os;
  os.precision(17);
  os << "tube:" << base_.id() << ",eps=" << eps_;
  return os.str();
}

Vec3 TubeSurface::ambient(const TubePoint& p) const {
  switch (p.region) {
    case Region::kFace:
      return {p.a, p.b, p.index == 0 ? eps_ : -eps_};
    case Region::kCylinder: {
      Vec2 e = base_.edge_position(p.index, p.a);
      Vec2 nu = base_.outward_normal(p.index);
      double r = eps_ * std::sin(p.b);
      return {e.x + r * nu.x, e.y + r * nu.y, eps_ * std::cos(p.b)};
    }
    case Region::kSphere: {
      Vec2 v = base_.vertex(p.index);
      Vec3 d = direction(lune_start(base_, p.index) + p.a, p.b);
      return {v.x + eps_ * d.x, v.y + eps_ * d.y, eps_ * d.z};
    }
  }
  return {};
}

Vec3 TubeSurface::normal(const TubePoint& p) const {
  switch (p.region) {
    case Region::kFace:
      return {0.0, 0.0, p.index == 0 ? 1.0 : -1.0};
    case Region::kCylinder: {
      Vec2 nu = base_.outward_normal(p.index);
      return {std::sin(p.b) * nu.x, std::sin(p.b) * nu.y, std::cos(p.b)};
    }
    case Region::kSphere:
      return direction(lune_start(base_, p.index) + p.a, p.b);
  }
  return {};
}

double TubeSurface::distance_to_core(Vec3 x) const {
  Vec2 xy = planar(x);
  double planar_dist = 0.0;
  if (base_.signed_boundary_distance(xy) > 0.0) {
    planar_dist = INFINITY;
    for (int e = 0; e < n(); ++e) {
      planar_dist = std::min(planar_dist, segment_distance(xy, base_.vertex(e), base_.vertex(e + 1)));
    }
  }
  return std::hypot(planar_dist, x.z);
}

TubePoint TubeSurface::from_ambient(Vec3 x) const {
  Vec2 xy = planar(x);
  if (base_.signed_boundary_distance(xy) <= 0.0) {
    return TubePoint::face(x.z >= 0.0 ? Face::kTop : Face::kBottom, xy);
  }
  int best_edge = 0;
  double best_u = 0.0, best_d = INFINITY;
  const double s = base_.side();
  for (int e = 0; e < n(); ++e) {
    Vec2 a = base_.vertex(e), b = base_.vertex(e + 1);
    double u = std::clamp(dot(xy - a, b - a) / (s * s), 0.0, 1.0);
    double d = (xy - (a + (b - a) * u)).norm();
    if (d < best_d) {
      best_d = d;
      best_edge = e;
      best_u = u;
    }
  }
  if (best_u > 0.0 && best_u < 1.0) {
    double outward = std::max(0.0, dot(xy - base_.edge_position(best_edge, best_u),
                                       base_.outward_normal(best_edge)));
    return TubePoint::cylinder(best_edge, best_u, std::atan2(outward, x.z));
  }
  int vertex = best_u <= 0.0 ? best_edge : base_.wrap(best_edge + 1);
  Vec2 d = xy - base_.vertex(vertex);
  return TubePoint::sphere(vertex, lune_alpha(base_, vertex, d), std::atan2(d.norm(), x.z));
}

void TubeSurface::validate(const TubePoint& p) const {
  if (!std::isfinite(p.a) || !std::isfinite(p.b)) throw ValidationError("tube point has non-finite coordinates");
  switch (p.region) {
    case Region::kFace:
      if (p.index != 0 && p.index != 1) throw ValidationError("face index must be 0 (top) or 1 (bottom)");
      if (base_.signed_boundary_distance({p.a, p.b}) > 1e-12 * base_.side()) {
        throw ValidationError("face point lies outside the polygon");
      }
      return;
    case Region::kCylinder:
      if (p.index < 0 || p.index >= n()) throw ValidationError("cylinder index out of range");
      if (!(p.a >= 0.0 && p.a <= 1.0)) throw ValidationError("cylinder u must lie in [0, 1]");
      if (!(p.b >= 0.0 && p.b <= kPi)) throw ValidationError("cylinder phi must lie in [0, pi]");
      return;
    case Region::kSphere:
      if (p.index < 0 || p.index >= n()) throw ValidationError("sphere index out of range");
      if (!(p.a >= 0.0 && p.a <= lune_angle())) throw ValidationError("sphere alpha must lie in [0, 2pi/n]");
      if (!(p.b >= 0.0 && p.b <= kPi)) throw ValidationError("sphere phi must lie in [0, pi]");
      return;
  }
}

std::optional<TubePoint> TubeSurface::in_region(const TubePoint& p, Region region, int index,
                                                double tol) const {
  if (p.region == region && p.index == index) return p;
  const Vec3 x = ambient(p);
  const Vec2 xy = planar(x);
  const double s = base_.side();
  switch (region) {
    case Region::kFace: {
      double z = index == 0 ? eps_ : -eps_;
      if (std::abs(x.z - z) > tol || base_.signed_boundary_distance(xy) > tol) return std::nullopt;
      return TubePoint::face(index == 0 ? Face::kTop : Face::kBottom, xy);
    }
    case Region::kCylinder: {
      Vec2 a = base_.vertex(index), b = base_.vertex(index + 1);
      Vec2 dir = (b - a) * (1.0 / s);
      double along = dot(xy - a, dir);
      if (along < -tol || along > s + tol) return std::nullopt;
      double u = std::clamp(along / s, 0.0, 1.0);
      Vec2 r = xy - base_.edge_position(index, u);
      double outward = dot(r, base_.outward_normal(index));
      if (std::abs(dot(r, dir)) > tol || outward < -tol) return std::nullopt;
      if (std::abs(std::hypot(outward, x.z) - eps_) > tol) return std::nullopt;
      return TubePoint::cylinder(index, u, std::atan2(std::max(outward, 0.0), x.z));
    }
    case Region::kSphere: {
      Vec2 v = base_.vertex(index);
      Vec2 d = xy - v;
      if (std::abs(std::hypot(d.norm(), x.z) - eps_) > tol) return std::nullopt;
      double phi = std::atan2(d.norm(), x.z);
      if (d.norm() <= tol) return TubePoint::sphere(index, 0.0, phi);
      const double beta = lune_angle();
      double raw = wrap_angle(std::atan2(d.y, d.x) - lune_start(base_, index));
      double slack = tol / d.norm();
      if (raw > beta + slack && raw < 2.0 * kPi - slack) return std::nullopt;
      return TubePoint::sphere(index, lune_alpha(base_, index, d), phi);
    }
  }
  return std::nullopt;
}

PolygonPoint TubeSurface::project(const TubePoint& p) const {
  constexpr double nudge = 1e-9;
  switch (p.region) {
    case Region::kFace: {
      Vec2 xy{p.a, p.b};
      if (base_.signed_boundary_distance(xy) < -1e-12 * base_.side()) {
        return InteriorPoint{p.index == 0 ? Face::kTop : Face::kBottom, xy};
      }
      TubePoint q = from_ambient({xy.x * (1.0 + 1e-12), xy.y * (1.0 + 1e-12), 0.0});
      if (q.region == Region::kCylinder) return EdgePoint{q.index, std::clamp(q.a, nudge, 1.0 - nudge)};
      return q.a >= lune_angle() / 2 ? PolygonPoint{EdgePoint{q.index, nudge}}
                                     : PolygonPoint{EdgePoint{base_.wrap(q.index - 1), 1.0 - nudge}};
    }
    case Region::kCylinder:
      return EdgePoint{p.index, std::clamp(p.a, nudge, 1.0 - nudge)};
    case Region::kSphere:
      return p.a >= lune_angle() / 2 ? PolygonPoint{EdgePoint{p.index, nudge}}
                                     : PolygonPoint{EdgePoint{base_.wrap(p.index - 1), 1.0 - nudge}};
  }
  return InteriorPoint{};
}

double region_chord(const TubeSurface& tube, const TubePoint& a, const TubePoint& b) {
  if (a.region != b.region || a.index != b.index) {
    throw ValidationError("region_chord needs two points of the same region");
  }
  switch (a.region) {
    case Region::kFace:
      return std::hypot(a.a - b.a, a.b - b.b);
    case Region::kCylinder:
      return std::hypot((a.a - b.a) * tube.base().side(), (a.b - b.b) * tube.eps());
    case Region::kSphere: {
      Vec3 da = tube.normal(a), db = tube.normal(b);
      double chord = (da - db).norm();
      return 2.0 * std::asin(std::min(1.0, chord / 2.0)) * tube.eps();
    }
  }
  return 0.0;
}

TubePoint region_interpolate(const TubeSurface& tube, const TubePoint& a, const TubePoint& b,
                             double lambda) {
  if (a.region != b.region || a.index != b.index) {
    throw ValidationError("region_interpolate needs two points of the same region");
  }
  if (lambda <= 0.0) return a;
  if (lambda >= 1.0) return b;
  if (a.region == Region::kFace) {
    return {a.region, a.index, a.a + (b.a - a.a) * lambda, a.b + (b.b - a.b) * lambda};
  }
  if (a.region == Region::kCylinder) {
    return TubePoint::cylinder(a.index, std::clamp(a.a + (b.a - a.a) * lambda, 0.0, 1.0),
                               std::clamp(a.b + (b.b - a.b) * lambda, 0.0, kPi));
  }
  Vec3 da = tube.normal(a), db = tube.normal(b);
  double theta = 2.0 * std::asin(std::min(1.0, (da - db).norm() / 2.0));
  if (theta < 1e-15) return a;
  if (theta > kPi - 1e-12) {
    // Pole to pole: follow a's meridian (or b's, or the middle one).
    bool a_pole = std::sin(a.b) < 1e-12, b_pole = std::sin(b.b) < 1e-12;
    double alpha = !a_pole ? a.a : (!b_pole ? b.a : tube.lune_angle() / 2);
    return TubePoint::sphere(a.index, alpha, std::clamp(a.b + (b.b - a.b) * lambda, 0.0, kPi));
  }
  Vec3 d = (da * std::sin((1.0 - lambda) * theta) + db * std::sin(lambda * theta)) *
           (1.0 / std::sin(theta));
  d = unit(d);
  double phi = std::acos(std::clamp(d.z, -1.0, 1.0));
  Vec2 horizontal{d.x, d.y};
  double alpha = horizontal.norm() < 1e-15 ? 0.0 : lune_alpha(tube.base(), a.index, horizontal);
  return TubePoint::sphere(a.index, alpha, phi);
}

std::optional<std::pair<TubePoint, TubePoint>> common_region(const TubeSurface& tube,
                                                             const TubePoint& a,
                                                             const TubePoint& b) {
  if (auto b2 = tube.in_region(b, a.region, a.index)) return std::make_pair(a, *b2);
  if (auto a2 = tube.in_region(a, b.region, b.index)) return std::make_pair(*a2, b);
  for (int f = 0; f < 2; ++f) {
    auto a2 = tube.in_region(a, Region::kFace, f);
    auto b2 = a2 ? tube.in_region(b, Region::kFace, f) : std::nullopt;
    if (a2 && b2) return std::make_pair(*a2, *b2);
  }
  for (Region r : {Region::kCylinder, Region::kSphere}) {
    for (int i = 0; i < tube.n(); ++i) {
      auto a2 = tube.in_region(a, r, i);
      auto b2 = a2 ? tube.in_region(b, r, i) : std::nullopt;
      if (a2 && b2) return std::make_pair(*a2, *b2);
    }
  }
  return std::nullopt;
}

double TubeSpace::segment_length(const Point& a, const Point& b) const {
  auto c = common_region(tube_, a, b);
  if (!c) throw ValidationError("curve segment endpoints share no region of the tube");
  return region_chord(tube_, c->first, c->second);
}

TubePoint TubeSpace::interpolate(const Point& a, const Point& b, double lambda) const {
  if (lambda <= 0.0) return a;
  if (lambda >= 1.0) return b;
  auto c = common_region(tube_, a, b);
  if (!c) throw ValidationError("curve segment endpoints share no region of the tube");
  return region_interpolate(tube_, c->first, c->second, lambda);
}

}  // namespace geolab::tube
