#pragma once

// Y_{n,eps}: boundary of the eps-neighbourhood of the flat n-gon in R^3. It is
// made of two flat faces at z = +-eps, n half-cylinders of radius eps along the
// edges, and n spherical lunes of radius eps at the vertices.
//
// Region coordinates:
//   face     index 0 (top) / 1 (bottom), (a, b) = (x, y) in the polygon
//   cylinder index = edge i, a = u in [0, 1] along the edge, b = phi in [0, pi]
//            measured from the top (+z) towards the bottom
//   sphere   index = vertex i, a = alpha in [0, 2pi/n] measured from the
//            outward normal of edge i-1, b = phi in [0, pi] from +z

#include <numbers>
#include <optional>
#include <string>

#include "geolab/polygon/ngon.hpp"
#include "geolab/vec.hpp"

namespace geolab::tube {

enum class Region { kFace, kCylinder, kSphere };
const char* region_name(Region r);

struct TubePoint {
  Region region = Region::kFace;
  int index = 0;
  double a = 0.0;
  double b = 0.0;

  static TubePoint face(polygon::Face f, Vec2 xy) {
    return {Region::kFace, f == polygon::Face::kTop ? 0 : 1, xy.x, xy.y};
  }
  static TubePoint cylinder(int edge, double u, double phi) {
    return {Region::kCylinder, edge, u, phi};
  }
  static TubePoint sphere(int vertex, double alpha, double phi) {
    return {Region::kSphere, vertex, alpha, phi};
  }
  bool operator==(const TubePoint&) const = default;
};

class TubeSurface {
 public:
  // Throws ValidationError unless 0 < eps < apothem / 2.
  TubeSurface(polygon::DoubledNgon base, double eps);

  const polygon::DoubledNgon& base() const { return base_; }
  double eps() const { return eps_; }
  int n() const { return base_.n(); }
  // Opening angle of each lune, 2pi/n.
  double lune_angle() const;
  // 2A + pi eps P + 4 pi eps^2.
  double area() const;
  double face_area() const { return base_.face_area(); }
  double cylinder_area() const { return base_.side() * std::numbers::pi * eps_; }
  double lune_area() const { return 2.0 * lune_angle() * eps_ * eps_; }
  std::string id() const;

  Vec3 ambient(const TubePoint& p) const;
  // Outward unit normal at p (for faces, +-z).
  Vec3 normal(const TubePoint& p) const;
  // Nearest-region coordinates of a point on (or near) the surface.
  TubePoint from_ambient(Vec3 x) const;
  // Distance from x to the flat polygon in R^3; the surface is its eps level set.
  double distance_to_core(Vec3 x) const;

  // Throws ValidationError for out-of-range coordinates.
  void validate(const TubePoint& p) const;
  // Coordinates of p in the given region when p lies on that region's closure.
  std::optional<TubePoint> in_region(const TubePoint& p, Region region, int index,
                                     double tol = 1e-9) const;
  // Nearest point of X_n. Points over a vertex are not representable there and
  // are nudged onto an adjacent edge by 1e-9 of the side length.
  polygon::PolygonPoint project(const TubePoint& p) const;

 private:
  polygon::DoubledNgon base_;
  double eps_;
};

TubeSurface build_tube(const polygon::DoubledNgon& base, double eps);

// CurveSpace for Y_{n,eps}. Consecutive breakpoints must share a region
// closure; segments are intrinsic chords inside that region.
class TubeSpace {
 public:
  using Point = TubePoint;
  explicit TubeSpace(TubeSurface tube) : tube_(std::move(tube)) {}

  const TubeSurface& tube() const { return tube_; }
  double segment_length(const Point& a, const Point& b) const;
  Point interpolate(const Point& a, const Point& b, double lambda) const;
  std::string surface_id() const { return tube_.id(); }

 private:
  TubeSurface tube_;
};

// Shared region of a and b, with both expressed in it; nullopt if none.
std::optional<std::pair<TubePoint, TubePoint>> common_region(const TubeSurface& tube,
                                                             const TubePoint& a,
                                                             const TubePoint& b);
// Intrinsic chord length between two points of the same region.
double region_chord(const TubeSurface& tube, const TubePoint& a, const TubePoint& b);
TubePoint region_interpolate(const TubeSurface& tube, const TubePoint& a, const TubePoint& b,
                             double lambda);

}  // namespace geolab::tube
