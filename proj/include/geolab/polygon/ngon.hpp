#pragma once

// The doubled regular n-gon X_n: two copies of a regular n-gon glued along
// their boundaries. Both faces share one planar chart (centroid at the origin,
// edge 0's midpoint on the positive x-axis); edge i runs from vertex i to
// vertex i+1 counterclockwise.

#include <string>
#include <variant>
#include <vector>

#include "geolab/vec.hpp"

namespace geolab::polygon {

enum class Face { kTop, kBottom };

inline Face opposite(Face f) { return f == Face::kTop ? Face::kBottom : Face::kTop; }
const char* face_name(Face f);

struct InteriorPoint {
  Face face = Face::kTop;
  Vec2 xy;
  bool operator==(const InteriorPoint&) const = default;
};

// A boundary point, shared by both faces. u in (0, 1) along the edge.
struct EdgePoint {
  int edge = 0;
  double u = 0.5;
  bool operator==(const EdgePoint&) const = default;
};

using PolygonPoint = std::variant<InteriorPoint, EdgePoint>;

inline const InteriorPoint* as_interior(const PolygonPoint& p) {
  return std::get_if<InteriorPoint>(&p);
}
inline const EdgePoint* as_edge(const PolygonPoint& p) { return std::get_if<EdgePoint>(&p); }

// Planar isometry x -> M x + t.
struct Isometry2 {
  double m00 = 1.0, m01 = 0.0, m10 = 0.0, m11 = 1.0;
  Vec2 t;

  Vec2 apply(Vec2 v) const { return {m00 * v.x + m01 * v.y + t.x, m10 * v.x + m11 * v.y + t.y}; }
  Vec2 apply_linear(Vec2 v) const { return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y}; }
  double det() const { return m00 * m11 - m01 * m10; }
  // (*this) o other
  Isometry2 compose(const Isometry2& o) const;
  Isometry2 inverse() const;
  static Isometry2 reflection(Vec2 point_on_line, Vec2 unit_normal);
};

class DoubledNgon {
 public:
  // Throws ValidationError unless n >= 3 and side > 0.
  DoubledNgon(int n, double side);

  int n() const { return n_; }
  double side() const { return side_; }
  double apothem() const { return apothem_; }
  double circumradius() const { return circumradius_; }
  double perimeter() const { return n_ * side_; }
  double face_area() const { return 0.5 * perimeter() * apothem_; }
  double interior_angle() const;
  bool has_parallel_edges() const { return n_ % 2 == 0; }
  // Distance between a parallel edge pair; throws for odd n.
  double width_across_flats() const;
  int opposite_edge(int e) const;

  Vec2 vertex(int i) const { return vertices_[wrap(i)]; }
  const std::vector<Vec2>& vertices() const { return vertices_; }
  Vec2 edge_position(int e, double u) const;
  Vec2 edge_midpoint(int e) const { return edge_position(e, 0.5); }
  Vec2 outward_normal(int e) const { return normals_[wrap(e)]; }
  // Reflection of the plane across the line of edge e.
  Isometry2 edge_reflection(int e) const { return reflections_[wrap(e)]; }

  // max over edges of (signed distance outside the edge line); negative inside.
  double signed_boundary_distance(Vec2 p) const;

  Vec2 position(const PolygonPoint& p) const;
  // Validated constructors; throw ValidationError.
  PolygonPoint interior(Face face, Vec2 xy) const;
  PolygonPoint on_edge(int edge, double u) const;
  void validate(const PolygonPoint& p) const;

  int wrap(int i) const { return ((i % n_) + n_) % n_; }
  std::string id() const;

 private:
  int n_;
  double side_;
  double apothem_;
  double circumradius_;
  std::vector<Vec2> vertices_;
  std::vector<Vec2> normals_;
  std::vector<Isometry2> reflections_;
};

// CurveSpace for X_n. Each curve segment lies in one face; a segment whose
// endpoints are both edge points on different edges has no face and is rejected.
class PolygonSpace {
 public:
  using Point = PolygonPoint;
  explicit PolygonSpace(DoubledNgon ngon) : ngon_(std::move(ngon)) {}

  const DoubledNgon& ngon() const { return ngon_; }
  double segment_length(const Point& a, const Point& b) const;
  Point interpolate(const Point& a, const Point& b, double lambda) const;
  std::string surface_id() const { return ngon_.id(); }

 private:
  DoubledNgon ngon_;
};

}  // namespace geolab::polygon
