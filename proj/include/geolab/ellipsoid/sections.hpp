#pragma once

// Coordinate-plane sections of an ellipsoid. Each is a closed geodesic by the
// reflection symmetry across its plane.

#include <string>
#include <vector>

#include "geolab/ellipsoid/ellipsoid.hpp"
#include "geolab/metric/curve.hpp"

namespace geolab::ellipsoid {

// AB lies in z = 0, AC in y = 0, BC in x = 0.
enum class SectionPlane { kAB, kAC, kBC };

const char* plane_name(SectionPlane p);
SectionPlane parse_plane(const std::string& name);

// Planar ellipse (u, v) = (p cos theta, q sin theta) inside one coordinate
// plane, with arc length by adaptive Gauss-Kronrod quadrature.
class SectionEllipse {
 public:
  SectionEllipse(const Ellipsoid& ell, SectionPlane plane);

  SectionPlane plane() const { return plane_; }
  double p() const { return p_; }
  double q() const { return q_; }

  Vec3 point(double theta) const;
  Vec3 tangent(double theta) const;  // unit, increasing theta
  // Off-plane coordinate or normalized radius error, whichever is larger.
  double distance_from(const Vec3& x) const;
  // Angle of a point in the plane; throws if it is off the section.
  double angle(const Vec3& x) const;
  // Signed arc length from theta0 to theta1 along increasing theta.
  double arc(double theta0, double theta1) const;
  double perimeter() const { return perimeter_; }
  // Angle at signed arc length s from theta0.
  double angle_at_arc(double theta0, double s) const;

 private:
  SectionPlane plane_;
  double p_, q_;
  int iu_ = 0, iv_ = 1;  // ambient coordinates spanning the plane
  double perimeter_;
};

// 4 max(p, q) E(e) via Boost's complete elliptic integral of the second kind.
double elliptic_perimeter(double p, double q);

// Points on one section; segments follow the shorter arc between endpoints.
class SectionSpace {
 public:
  using Point = Vec3;

  SectionSpace(const Ellipsoid& ell, SectionPlane plane) : ell_(ell), ellipse_(ell, plane) {}

  const SectionEllipse& ellipse() const { return ellipse_; }
  double segment_length(const Point& a, const Point& b) const;
  Point interpolate(const Point& a, const Point& b, double lambda) const;
  std::string surface_id() const { return ell_.id(); }

 private:
  // Signed angular step from a to b, in (-pi, pi].
  double step(double ta, double tb) const;

  Ellipsoid ell_;
  SectionEllipse ellipse_;
};

struct SectionGeodesic {
  SectionPlane plane = SectionPlane::kAB;
  double p = 0.0, q = 0.0;  // semi-axes inside the plane
  double perimeter = 0.0;           // quadrature
  double elliptic_perimeter = 0.0;  // closed form, as a cross-check
  double geodesic_residual = 0.0;   // max deviation of the integrated geodesic from the ellipse
  metric::ClosedCurve<Vec3> curve;  // constant speed, t = 0 on the first axis
};

// Breakpoints per section curve; a multiple of 4 so the axis points sit on
// breakpoints at t = 0, pi/2, pi, 3pi/2.
inline constexpr int kSectionBreakpoints = 16;

// All three sections, each checked to be a geodesic by integrating from its
// first axis point for one full perimeter.
std::vector<SectionGeodesic> coordinate_sections(const Ellipsoid& ell,
                                                 const IntegrationConfig& cfg = {});
SectionGeodesic coordinate_section(const Ellipsoid& ell, SectionPlane plane,
                                   const IntegrationConfig& cfg = {});

}  // namespace geolab::ellipsoid
