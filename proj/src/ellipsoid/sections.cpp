#include "geolab/ellipsoid/sections.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/ellint_2.hpp>

#include "geolab/errors.hpp"

namespace geolab::ellipsoid {

namespace {

constexpr double kPi = std::numbers::pi;

double coord(const Vec3& x, int i) { return x[i]; }

void set_coord(Vec3& x, int i, double value) {
  if (i == 0) x.x = value;
  else if (i == 1) x.y = value;
  else x.z = value;
}

}  // namespace

const char* plane_name(SectionPlane p) {
  switch (p) {
    case SectionPlane::kAB: return "AB";
    case SectionPlane::kAC: return "AC";
    case SectionPlane::kBC: return "BC";
  }
  return "?";
}

SectionPlane parse_plane(const std::string& name) {
  if (name == "AB") return SectionPlane::kAB;
  if (name == "AC") return SectionPlane::kAC;
  if (name == "BC") return SectionPlane::kBC;
  throw ValidationError("unknown section plane '" + name + "' (expected AB, AC or BC)");
}

SectionEllipse::SectionEllipse(const Ellipsoid& ell, SectionPlane plane) : plane_(plane) {
  switch (plane) {
    case SectionPlane::kAB: iu_ = 0, iv_ = 1; break;
    case SectionPlane::kAC: iu_ = 0, iv_ = 2; break;
    case SectionPlane::kBC: iu_ = 1, iv_ = 2; break;
  }
  p_ = ell.axes()[iu_];
  q_ = ell.axes()[iv_];
  perimeter_ = 4.0 * arc(0.0, kPi / 2);
}

Vec3 SectionEllipse::point(double theta) const {
  Vec3 x;
  set_coord(x, iu_, p_ * std::cos(theta));
  set_coord(x, iv_, q_ * std::sin(theta));
  return x;
}

Vec3 SectionEllipse::tangent(double theta) const {
  Vec3 t;
  set_coord(t, iu_, -p_ * std::sin(theta));
  set_coord(t, iv_, q_ * std::cos(theta));
  return unit(t);
}

double SectionEllipse::distance_from(const Vec3& x) const {
  double u = coord(x, iu_) / p_, v = coord(x, iv_) / q_;
  return std::max(std::abs(coord(x, 3 - iu_ - iv_)), std::abs(std::hypot(u, v) - 1.0));
}

double SectionEllipse::angle(const Vec3& x) const {
  double u = coord(x, iu_) / p_, v = coord(x, iv_) / q_;
  if (distance_from(x) > 1e-9) {
    throw ValidationError(std::string("point is not on section ") + plane_name(plane_));
  }
  double t = std::atan2(v, u);
  return t < 0.0 ? t + 2.0 * kPi : t;
}

double SectionEllipse::arc(double theta0, double theta1) const {
  auto speed = [this](double t) { return std::hypot(p_ * std::sin(t), q_ * std::cos(t)); };
  if (theta0 == theta1) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(speed, theta0, theta1, 8,
                                                                       1e-13);
}

double SectionEllipse::angle_at_arc(double theta0, double s) const {
  // Newton on arc(theta0, t) = s; the speed stays within [p, q].
  const double lo = std::min(p_, q_);
  double t = theta0 + s / (0.5 * (p_ + q_));
  for (int it = 0; it < 60; ++it) {
    double f = arc(theta0, t) - s;
    double df = std::hypot(p_ * std::sin(t), q_ * std::cos(t));
    double dt = f / std::max(df, lo);
    t -= dt;
    if (std::abs(dt) < 1e-15 * std::max(1.0, std::abs(t))) break;
  }
  return t;
}

double elliptic_perimeter(double p, double q) {
  double major = std::max(p, q), minor = std::min(p, q);
  double k = std::sqrt(1.0 - (minor * minor) / (major * major));
  return 4.0 * major * boost::math::ellint_2(k);
}

double SectionSpace::step(double ta, double tb) const {
  double d = std::remainder(tb - ta, 2.0 * kPi);
  if (d <= -kPi) d += 2.0 * kPi;
  return d;
}

double SectionSpace::segment_length(const Point& a, const Point& b) const {
  double ta = ellipse_.angle(a);
  double d = step(ta, ellipse_.angle(b));
  return std::abs(ellipse_.arc(ta, ta + d));
}

SectionSpace::Point SectionSpace::interpolate(const Point& a, const Point& b, double lambda) const {
  if (lambda <= 0.0) return a;
  if (lambda >= 1.0) return b;
  double ta = ellipse_.angle(a);
  double d = step(ta, ellipse_.angle(b));
  double s = ellipse_.arc(ta, ta + d);
  return ellipse_.point(ellipse_.angle_at_arc(ta, lambda * s));
}

SectionGeodesic coordinate_section(const Ellipsoid& ell, SectionPlane plane,
                                   const IntegrationConfig& cfg) {
  SectionEllipse e(ell, plane);
  SectionGeodesic out;
  out.plane = plane;
  out.p = e.p();
  out.q = e.q();
  out.perimeter = e.perimeter();
  out.elliptic_perimeter = elliptic_perimeter(e.p(), e.q());

  auto& curve = out.curve;
  curve.surface_id = ell.id();
  curve.total_length = out.perimeter;
  const double quarter = out.perimeter / 4.0;
  const int per_quarter = kSectionBreakpoints / 4;
  for (int k = 0; k < kSectionBreakpoints; ++k) {
    int quadrant = k / per_quarter, j = k % per_quarter;
    // Quarter arcs are equal by symmetry, so quadrant starts are exact.
    double theta = quadrant * kPi / 2;
    if (j > 0) theta = e.angle_at_arc(theta, quarter * j / per_quarter);
    curve.breakpoints.push_back({2.0 * kPi * k / kSectionBreakpoints, e.point(theta)});
  }

  // The section must itself be a geodesic: integrate from theta = 0 along
  // the ellipse tangent and measure the distance to the planar curve.
  GeodesicState start{e.point(0.0), e.tangent(0.0)};
  auto path = integrate_geodesic(ell, start, out.perimeter, cfg);
  double worst = 0.0;
  for (const auto& st : path.states) worst = std::max(worst, e.distance_from(st.x));
  worst = std::max(worst, (path.states.back().x - start.x).norm());
  out.geodesic_residual = worst;
  return out;
}

std::vector<SectionGeodesic> coordinate_sections(const Ellipsoid& ell, const IntegrationConfig& cfg) {
  return {coordinate_section(ell, SectionPlane::kAB, cfg), coordinate_section(ell, SectionPlane::kAC, cfg),
          coordinate_section(ell, SectionPlane::kBC, cfg)};
}

}  // namespace geolab::ellipsoid
