#pragma once

// Triaxial ellipsoid x^2/a^2 + y^2/b^2 + z^2/c^2 = 1 with a <= b <= c, and
// unit-speed geodesic integration in ambient coordinates.

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "geolab/simd/kernels.hpp"
#include "geolab/vec.hpp"

namespace geolab::ellipsoid {

class Ellipsoid {
 public:
  Ellipsoid(double a, double b, double c);

  double a() const { return axes_[0]; }
  double b() const { return axes_[1]; }
  double c() const { return axes_[2]; }
  const std::array<double, 3>& axes() const { return axes_; }
  bool is_sphere() const { return axes_[0] == axes_[2]; }

  // x^2/a^2 + y^2/b^2 + z^2/c^2 - 1.
  double constraint(const Vec3& x) const;
  // Outward unit normal at a surface point.
  Vec3 normal(const Vec3& x) const;
  // Radial projection onto the surface.
  Vec3 project(const Vec3& x) const;
  // Orthonormal tangent frame at a surface point.
  std::pair<Vec3, Vec3> tangent_frame(const Vec3& x) const;
  // Geodesic acceleration for unit tangent v at x.
  Vec3 acceleration(const Vec3& x, const Vec3& v) const;
  simd::EllipsoidCoeffs coeffs() const;
  std::string id() const;

 private:
  std::array<double, 3> axes_;
};

struct GeodesicState {
  Vec3 x;
  Vec3 v;
};

struct StateResiduals {
  double constraint = 0.0;
  double tangency = 0.0;  // |v . n|
  double speed = 0.0;     // ||v| - 1|
  double max() const;
};

StateResiduals residuals(const Ellipsoid& ell, const GeodesicState& s);
// Throws ValidationError when any residual exceeds tol.
void check_state(const Ellipsoid& ell, const GeodesicState& s, double tol = 1e-10);
// Surface point with unit tangent at angle psi in tangent_frame(x).
GeodesicState state_at(const Ellipsoid& ell, const Vec3& x, double psi);

struct IntegrationConfig {
  double tol = 1e-10;  // absolute local error per step
  double initial_step = 1e-2;
  double max_step = 0.1;
  double min_step = 1e-12;
  std::size_t max_steps = 5'000'000;
};

struct GeodesicPath {
  std::vector<double> s;
  std::vector<GeodesicState> states;
};

// Adaptive Dormand-Prince integration of the geodesic equation with
// projection back onto the surface and the unit tangent sphere after every
// accepted step. Negative arc_length integrates backwards. Throws
// NumericalFailure on step-size underflow.
GeodesicPath integrate_geodesic(const Ellipsoid& ell, const GeodesicState& start,
                                double arc_length, const IntegrationConfig& cfg = {});
// Endpoint only, without storing the path.
GeodesicState advance(const Ellipsoid& ell, const GeodesicState& start, double arc_length,
                      const IntegrationConfig& cfg = {});

}  // namespace geolab::ellipsoid
