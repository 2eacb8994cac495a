#include "geolab/ellipsoid/ellipsoid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "geolab/errors.hpp"

namespace geolab::ellipsoid {

namespace odeint = boost::numeric::odeint;

Ellipsoid::Ellipsoid(double a, double b, double c) : axes_{a, b, c} {
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) throw ValidationError("ellipsoid semi-axes must be positive");
  if (!(a <= b && b <= c)) throw ValidationError("ellipsoid semi-axes must satisfy a <= b <= c");
}

double Ellipsoid::constraint(const Vec3& x) const {
  return x.x * x.x / (a() * a()) + x.y * x.y / (b() * b()) + x.z * x.z / (c() * c()) - 1.0;
}

Vec3 Ellipsoid::normal(const Vec3& x) const {
  return unit(Vec3{x.x / (a() * a()), x.y / (b() * b()), x.z / (c() * c())});
}

Vec3 Ellipsoid::project(const Vec3& x) const {
  double f = constraint(x) + 1.0;
  if (!(f > 0.0)) throw ValidationError("cannot project the center onto the ellipsoid");
  return x / std::sqrt(f);
}

std::pair<Vec3, Vec3> Ellipsoid::tangent_frame(const Vec3& x) const {
  Vec3 n = normal(x);
  // Seed with the coordinate axis least aligned with n.
  Vec3 seed{1.0, 0.0, 0.0};
  if (std::abs(n.y) < std::abs(n.x) && std::abs(n.y) <= std::abs(n.z)) {
    seed = {0.0, 1.0, 0.0};
  } else if (std::abs(n.z) < std::abs(n.x) && std::abs(n.z) < std::abs(n.y)) {
    seed = {0.0, 0.0, 1.0};
  }
  Vec3 e1 = unit(seed - n * dot(seed, n));
  return {e1, cross(n, e1)};
}

Vec3 Ellipsoid::acceleration(const Vec3& x, const Vec3& v) const {
  const double ia = 1.0 / (a() * a()), ib = 1.0 / (b() * b()), ic = 1.0 / (c() * c());
  Vec3 g{x.x * ia, x.y * ib, x.z * ic};
  double k = (v.x * v.x * ia + v.y * v.y * ib + v.z * v.z * ic) / g.norm2();
  return g * -k;
}

simd::EllipsoidCoeffs Ellipsoid::coeffs() const {
  return {1.0 / (a() * a()), 1.0 / (b() * b()), 1.0 / (c() * c())};
}

std::string Ellipsoid::id() const {
  std::ostringstream os;
  os.precision(17);
  os << "ellipsoid:a=" << a() << ",b=" << b() << ",c=" << c();
  return os.str();
}

double StateResiduals::max() const { return std::max({constraint, tangency, speed}); }

StateResiduals residuals(const Ellipsoid& ell, const GeodesicState& s) {
  return {std::abs(ell.constraint(s.x)), std::abs(dot(s.v, ell.normal(s.x))),
          std::abs(s.v.norm() - 1.0)};
}

void check_state(const Ellipsoid& ell, const GeodesicState& s, double tol) {
  StateResiduals r = residuals(ell, s);
  if (r.max() > tol) {
    std::ostringstream os;
    os << "geodesic state off the unit tangent bundle: constraint " << r.constraint
       << ", tangency " << r.tangency << ", speed " << r.speed;
    throw ValidationError(os.str());
  }
}

GeodesicState state_at(const Ellipsoid& ell, const Vec3& x, double psi) {
  auto [e1, e2] = ell.tangent_frame(x);
  return {x, e1 * std::cos(psi) + e2 * std::sin(psi)};
}

namespace {

using State6 = std::array<double, 6>;

GeodesicState unpack(const State6& y) { return {{y[0], y[1], y[2]}, {y[3], y[4], y[5]}}; }
State6 pack(const GeodesicState& s) { return {s.x.x, s.x.y, s.x.z, s.v.x, s.v.y, s.v.z}; }

GeodesicState reproject(const Ellipsoid& ell, const GeodesicState& s) {
  Vec3 x = ell.project(s.x);
  Vec3 n = ell.normal(x);
  return {x, unit(s.v - n * dot(s.v, n))};
}

template <class Sink>
GeodesicState march(const Ellipsoid& ell, const GeodesicState& start, double arc_length,
                    const IntegrationConfig& cfg, Sink&& sink) {
  check_state(ell, start, 1e-9);
  const double dir = arc_length < 0.0 ? -1.0 : 1.0;
  const double total = std::abs(arc_length);
  // Integrating backwards is integrating forwards from the reversed tangent.
  GeodesicState cur{start.x, start.v * dir};
  auto system = [&ell](const State6& y, State6& dydt, double) {
    Vec3 acc = ell.acceleration({y[0], y[1], y[2]}, {y[3], y[4], y[5]});
    dydt = {y[3], y[4], y[5], acc.x, acc.y, acc.z};
  };
  auto stepper = odeint::make_controlled(cfg.tol, 0.0, odeint::runge_kutta_dopri5<State6>());
  double s = 0.0;
  double h = std::min(cfg.initial_step, cfg.max_step);
  sink(0.0, start);
  std::size_t steps = 0;
  while (s < total) {
    if (++steps > cfg.max_steps) throw NumericalFailure("geodesic integration exceeded its step budget");
    double trial = std::min({h, cfg.max_step, total - s});
    const bool last = trial == total - s;
    State6 y = pack(cur);
    double t = s;
    // The projection below invalidates the FSAL derivative cache.
    stepper.reset();
    if (stepper.try_step(system, y, t, trial) == odeint::fail) {
      h = trial;  // shrunk by the controller
      if (h < cfg.min_step) throw NumericalFailure("geodesic integration step size underflow");
      continue;
    }
    s = last ? total : t;
    cur = reproject(ell, unpack(y));
    h = trial;  // grown by the controller on success
    sink(s * dir, GeodesicState{cur.x, cur.v * dir});
  }
  return {cur.x, cur.v * dir};
}

}  // namespace

GeodesicPath integrate_geodesic(const Ellipsoid& ell, const GeodesicState& start,
                                double arc_length, const IntegrationConfig& cfg) {
  GeodesicPath path;
  march(ell, start, arc_length, cfg, [&](double s, const GeodesicState& st) {
    path.s.push_back(s);
    path.states.push_back(st);
  });
  return path;
}

GeodesicState advance(const Ellipsoid& ell, const GeodesicState& start, double arc_length,
                      const IntegrationConfig& cfg) {
  return march(ell, start, arc_length, cfg, [](double, const GeodesicState&) {});
}

}  // namespace geolab::ellipsoid
