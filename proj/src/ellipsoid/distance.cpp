#include "geolab/ellipsoid/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "geolab/errors.hpp"
#include "geolab/simd/kernels.hpp"

namespace geolab::ellipsoid {

namespace {

constexpr double kPi = std::numbers::pi;

struct Approach {
  double s = 0.0;
  double miss = 0.0;
  double side = 0.0;  // (x - q) . (n x v)
};

// Closest approach of the geodesic from `start` to q within arc length
// `reach`, located on the integrated path and polished by Newton on
// (x(s) - q) . v(s) = 0.
Approach closest_approach(const Ellipsoid& ell, const GeodesicState& start, const Vec3& q,
                          double reach, const IntegrationConfig& icfg) {
  GeodesicPath path = integrate_geodesic(ell, start, reach, icfg);
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < path.states.size(); ++i) {
    double d = (path.states[i].x - q).norm();
    if (d < best_d) best_d = d, best = i;
  }
  const GeodesicState base = path.states[best];
  const double s0 = path.s[best];
  double ds = 0.0;
  GeodesicState st = base;
  for (int it = 0; it < 30; ++it) {
    Vec3 r = st.x - q;
    double h = dot(r, st.v);
    double dh = 1.0 + dot(r, ell.acceleration(st.x, st.v));
    double step = -h / std::max(dh, 0.1);
    // Stay inside the path and near the located minimum.
    double next = std::clamp(ds + step, -s0, reach - s0);
    if (std::abs(next - ds) < 1e-15) break;
    ds = next;
    st = advance(ell, base, ds, icfg);
  }
  Vec3 r = st.x - q;
  return {s0 + ds, r.norm(), dot(r, cross(ell.normal(st.x), st.v))};
}

}  // namespace

void ShootingConfig::validate() const {
  if (!(sweep_resolution > 0.0 && sweep_resolution <= 0.1)) {
    throw ValidationError("sweep_resolution must lie in (0, 0.1]");
  }
  if (!(sweep_step > 0.0)) throw ValidationError("sweep_step must be positive");
  if (!(length_margin >= 0.0)) throw ValidationError("length_margin must be non-negative");
  if (!(hit_tol > 0.0)) throw ValidationError("hit_tol must be positive");
  if (max_brackets < 1) throw ValidationError("max_brackets must be at least 1");
}

double planar_path_length(const Ellipsoid& ell, const Vec3& p, const Vec3& q) {
  const Vec3 e1 = unit(p);
  Vec3 w = q - e1 * dot(q, e1);
  double end;
  Vec3 e2;
  if (w.norm() < 1e-12 * q.norm()) {
    if (dot(p, q) > 0.0) return 0.0;
    e2 = ell.tangent_frame(p).first;  // antipodal: any central plane through p
    end = kPi;
  } else {
    e2 = unit(w);
    end = std::atan2(dot(q, e2), dot(q, e1));
  }
  const auto& ax = ell.axes();
  const Vec3 inv{1.0 / (ax[0] * ax[0]), 1.0 / (ax[1] * ax[1]), 1.0 / (ax[2] * ax[2])};
  auto speed = [&](double phi) {
    Vec3 d = e1 * std::cos(phi) + e2 * std::sin(phi);
    Vec3 dd = e2 * std::cos(phi) - e1 * std::sin(phi);
    double f = d.x * d.x * inv.x + d.y * d.y * inv.y + d.z * d.z * inv.z;
    double df = 2.0 * (d.x * dd.x * inv.x + d.y * dd.y * inv.y + d.z * dd.z * inv.z);
    double r = 1.0 / std::sqrt(f);
    double dr = -0.5 * df * r / f;
    return std::hypot(r, dr);
  };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(speed, 0.0, end, 8, 1e-13);
}

DistanceResult two_point_distance(const Ellipsoid& ell, const Vec3& p, const Vec3& q,
                                  const ShootingConfig& cfg) {
  cfg.validate();
  for (const Vec3* x : {&p, &q}) {
    if (std::abs(ell.constraint(*x)) > 1e-9) throw ValidationError("shooting endpoints must lie on the ellipsoid");
  }
  DistanceResult out;
  if ((p - q).norm() == 0.0) return out;
  if (ell.is_sphere()) {
    out.length = ell.a() * angle_between(p, q);
    out.lower = out.upper = out.planar_bound = out.length;
    out.hits = 1;
    return out;
  }

  out.planar_bound = planar_path_length(ell, p, q);
  const double reach = out.planar_bound * (1.0 + cfg.length_margin) + 2.0 * cfg.sweep_step;
  const int lanes = static_cast<int>(std::ceil(2.0 * kPi / cfg.sweep_resolution));
  const double dpsi = 2.0 * kPi / lanes;
  auto [e1, e2] = ell.tangent_frame(p);

  simd::GeodesicBatch batch;
  batch.resize(lanes);
  for (int i = 0; i < lanes; ++i) {
    Vec3 v = e1 * std::cos(i * dpsi) + e2 * std::sin(i * dpsi);
    batch.x[i] = p.x, batch.y[i] = p.y, batch.z[i] = p.z;
    batch.vx[i] = v.x, batch.vy[i] = v.y, batch.vz[i] = v.z;
    batch.best_d2[i] = std::numeric_limits<double>::infinity();
    batch.best_s[i] = 0.0;
    batch.best_side[i] = 0.0;
  }
  simd::ellipsoid_rk4_sweep(ell.coeffs(), cfg.sweep_step,
                            static_cast<int>(std::ceil(reach / cfg.sweep_step)), q, batch);

  // Adjacent lanes passing q on opposite sides bracket a hitting direction.
  // Far sign changes (lanes that never come near q) are gated out.
  const double gate = std::max(0.05 * out.planar_bound, 8.0 * cfg.sweep_step);
  struct Bracket {
    int lane;
    double closeness;
  };
  std::vector<Bracket> brackets;
  for (int i = 0; i < lanes; ++i) {
    int j = (i + 1) % lanes;
    if (batch.best_side[i] * batch.best_side[j] > 0.0) continue;
    double closeness = std::sqrt(std::min(batch.best_d2[i], batch.best_d2[j]));
    if (closeness <= gate) brackets.push_back({i, closeness});
  }
  out.brackets = static_cast<int>(brackets.size());
  std::sort(brackets.begin(), brackets.end(),
            [](const Bracket& a, const Bracket& b) { return a.closeness < b.closeness; });
  if (static_cast<int>(brackets.size()) > cfg.max_brackets) brackets.resize(cfg.max_brackets);

  double best = std::numeric_limits<double>::infinity();
  double best_miss = 0.0;
  for (const Bracket& br : brackets) {
    auto side = [&](double psi) {
      return closest_approach(ell, state_at(ell, p, psi), q, reach, cfg.integration).side;
    };
    double lo = br.lane * dpsi, hi = lo + dpsi;
    double flo = side(lo), fhi = side(hi);
    double psi;
    if (flo == 0.0) {
      psi = lo;
    } else if (fhi == 0.0) {
      psi = hi;
    } else if (flo * fhi > 0.0) {
      continue;  // the coarse sweep's sign change did not survive refinement
    } else {
      std::uintmax_t iters = 80;
      auto root = boost::math::tools::toms748_solve(
          side, lo, hi, flo, fhi,
          [](double a, double b) { return std::abs(b - a) < 1e-14; }, iters);
      psi = 0.5 * (root.first + root.second);
    }
    Approach hit = closest_approach(ell, state_at(ell, p, psi), q, reach, cfg.integration);
    if (hit.miss > cfg.hit_tol) continue;
    ++out.hits;
    if (hit.s < best) {
      best = hit.s;
      best_miss = hit.miss;
      out.direction = psi;
    }
  }
  if (out.hits == 0) {
    std::ostringstream os;
    os << "no geodesic from p reached q within " << cfg.hit_tol << " (sweep resolution "
       << cfg.sweep_resolution << " rad, " << out.brackets << " brackets, reach " << reach << ")";
    throw NumericalFailure(os.str());
  }
  out.length = best;
  out.miss = best_miss;
  out.lower = best - best_miss;
  out.upper = best + best_miss;
  return out;
}

double shooting_error_bound(const ShootingConfig& cfg) {
  // Integration drift over lengths up to 4 pi stays near 1e-9 at the default tolerance.
  return cfg.hit_tol + 1e3 * cfg.integration.tol;
}

metric::DistanceOracle<Vec3> shooting_oracle(const Ellipsoid& ell, const ShootingConfig& cfg) {
  cfg.validate();
  metric::DistanceOracle<Vec3> o;
  o.distance = [ell, cfg](const Vec3& p, const Vec3& q) {
    return two_point_distance(ell, p, q, cfg).length;
  };
  o.error_bound = ell.is_sphere() ? 0.0 : shooting_error_bound(cfg);
  o.surface_id = ell.id();
  return o;
}

}  // namespace geolab::ellipsoid
