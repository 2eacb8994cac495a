#include "geolab/simd/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>

#include "geolab/errors.hpp"
#include "kernels_impl.hpp"

namespace geolab::simd {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa initial_isa() {
  Isa best = detected_isa();
  if (const char* env = std::getenv("GEOLAB_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::kScalar;
  }
  return best;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

const char* isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

Isa detected_isa() {
  return (avx2::compiled() && cpu_has_avx2()) ? Isa::kAvx2 : Isa::kScalar;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::kAvx2 && detected_isa() != Isa::kAvx2) {
    throw ValidationError("AVX2 kernels are not available on this CPU");
  }
  active().store(isa, std::memory_order_relaxed);
}

void GeodesicBatch::resize(std::size_t n) {
  for (auto* v : {&x, &y, &z, &vx, &vy, &vz, &best_d2, &best_s, &best_side}) v->resize(n);
}

void planar_chords(Vec2 p, std::span<const double> xs, std::span<const double> ys,
                   std::span<double> out) {
  if (active_isa() == Isa::kAvx2) {
    avx2::planar_chords(p, xs.data(), ys.data(), out.data(), out.size());
  } else {
    scalar::planar_chords(p, xs.data(), ys.data(), out.data(), out.size());
  }
}

std::size_t relax_planar(Vec2 p, double base, std::span<const double> xs,
                         std::span<const double> ys, std::span<const std::int32_t> ids,
                         std::span<double> dist, std::span<std::int32_t> pred,
                         std::int32_t from) {
  if (active_isa() == Isa::kAvx2) {
    return avx2::relax_planar(p, base, xs.data(), ys.data(), ids.data(), ids.size(),
                              dist.data(), pred.data(), from);
  }
  return scalar::relax_planar(p, base, xs.data(), ys.data(), ids.data(), ids.size(),
                              dist.data(), pred.data(), from);
}

void ellipsoid_rk4_sweep(const EllipsoidCoeffs& coeffs, double step, int steps, Vec3 target,
                         GeodesicBatch& batch) {
  if (active_isa() == Isa::kAvx2) {
    avx2::ellipsoid_rk4_sweep(coeffs, step, steps, target, batch);
  } else {
    scalar::ellipsoid_rk4_sweep(coeffs, step, steps, target, batch, 0, batch.size());
  }
}

namespace scalar {

void planar_chords(Vec2 p, const double* xs, const double* ys, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double dx = xs[i] - p.x;
    double dy = ys[i] - p.y;
    out[i] = std::sqrt(dx * dx + dy * dy);
  }
}

std::size_t relax_planar(Vec2 p, double base, const double* xs, const double* ys,
                         const std::int32_t* ids, std::size_t n, double* dist,
                         std::int32_t* pred, std::int32_t from) {
  std::size_t updates = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = xs[i] - p.x;
    double dy = ys[i] - p.y;
    double cand = base + std::sqrt(dx * dx + dy * dy);
    if (cand < dist[ids[i]]) {
      dist[ids[i]] = cand;
      pred[ids[i]] = from;
      ++updates;
    }
  }
  return updates;
}

namespace {

struct Lane {
  double x, y, z, vx, vy, vz;
};

inline void accel(const EllipsoidCoeffs& c, const Lane& s, double& ax, double& ay,
                  double& az) {
  double gx = s.x * c.ia;
  double gy = s.y * c.ib;
  double gz = s.z * c.ic;
  double num = s.vx * s.vx * c.ia + s.vy * s.vy * c.ib + s.vz * s.vz * c.ic;
  double den = gx * gx + gy * gy + gz * gz;
  double k = num / den;
  ax = -k * gx;
  ay = -k * gy;
  az = -k * gz;
}

inline Lane shifted(const Lane& s, double h, double dx, double dy, double dz, double dvx,
                    double dvy, double dvz) {
  return {s.x + h * dx, s.y + h * dy, s.z + h * dz,
          s.vx + h * dvx, s.vy + h * dvy, s.vz + h * dvz};
}

}  // namespace

void ellipsoid_rk4_sweep(const EllipsoidCoeffs& c, double step, int steps, Vec3 target,
                         GeodesicBatch& b, std::size_t begin, std::size_t end) {
  const double half = 0.5 * step;
  const double sixth = step / 6.0;
  for (std::size_t i = begin; i < end; ++i) {
    Lane s{b.x[i], b.y[i], b.z[i], b.vx[i], b.vy[i], b.vz[i]};
    double best_d2 = b.best_d2[i];
    double best_s = b.best_s[i];
    double best_side = b.best_side[i];
    for (int k = 0; k < steps; ++k) {
      double a1x, a1y, a1z, a2x, a2y, a2z, a3x, a3y, a3z, a4x, a4y, a4z;
      accel(c, s, a1x, a1y, a1z);
      Lane s2 = shifted(s, half, s.vx, s.vy, s.vz, a1x, a1y, a1z);
      accel(c, s2, a2x, a2y, a2z);
      Lane s3 = shifted(s, half, s2.vx, s2.vy, s2.vz, a2x, a2y, a2z);
      accel(c, s3, a3x, a3y, a3z);
      Lane s4 = shifted(s, step, s3.vx, s3.vy, s3.vz, a3x, a3y, a3z);
      accel(c, s4, a4x, a4y, a4z);

      s.x = s.x + sixth * (((s.vx + 2.0 * s2.vx) + 2.0 * s3.vx) + s4.vx);
      s.y = s.y + sixth * (((s.vy + 2.0 * s2.vy) + 2.0 * s3.vy) + s4.vy);
      s.z = s.z + sixth * (((s.vz + 2.0 * s2.vz) + 2.0 * s3.vz) + s4.vz);
      s.vx = s.vx + sixth * (((a1x + 2.0 * a2x) + 2.0 * a3x) + a4x);
      s.vy = s.vy + sixth * (((a1y + 2.0 * a2y) + 2.0 * a3y) + a4y);
      s.vz = s.vz + sixth * (((a1z + 2.0 * a2z) + 2.0 * a3z) + a4z);

      // Radial projection onto the surface, then onto the tangent plane at unit speed.
      double f = s.x * s.x * c.ia + s.y * s.y * c.ib + s.z * s.z * c.ic;
      double r = 1.0 / std::sqrt(f);
      s.x = s.x * r;
      s.y = s.y * r;
      s.z = s.z * r;
      double nx = s.x * c.ia;
      double ny = s.y * c.ib;
      double nz = s.z * c.ic;
      double vn = (s.vx * nx + s.vy * ny + s.vz * nz) / (nx * nx + ny * ny + nz * nz);
      s.vx = s.vx - vn * nx;
      s.vy = s.vy - vn * ny;
      s.vz = s.vz - vn * nz;
      double speed = 1.0 / std::sqrt(s.vx * s.vx + s.vy * s.vy + s.vz * s.vz);
      s.vx = s.vx * speed;
      s.vy = s.vy * speed;
      s.vz = s.vz * speed;

      double dx = s.x - target.x;
      double dy = s.y - target.y;
      double dz = s.z - target.z;
      double d2 = dx * dx + dy * dy + dz * dz;
      if (d2 < best_d2) {
        best_d2 = d2;
        best_s = step * static_cast<double>(k + 1);
        best_side = (dx * (ny * s.vz - nz * s.vy) + dy * (nz * s.vx - nx * s.vz)) +
                    dz * (nx * s.vy - ny * s.vx);
      }
    }
    b.x[i] = s.x; b.y[i] = s.y; b.z[i] = s.z;
    b.vx[i] = s.vx; b.vy[i] = s.vy; b.vz[i] = s.vz;
    b.best_d2[i] = best_d2;
    b.best_s[i] = best_s;
    b.best_side[i] = best_side;
  }
}

}  // namespace scalar
}  // namespace geolab::simd
