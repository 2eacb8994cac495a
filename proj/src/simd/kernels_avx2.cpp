#include "kernels_impl.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace geolab::simd::avx2 {

#if defined(__AVX2__)

bool compiled() { return true; }

void planar_chords(Vec2 p, const double* xs, const double* ys, double* out, std::size_t n) {
  const __m256d px = _mm256_set1_pd(p.x);
  const __m256d py = _mm256_set1_pd(p.y);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), px);
    __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), py);
    __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(d2));
  }
  scalar::planar_chords(p, xs + i, ys + i, out + i, n - i);
}

std::size_t relax_planar(Vec2 p, double base, const double* xs, const double* ys,
                         const std::int32_t* ids, std::size_t n, double* dist,
                         std::int32_t* pred, std::int32_t from) {
  const __m256d px = _mm256_set1_pd(p.x);
  const __m256d py = _mm256_set1_pd(p.y);
  const __m256d vbase = _mm256_set1_pd(base);
  std::size_t updates = 0;
  std::size_t i = 0;
  alignas(32) double cand[4];
  for (; i + 4 <= n; i += 4) {
    __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), px);
    __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), py);
    __m256d d = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
    __m256d c = _mm256_add_pd(vbase, d);
    __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(ids + i));
    __m256d cur = _mm256_i32gather_pd(dist, idx, 8);
    int mask = _mm256_movemask_pd(_mm256_cmp_pd(c, cur, _CMP_LT_OQ));
    if (mask == 0) continue;
    _mm256_store_pd(cand, c);
    for (int lane = 0; lane < 4; ++lane) {
      if (mask & (1 << lane)) {
        dist[ids[i + lane]] = cand[lane];
        pred[ids[i + lane]] = from;
        ++updates;
      }
    }
  }
  return updates + scalar::relax_planar(p, base, xs + i, ys + i, ids + i, n - i, dist, pred,
                                        from);
}

namespace {

struct Lanes {
  __m256d x, y, z, vx, vy, vz;
};

inline void accel(const __m256d ia, const __m256d ib, const __m256d ic, const Lanes& s,
                  __m256d& ax, __m256d& ay, __m256d& az) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d gx = _mm256_mul_pd(s.x, ia);
  __m256d gy = _mm256_mul_pd(s.y, ib);
  __m256d gz = _mm256_mul_pd(s.z, ic);
  __m256d num = _mm256_add_pd(
      _mm256_add_pd(_mm256_mul_pd(_mm256_mul_pd(s.vx, s.vx), ia),
                    _mm256_mul_pd(_mm256_mul_pd(s.vy, s.vy), ib)),
      _mm256_mul_pd(_mm256_mul_pd(s.vz, s.vz), ic));
  __m256d den = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(gx, gx), _mm256_mul_pd(gy, gy)),
                              _mm256_mul_pd(gz, gz));
  __m256d nk = _mm256_xor_pd(_mm256_div_pd(num, den), sign);
  ax = _mm256_mul_pd(nk, gx);
  ay = _mm256_mul_pd(nk, gy);
  az = _mm256_mul_pd(nk, gz);
}

inline __m256d axpy(__m256d x, __m256d h, __m256d d) {
  return _mm256_add_pd(x, _mm256_mul_pd(h, d));
}

inline Lanes shifted(const Lanes& s, __m256d h, __m256d dx, __m256d dy, __m256d dz,
                     __m256d dvx, __m256d dvy, __m256d dvz) {
  return {axpy(s.x, h, dx), axpy(s.y, h, dy), axpy(s.z, h, dz),
          axpy(s.vx, h, dvx), axpy(s.vy, h, dvy), axpy(s.vz, h, dvz)};
}

inline __m256d rk_combine(__m256d x, __m256d sixth, __m256d k1, __m256d k2, __m256d k3,
                          __m256d k4) {
  const __m256d two = _mm256_set1_pd(2.0);
  __m256d acc = _mm256_add_pd(k1, _mm256_mul_pd(two, k2));
  acc = _mm256_add_pd(acc, _mm256_mul_pd(two, k3));
  acc = _mm256_add_pd(acc, k4);
  return _mm256_add_pd(x, _mm256_mul_pd(sixth, acc));
}

}  // namespace

void ellipsoid_rk4_sweep(const EllipsoidCoeffs& c, double step, int steps, Vec3 target,
                         GeodesicBatch& b) {
  const std::size_t n = b.size();
  const __m256d ia = _mm256_set1_pd(c.ia);
  const __m256d ib = _mm256_set1_pd(c.ib);
  const __m256d ic = _mm256_set1_pd(c.ic);
  const __m256d h = _mm256_set1_pd(step);
  const __m256d half = _mm256_set1_pd(0.5 * step);
  const __m256d sixth = _mm256_set1_pd(step / 6.0);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d tx = _mm256_set1_pd(target.x);
  const __m256d ty = _mm256_set1_pd(target.y);
  const __m256d tz = _mm256_set1_pd(target.z);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    Lanes s{_mm256_loadu_pd(&b.x[i]),  _mm256_loadu_pd(&b.y[i]),  _mm256_loadu_pd(&b.z[i]),
            _mm256_loadu_pd(&b.vx[i]), _mm256_loadu_pd(&b.vy[i]), _mm256_loadu_pd(&b.vz[i])};
    __m256d best_d2 = _mm256_loadu_pd(&b.best_d2[i]);
    __m256d best_s = _mm256_loadu_pd(&b.best_s[i]);
    __m256d best_side = _mm256_loadu_pd(&b.best_side[i]);
    for (int k = 0; k < steps; ++k) {
      __m256d a1x, a1y, a1z, a2x, a2y, a2z, a3x, a3y, a3z, a4x, a4y, a4z;
      accel(ia, ib, ic, s, a1x, a1y, a1z);
      Lanes s2 = shifted(s, half, s.vx, s.vy, s.vz, a1x, a1y, a1z);
      accel(ia, ib, ic, s2, a2x, a2y, a2z);
      Lanes s3 = shifted(s, half, s2.vx, s2.vy, s2.vz, a2x, a2y, a2z);
      accel(ia, ib, ic, s3, a3x, a3y, a3z);
      Lanes s4 = shifted(s, h, s3.vx, s3.vy, s3.vz, a3x, a3y, a3z);
      accel(ia, ib, ic, s4, a4x, a4y, a4z);

      Lanes next;
      next.x = rk_combine(s.x, sixth, s.vx, s2.vx, s3.vx, s4.vx);
      next.y = rk_combine(s.y, sixth, s.vy, s2.vy, s3.vy, s4.vy);
      next.z = rk_combine(s.z, sixth, s.vz, s2.vz, s3.vz, s4.vz);
      next.vx = rk_combine(s.vx, sixth, a1x, a2x, a3x, a4x);
      next.vy = rk_combine(s.vy, sixth, a1y, a2y, a3y, a4y);
      next.vz = rk_combine(s.vz, sixth, a1z, a2z, a3z, a4z);
      s = next;

      __m256d f = _mm256_add_pd(
          _mm256_add_pd(_mm256_mul_pd(_mm256_mul_pd(s.x, s.x), ia),
                        _mm256_mul_pd(_mm256_mul_pd(s.y, s.y), ib)),
          _mm256_mul_pd(_mm256_mul_pd(s.z, s.z), ic));
      __m256d r = _mm256_div_pd(one, _mm256_sqrt_pd(f));
      s.x = _mm256_mul_pd(s.x, r);
      s.y = _mm256_mul_pd(s.y, r);
      s.z = _mm256_mul_pd(s.z, r);
      __m256d nx = _mm256_mul_pd(s.x, ia);
      __m256d ny = _mm256_mul_pd(s.y, ib);
      __m256d nz = _mm256_mul_pd(s.z, ic);
      __m256d vdot = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(s.vx, nx), _mm256_mul_pd(s.vy, ny)),
                                   _mm256_mul_pd(s.vz, nz));
      __m256d nn = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(nx, nx), _mm256_mul_pd(ny, ny)),
                                 _mm256_mul_pd(nz, nz));
      __m256d vn = _mm256_div_pd(vdot, nn);
      s.vx = _mm256_sub_pd(s.vx, _mm256_mul_pd(vn, nx));
      s.vy = _mm256_sub_pd(s.vy, _mm256_mul_pd(vn, ny));
      s.vz = _mm256_sub_pd(s.vz, _mm256_mul_pd(vn, nz));
      __m256d sp2 = _mm256_add_pd(
          _mm256_add_pd(_mm256_mul_pd(s.vx, s.vx), _mm256_mul_pd(s.vy, s.vy)),
          _mm256_mul_pd(s.vz, s.vz));
      __m256d speed = _mm256_div_pd(one, _mm256_sqrt_pd(sp2));
      s.vx = _mm256_mul_pd(s.vx, speed);
      s.vy = _mm256_mul_pd(s.vy, speed);
      s.vz = _mm256_mul_pd(s.vz, speed);

      __m256d dx = _mm256_sub_pd(s.x, tx);
      __m256d dy = _mm256_sub_pd(s.y, ty);
      __m256d dz = _mm256_sub_pd(s.z, tz);
      __m256d d2 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                                 _mm256_mul_pd(dz, dz));
      __m256d better = _mm256_cmp_pd(d2, best_d2, _CMP_LT_OQ);
      __m256d arc = _mm256_mul_pd(h, _mm256_set1_pd(static_cast<double>(k + 1)));
      best_d2 = _mm256_blendv_pd(best_d2, d2, better);
      best_s = _mm256_blendv_pd(best_s, arc, better);
      // Same association order as the scalar kernel.
      __m256d cx = _mm256_sub_pd(_mm256_mul_pd(ny, s.vz), _mm256_mul_pd(nz, s.vy));
      __m256d cy = _mm256_sub_pd(_mm256_mul_pd(nz, s.vx), _mm256_mul_pd(nx, s.vz));
      __m256d cz = _mm256_sub_pd(_mm256_mul_pd(nx, s.vy), _mm256_mul_pd(ny, s.vx));
      __m256d side = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, cx), _mm256_mul_pd(dy, cy)),
                                   _mm256_mul_pd(dz, cz));
      best_side = _mm256_blendv_pd(best_side, side, better);
    }
    _mm256_storeu_pd(&b.x[i], s.x);
    _mm256_storeu_pd(&b.y[i], s.y);
    _mm256_storeu_pd(&b.z[i], s.z);
    _mm256_storeu_pd(&b.vx[i], s.vx);
    _mm256_storeu_pd(&b.vy[i], s.vy);
    _mm256_storeu_pd(&b.vz[i], s.vz);
    _mm256_storeu_pd(&b.best_d2[i], best_d2);
    _mm256_storeu_pd(&b.best_s[i], best_s);
    _mm256_storeu_pd(&b.best_side[i], best_side);
  }
  scalar::ellipsoid_rk4_sweep(c, step, steps, target, b, i, n);
}

#else

bool compiled() { return false; }

void planar_chords(Vec2 p, const double* xs, const double* ys, double* out, std::size_t n) {
  scalar::planar_chords(p, xs, ys, out, n);
}

std::size_t relax_planar(Vec2 p, double base, const double* xs, const double* ys,
                         const std::int32_t* ids, std::size_t n, double* dist,
                         std::int32_t* pred, std::int32_t from) {
  return scalar::relax_planar(p, base, xs, ys, ids, n, dist, pred, from);
}

void ellipsoid_rk4_sweep(const EllipsoidCoeffs& c, double step, int steps, Vec3 target,
                         GeodesicBatch& b) {
  scalar::ellipsoid_rk4_sweep(c, step, steps, target, b, 0, b.size());
}

#endif

}  // namespace geolab::simd::avx2
