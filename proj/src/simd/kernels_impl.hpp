#pragma once

#include "geolab/simd/kernels.hpp"

namespace geolab::simd {

namespace scalar {
void planar_chords(Vec2 p, const double* xs, const double* ys, double* out, std::size_t n);
std::size_t relax_planar(Vec2 p, double base, const double* xs, const double* ys,
                         const std::int32_t* ids, std::size_t n, double* dist,
                         std::int32_t* pred, std::int32_t from);
void ellipsoid_rk4_sweep(const EllipsoidCoeffs& c, double step, int steps, Vec3 target,
                         GeodesicBatch& b, std::size_t begin, std::size_t end);
}  // namespace scalar

namespace avx2 {
bool compiled();
void planar_chords(Vec2 p, const double* xs, const double* ys, double* out, std::size_t n);
std::size_t relax_planar(Vec2 p, double base, const double* xs, const double* ys,
                         const std::int32_t* ids, std::size_t n, double* dist,
                         std::int32_t* pred, std::int32_t from);
void ellipsoid_rk4_sweep(const EllipsoidCoeffs& c, double step, int steps, Vec3 target,
                         GeodesicBatch& b);
}  // namespace avx2

}  // namespace geolab::simd
