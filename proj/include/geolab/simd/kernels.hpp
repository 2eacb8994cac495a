#pragma once

// Data-parallel inner loops shared by the distance backends.
//
// Every kernel has a scalar reference implementation and an AVX2 variant. The
// variant is chosen once at startup from the CPU features (and GEOLAB_SIMD,
// which may be "scalar" or "avx2"); both produce bit-identical results because
// they evaluate the same expression trees with correctly rounded operations
// and no FMA contraction.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "geolab/vec.hpp"

namespace geolab::simd {

enum class Isa { kScalar, kAvx2 };

const char* isa_name(Isa isa);
// Best instruction set supported by this CPU and build.
Isa detected_isa();
Isa active_isa();
// Throws ValidationError when the CPU lacks the requested set.
void set_active_isa(Isa isa);

// out[i] = |(xs[i], ys[i]) - p|.
void planar_chords(Vec2 p, std::span<const double> xs, std::span<const double> ys,
                   std::span<double> out);

// Dijkstra relaxation of a source at p (tentative distance base) against a
// batch of planar nodes. For each i with base + |p - node_i| < dist[ids[i]],
// updates dist and sets pred[ids[i]] = from. Returns the number of updates.
// ids must be distinct within one call.
std::size_t relax_planar(Vec2 p, double base, std::span<const double> xs,
                         std::span<const double> ys, std::span<const std::int32_t> ids,
                         std::span<double> dist, std::span<std::int32_t> pred,
                         std::int32_t from);

// Structure-of-arrays batch of unit-speed geodesics on an ellipsoid
// x^2/A + y^2/B + z^2/C = 1, marched with fixed-step RK4 plus projection.
struct GeodesicBatch {
  std::vector<double> x, y, z;
  std::vector<double> vx, vy, vz;
  // Closest approach to the sweep target: squared distance, arc length, and
  // (x - target) . (n x v) there, whose sign tells which side the lane passed.
  std::vector<double> best_d2, best_s, best_side;

  std::size_t size() const { return x.size(); }
  void resize(std::size_t n);
};

struct EllipsoidCoeffs {
  // Reciprocal squared semi-axes 1/a^2, 1/b^2, 1/c^2.
  double ia = 1.0, ib = 1.0, ic = 1.0;
};

// Advances every lane by `steps` RK4 steps of length `step`, projecting back
// onto the surface after each step and tracking the closest approach to target
// (best_d2/best_s/best_side must be initialised by the caller).
void ellipsoid_rk4_sweep(const EllipsoidCoeffs& coeffs, double step, int steps, Vec3 target,
                         GeodesicBatch& batch);

}  // namespace geolab::simd
