#pragma once

// Two-point geodesic distance on an ellipsoid by shooting from p.

#include "geolab/ellipsoid/ellipsoid.hpp"
#include "geolab/metric/oracle.hpp"

namespace geolab::ellipsoid {

struct ShootingConfig {
  double sweep_resolution = 1e-3;  // radians between swept directions
  double sweep_step = 0.01;        // fixed RK4 step of the coarse sweep
  double length_margin = 1e-3;     // sweep reaches (1 + margin) times the planar bound
  double hit_tol = 1e-9;           // largest accepted miss at q
  int max_brackets = 64;           // sign changes refined, closest first
  IntegrationConfig integration;
  void validate() const;
};

struct DistanceResult {
  double length = 0.0;
  // Certified bracket: the hit geodesic's length widened by its miss at q.
  double lower = 0.0, upper = 0.0;
  double direction = 0.0;  // shooting angle in tangent_frame(p)
  double miss = 0.0;
  double planar_bound = 0.0;  // central plane section path, an upper bound
  int brackets = 0;           // sign changes found by the sweep
  int hits = 0;               // brackets that refined to a hit
};

// Length of the central plane section through p and q, taken the short way.
double planar_path_length(const Ellipsoid& ell, const Vec3& p, const Vec3& q);

// Shortest geodesic from p to q among all shooting directions. Spheres are
// answered in closed form. Throws NumericalFailure when no direction hits q,
// naming the sweep resolution.
DistanceResult two_point_distance(const Ellipsoid& ell, const Vec3& p, const Vec3& q,
                                  const ShootingConfig& cfg = {});

// Declared error: hit_tol plus an allowance for integration drift.
double shooting_error_bound(const ShootingConfig& cfg);

metric::DistanceOracle<Vec3> shooting_oracle(const Ellipsoid& ell, const ShootingConfig& cfg = {});

}  // namespace geolab::ellipsoid
