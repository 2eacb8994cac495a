#pragma once

// Half-geodesic classification of the coordinate sections, and a randomized
// (non-exhaustive) probe for short closed geodesics.

#include <cstdint>
#include <string>
#include <vector>

#include "geolab/ellipsoid/distance.hpp"
#include "geolab/ellipsoid/sections.hpp"
#include "geolab/metric/verify.hpp"

namespace geolab::ellipsoid {

struct ClassifyConfig {
  ShootingConfig shooting;
  // Uniform samples per section on top of its breakpoints, which include the
  // four axis points. Each sample costs one shooting query.
  int sample_count = 64;
  IntegrationConfig integration;
};

struct SectionVerdict {
  SectionGeodesic section;
  metric::VerificationReport report;
};

struct SectionClassification {
  Vec3 axes;
  double oracle_error = 0.0;
  metric::ToleranceConfig tolerance;
  std::vector<SectionVerdict> sections;  // AB, AC, BC
};

// k = 2 verification of each section against the shooting oracle.
SectionClassification classify_section_half_geodesics(const Ellipsoid& ell,
                                                      const ClassifyConfig& cfg = {});

struct SearchConfig {
  std::uint64_t seed = 1;
  int max_newton = 40;
  double closure_tol = 1e-9;  // fixed-point residual of the return map, radians
  double fd_step = 1e-6;      // finite-difference step for the return-map Jacobian
  double max_move = 0.2;      // Newton step cap, radians
  double dedup_tol = 1e-5;    // polyline distance under which two finds coincide
  int trace_points = 256;
  IntegrationConfig integration;
  void validate() const;
};

struct ClosedGeodesic {
  std::string label;          // "AB", "AC", "BC" or "other"
  double length = 0.0;
  SectionPlane transversal = SectionPlane::kAB;  // plane whose return map found it
  double phi = 0.0, psi = 0.0;                   // crossing point angle and direction
  double residual = 0.0;                         // return-map mismatch at the fixed point
  std::vector<Vec3> trace;                       // evenly spaced in arc length
};

struct SearchResult {
  bool exhaustive = false;  // always false: random starts cannot certify absence
  int trials = 0;
  int converged = 0;
  std::vector<ClosedGeodesic> found;  // sorted by length
};

// Random starts on the transversals z = 0 and x = 0 (which between them cut
// every coordinate section), refined by Newton on the first-return map.
SearchResult search_short_closed_geodesics(const Ellipsoid& ell, double L_max, int trials,
                                           const SearchConfig& cfg = {});

}  // namespace geolab::ellipsoid
