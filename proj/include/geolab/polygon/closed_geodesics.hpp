#pragma once

// Closed geodesics on X_n via billiard unfolding.
//
// A closed geodesic leaving the top face through edge e_1 and then crossing
// e_2, ..., e_m unfolds to a straight line through the copies
// g_j(P), g_j = g_{j-1} o (reflection in e_j). It closes when m is even and
// g_m is a translation along the line. Such lines come in parallel families
// (cylinders); each family is reported once, by its core curve.

#include <cstddef>
#include <vector>

#include "geolab/metric/curve.hpp"
#include "geolab/metric/verify.hpp"
#include "geolab/polygon/distance.hpp"
#include "geolab/polygon/ngon.hpp"

namespace geolab::polygon {

using PolygonCurve = metric::ClosedCurve<PolygonPoint>;

enum class GeodesicTag { kMeridian, kOther };
const char* tag_name(GeodesicTag tag);

struct ClosedGeodesic {
  PolygonCurve curve;
  std::vector<int> edges;          // e_1 .. e_m
  Face start_face = Face::kTop;    // face left at the first crossing
  int period = 0;                  // number of edge crossings
  GeodesicTag tag = GeodesicTag::kOther;
  // True for exactly one member of each orbit under the dihedral group and
  // the face swap.
  bool representative = false;
  // Width of the parallel family; the core sits at its middle.
  double family_width = 0.0;
  // Unit direction of the unfolded line in the chart of the first face.
  Vec2 direction;
  // Canonical (edge, from_face) code, invariant under cyclic shift and reversal.
  std::vector<int> code;
};

struct EnumerationConfig {
  int max_depth = 64;
  std::size_t max_nodes = 20'000'000;
  // Directions are d = nu + s tau with |s| <= slope_limit (nu the outward
  // normal of e_1); steeper lines graze e_1 within atan(1/slope_limit).
  double slope_limit = 1e4;
  // Families narrower than this are treated as vertex-touching and dropped.
  double min_width = 1e-9;
};

struct EnumerationCertificate {
  double l_max = 0.0;
  std::size_t nodes_explored = 0;
  int deepest_sequence = 0;
  bool exhausted = true;  // search tree fully explored under the pruning rules
};

struct EnumerationResult {
  std::vector<ClosedGeodesic> geodesics;  // sorted by (length, code)
  EnumerationCertificate certificate;
};

// Families of period 2 through the face centers and a parallel edge pair;
// empty for odd n.
std::vector<ClosedGeodesic> meridians(const DoubledNgon& ngon);

// All closed geodesic families of length <= l_max (every dihedral image
// included, one flagged representative). Throws BudgetExhausted when the
// depth or node budget runs out before the tree is exhausted.
EnumerationResult enumerate_closed_geodesics(const DoubledNgon& ngon, double l_max,
                                             const EnumerationConfig& cfg = {});

// The closed geodesic with the given crossing sequence at offset `fraction`
// in [-1, 1] across its family (0 = core). Throws ValidationError when the
// sequence does not close.
ClosedGeodesic closed_geodesic_from_sequence(const DoubledNgon& ngon, const std::vector<int>& edges,
                                             Face start_face, double fraction = 0.0);

std::vector<int> canonical_code(const std::vector<int>& edges, Face start_face);

struct MemberCheck {
  double fraction = 0.0;
  metric::VerificationReport report;
};

struct FamilyClassification {
  ClosedGeodesic core;
  metric::VerificationReport core_report;
  std::vector<MemberCheck> members;  // off-core members of the same family
};

struct HalfGeodesicConfig {
  int diameter_grid = 8;
  double margin = 0.01;
  metric::ToleranceConfig tolerances = metric::ToleranceConfig::for_oracle_error(0.0);
  std::vector<double> member_fractions{-0.75, -0.5, -0.25, 0.25, 0.5, 0.75};
  EnumerationConfig enumeration;
  ExactDistanceConfig distance;
};

struct HalfGeodesicClassification {
  DiameterEstimate diameter;
  double l_max = 0.0;
  EnumerationCertificate certificate;
  std::vector<FamilyClassification> families;  // every enumerated family
  std::vector<ClosedGeodesic> half_geodesics;  // curves that passed
};

HalfGeodesicClassification classify_half_geodesics(const DoubledNgon& ngon,
                                                   const HalfGeodesicConfig& cfg = {});

}  // namespace geolab::polygon
