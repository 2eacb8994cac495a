#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "geolab/ellipsoid/classify.hpp"
#include "geolab/errors.hpp"
#include "test_support.hpp"

namespace {

using namespace geolab;
using namespace geolab::ellipsoid;
using geolab::testing::Rng;
using geolab::testing::uniform;

constexpr double kPi = std::numbers::pi;

const Ellipsoid kNear(1.0, 1.005, 1.01);

// Composite Simpson on the planar ellipse speed; independent of the library's
// Gauss-Kronrod and elliptic-integral paths.
double simpson_arc(double p, double q, double t0, double t1, int n = 20000) {
  auto f = [&](double t) { return std::hypot(p * std::sin(t), q * std::cos(t)); };
  double h = (t1 - t0) / n, s = f(t0) + f(t1);
  for (int i = 1; i < n; ++i) s += f(t0 + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

Vec3 random_surface_point(const Ellipsoid& ell, Rng& rng) {
  double z = uniform(rng, -1.0, 1.0), th = uniform(rng, 0.0, 2.0 * kPi);
  double r = std::sqrt(1.0 - z * z);
  return ell.project({r * std::cos(th), r * std::sin(th), z});
}

TEST(Ellipsoid, ValidatesAxes) {
  EXPECT_THROW(Ellipsoid(1.0, 0.9, 1.1), ValidationError);
  EXPECT_THROW(Ellipsoid(0.0, 1.0, 1.0), ValidationError);
  EXPECT_NO_THROW(Ellipsoid(1.0, 1.0, 1.0));
  EXPECT_TRUE(Ellipsoid(2.0, 2.0, 2.0).is_sphere());
  EXPECT_THROW(check_state(kNear, {{1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}), ValidationError);
}

TEST(Integration, SphereGreatCircleReturnsAfterTwoPi) {
  Ellipsoid s(1.0, 1.0, 1.0);
  Rng rng(11);
  for (int i = 0; i < 5; ++i) {
    GeodesicState st = state_at(s, random_surface_point(s, rng), uniform(rng, 0.0, 2.0 * kPi));
    GeodesicState end = advance(s, st, 2.0 * kPi);
    EXPECT_LT((end.x - st.x).norm(), 1e-7);
    EXPECT_LT((end.v - st.v).norm(), 1e-7);
  }
}

TEST(Integration, ResidualsStaySmallAndReversalReturns) {
  Rng rng(12);
  for (int i = 0; i < 5; ++i) {
    GeodesicState st = state_at(kNear, random_surface_point(kNear, rng), uniform(rng, 0.0, 2.0 * kPi));
    auto path = integrate_geodesic(kNear, st, 4.0 * kPi);
    for (const auto& s : path.states) EXPECT_LE(residuals(kNear, s).max(), 1e-9);
    GeodesicState end = path.states.back();
    GeodesicState back = advance(kNear, {end.x, end.v * -1.0}, 4.0 * kPi);
    EXPECT_LT((back.x - st.x).norm(), 1e-7);
    // Negative arc length integrates backwards.
    EXPECT_LT((advance(kNear, end, -4.0 * kPi).x - st.x).norm(), 1e-7);
  }
}

TEST(Integration, SectionStartStaysPlanarAndTiltedStartLeavesPlanes) {
  SectionEllipse ab(kNear, SectionPlane::kAB);
  auto path = integrate_geodesic(kNear, {ab.point(0.3), ab.tangent(0.3)}, 2.0 * kPi);
  double zmax = 0.0;
  for (const auto& s : path.states) zmax = std::max(zmax, std::abs(s.x.z));
  EXPECT_LE(zmax, 1e-9);

  auto tilted = integrate_geodesic(kNear, state_at(kNear, kNear.project({1.0, 0.4, 0.3}), 0.7), 2.0 * kPi);
  double off[3] = {0.0, 0.0, 0.0};
  SectionEllipse secs[3] = {SectionEllipse(kNear, SectionPlane::kAB), SectionEllipse(kNear, SectionPlane::kAC),
                            SectionEllipse(kNear, SectionPlane::kBC)};
  for (const auto& s : tilted.states) {
    for (int k = 0; k < 3; ++k) off[k] = std::max(off[k], secs[k].distance_from(s.x));
  }
  for (double o : off) EXPECT_GT(o, 0.1);
}

TEST(Sections, PerimetersMatchIndependentQuadrature) {
  for (const auto& sec : coordinate_sections(kNear)) {
    EXPECT_NEAR(sec.perimeter, simpson_arc(sec.p, sec.q, 0.0, 2.0 * kPi), 1e-10);
    EXPECT_NEAR(sec.perimeter, sec.elliptic_perimeter, 1e-12);
    EXPECT_LT(sec.geodesic_residual, 1e-8);
    EXPECT_NEAR(sec.curve.total_length, sec.perimeter, 0.0);
  }
}

TEST(Sections, OrderingAndDegenerateCases) {
  auto secs = coordinate_sections(kNear);
  EXPECT_LT(secs[0].perimeter, secs[1].perimeter);
  EXPECT_LT(secs[1].perimeter, secs[2].perimeter);
  for (const auto& sec : coordinate_sections(Ellipsoid(1.0, 1.0, 1.0))) {
    EXPECT_NEAR(sec.perimeter, 2.0 * kPi, 1e-13);
  }
  EXPECT_NEAR(coordinate_section(Ellipsoid(1.0, 1.0, 1.3), SectionPlane::kAB).perimeter, 2.0 * kPi, 1e-13);
  EXPECT_EQ(parse_plane("BC"), SectionPlane::kBC);
  EXPECT_THROW(parse_plane("XY"), ValidationError);
}

TEST(Sections, PerimeterMonotoneInEachAxis) {
  auto base = coordinate_sections(kNear);
  auto grown = coordinate_sections(Ellipsoid(1.0, 1.006, 1.01));  // b enlarged
  EXPECT_GT(grown[0].perimeter, base[0].perimeter);              // AB contains b
  EXPECT_GT(grown[2].perimeter, base[2].perimeter);              // BC contains b
  EXPECT_DOUBLE_EQ(grown[1].perimeter, base[1].perimeter);       // AC does not
}

TEST(Sections, CurveIsConstantSpeedWithAxisBreakpoints) {
  auto sec = coordinate_section(kNear, SectionPlane::kBC);
  SectionSpace space(kNear, SectionPlane::kBC);
  EXPECT_NO_THROW(metric::validate_curve(space, sec.curve));
  // t = pi/2 sits on the z axis.
  const auto& b = sec.curve.breakpoints[kSectionBreakpoints / 4];
  EXPECT_DOUBLE_EQ(b.t, kPi / 2);
  EXPECT_NEAR(b.point.z, 1.01, 1e-15);
}

TEST(Distance, SphereMatchesGreatCircle) {
  Ellipsoid s(1.0, 1.0, 1.0);
  Rng rng(21);
  for (int i = 0; i < 20; ++i) {
    Vec3 p = random_surface_point(s, rng), q = random_surface_point(s, rng);
    double expect = std::acos(std::clamp(dot(p, q), -1.0, 1.0));
    EXPECT_NEAR(two_point_distance(s, p, q).length, expect, 1e-7);
  }
  EXPECT_NEAR(two_point_distance(s, {1, 0, 0}, {-1, 0, 0}).length, kPi, 1e-15);
}

TEST(Distance, EqualPointsAndValidation) {
  Vec3 p = kNear.project({0.3, 0.2, 0.9});
  EXPECT_EQ(two_point_distance(kNear, p, p).length, 0.0);
  EXPECT_THROW(two_point_distance(kNear, p, {2.0, 0.0, 0.0}), ValidationError);
  ShootingConfig bad;
  bad.sweep_resolution = 0.0;
  EXPECT_THROW(two_point_distance(kNear, p, -p, bad), ValidationError);
}

TEST(Distance, NoHitIsReportedWithSweepResolution) {
  ShootingConfig cfg;
  cfg.hit_tol = 1e-30;
  try {
    two_point_distance(kNear, kNear.project({1, 1, 0}), kNear.project({0, 1, 1}), cfg);
    FAIL() << "expected NumericalFailure";
  } catch (const NumericalFailure& e) {
    EXPECT_NE(std::string(e.what()).find("sweep resolution"), std::string::npos);
  }
}

TEST(Distance, MiddleAxisAntipodesTakeTheShortSection) {
  auto secs = coordinate_sections(kNear);
  auto r = two_point_distance(kNear, {0.0, 1.005, 0.0}, {0.0, -1.005, 0.0});
  double half_ab = secs[0].perimeter / 2, half_bc = secs[2].perimeter / 2;
  EXPECT_LE(r.length, half_ab + 1e-9);
  EXPECT_LT(r.length, half_bc - 0.5 * (half_bc - half_ab));
  EXPECT_LE(r.lower, r.length);
  EXPECT_GE(r.upper, r.length);
  EXPECT_GE(r.hits, 1);
}

TEST(Distance, BoundedByChordAndSectionArc) {
  Rng rng(31);
  for (SectionPlane plane : {SectionPlane::kAB, SectionPlane::kAC, SectionPlane::kBC}) {
    SectionEllipse e(kNear, plane);
    for (int i = 0; i < 2; ++i) {
      double t0 = uniform(rng, 0.0, 2.0 * kPi), dt = uniform(rng, 0.2, kPi);
      Vec3 p = e.point(t0), q = e.point(t0 + dt);
      double d = two_point_distance(kNear, p, q).length;
      EXPECT_LE(d, simpson_arc(e.p(), e.q(), t0, t0 + dt) + 1e-9);
      EXPECT_GE(d, (p - q).norm());
    }
  }
}

TEST(Distance, OctantSymmetry) {
  ShootingConfig cfg;
  const double tol = 2.0 * shooting_error_bound(cfg);
  Vec3 p = kNear.project({0.5, 0.7, 0.4}), q = kNear.project({-0.3, 0.2, -0.9});
  double base = two_point_distance(kNear, p, q, cfg).length;
  for (int mask = 1; mask < 8; ++mask) {
    Vec3 s{mask & 1 ? -1.0 : 1.0, mask & 2 ? -1.0 : 1.0, mask & 4 ? -1.0 : 1.0};
    Vec3 fp{p.x * s.x, p.y * s.y, p.z * s.z}, fq{q.x * s.x, q.y * s.y, q.z * s.z};
    EXPECT_NEAR(two_point_distance(kNear, fp, fq, cfg).length, base, tol) << "mask " << mask;
  }
}

TEST(Classify, NearRoundEllipsoidHasOneHalfGeodesicSection) {
  ClassifyConfig cfg;
  cfg.sample_count = 8;  // the axis points are breakpoints and always sampled
  auto c = classify_section_half_geodesics(kNear, cfg);
  ASSERT_EQ(c.sections.size(), 3u);
  const double half_ab = c.sections[0].section.perimeter / 2;
  EXPECT_EQ(c.sections[0].report.verdict, metric::Verdict::kPass);
  EXPECT_LE(c.sections[0].report.max_deviation, 1e-6);
  for (int k : {1, 2}) {
    const auto& v = c.sections[k];
    EXPECT_EQ(v.report.verdict, metric::Verdict::kFail);
    EXPECT_GE(v.report.max_deviation, v.section.perimeter / 2 - half_ab - c.oracle_error);
  }
}

TEST(Classify, SphereSectionsAllPass) {
  ClassifyConfig cfg;
  cfg.sample_count = 16;
  auto c = classify_section_half_geodesics(Ellipsoid(1.0, 1.0, 1.0), cfg);
  EXPECT_EQ(c.oracle_error, 0.0);
  for (const auto& v : c.sections) {
    EXPECT_EQ(v.report.verdict, metric::Verdict::kPass);
    EXPECT_LE(v.report.max_deviation, 1e-12);
  }
}

TEST(Search, FindsExactlyTheThreeSections) {
  auto r = search_short_closed_geodesics(kNear, 8.0, 40);
  EXPECT_FALSE(r.exhaustive);
  ASSERT_EQ(r.found.size(), 3u);
  auto secs = coordinate_sections(kNear);
  const char* labels[3] = {"AB", "AC", "BC"};
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(r.found[k].label, labels[k]);
    EXPECT_NEAR(r.found[k].length, secs[k].perimeter, 1e-8);
  }
}

TEST(Search, SphereFindsGreatCirclesOnlyAndShortCutoffFindsNothing) {
  auto r = search_short_closed_geodesics(Ellipsoid(1.0, 1.0, 1.0), 7.0, 10);
  EXPECT_FALSE(r.found.empty());
  for (const auto& g : r.found) EXPECT_NEAR(g.length, 2.0 * kPi, 1e-8);
  EXPECT_TRUE(search_short_closed_geodesics(kNear, 6.2, 10).found.empty());
  EXPECT_THROW(search_short_closed_geodesics(kNear, 8.0, 0), ValidationError);
}

TEST(Search, DeterministicForAFixedSeed) {
  SearchConfig cfg;
  cfg.seed = 5;
  auto a = search_short_closed_geodesics(kNear, 8.0, 6, cfg);
  auto b = search_short_closed_geodesics(kNear, 8.0, 6, cfg);
  ASSERT_EQ(a.found.size(), b.found.size());
  for (std::size_t i = 0; i < a.found.size(); ++i) EXPECT_EQ(a.found[i].length, b.found[i].length);
}

}  // namespace
