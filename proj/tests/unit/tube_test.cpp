#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "geolab/errors.hpp"
#include "geolab/metric/verify.hpp"
#include "geolab/polygon/distance.hpp"
#include "geolab/tube/curves.hpp"
#include "geolab/tube/mesh.hpp"
#include "test_support.hpp"

namespace {

using namespace geolab;
using namespace geolab::tube;
using geolab::testing::Rng;
using polygon::DoubledNgon;
using polygon::Face;

constexpr double kPi = std::numbers::pi;

// Closed-form area: two faces, n half-cylinders and lunes that tile one sphere.
double area_formula(const DoubledNgon& g, double eps) {
  return 2.0 * g.face_area() + g.n() * g.side() * kPi * eps + 4.0 * kPi * eps * eps;
}

std::vector<TubePoint> sample_curve(const TubeSurface& tube, const TubeCurve& c, int count) {
  TubeSpace space(tube);
  std::vector<TubePoint> pts;
  for (int i = 0; i < count; ++i) pts.push_back(metric::point_at(space, c, 2.0 * kPi * i / count));
  return pts;
}

TEST(TubeSurface, AreaMatchesClosedForm) {
  TubeSurface t(DoubledNgon(4, 1.0), 0.1);
  EXPECT_NEAR(t.area(), 2.0 + 0.4 * kPi + 0.04 * kPi, 1e-14);
  for (int n : {3, 5, 8}) {
    for (double eps : {0.02, 0.1}) {
      DoubledNgon g(n, 1.0);
      EXPECT_NEAR(TubeSurface(g, eps).area(), area_formula(g, eps), 1e-12);
    }
  }
}

TEST(TubeSurface, RejectsThickTubes) {
  // Square apothem is 0.5, so eps must stay below 0.25.
  EXPECT_THROW(TubeSurface(DoubledNgon(4, 1.0), 0.4), ValidationError);
  EXPECT_THROW(TubeSurface(DoubledNgon(4, 1.0), 0.25), ValidationError);
  EXPECT_THROW(TubeSurface(DoubledNgon(4, 1.0), 0.0), ValidationError);
  EXPECT_NO_THROW(TubeSurface(DoubledNgon(4, 1.0), 0.2));
}

TEST(TubeSurface, AmbientPointsSitAtDistanceEps) {
  TubeSurface t(DoubledNgon(5, 1.0), 0.07);
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    TubePoint p = sample_uniform(t, rng);
    Vec3 x = t.ambient(p);
    EXPECT_NEAR(t.distance_to_core(x), 0.07, 1e-12);
    // Round trip through ambient coordinates lands on the same point.
    EXPECT_LT((t.ambient(t.from_ambient(x)) - x).norm(), 1e-12);
  }
}

TEST(TubeMesh, AreaConvergesQuadratically) {
  TubeSurface t(DoubledNgon(4, 1.0), 0.1);
  const double exact = area_formula(t.base(), 0.1);
  double coarse = std::abs(build_mesh(t, 0.03).area() - exact);
  double fine = std::abs(build_mesh(t, 0.015).area() - exact);
  EXPECT_LT(coarse / exact, 0.01);
  EXPECT_LT(fine / exact, 0.01);
  EXPECT_GE(coarse / fine, 3.0);
}

TEST(TubeMesh, IsClosedOrientableSphere) {
  for (int n : {3, 4, 7}) {
    TubeSurface t(DoubledNgon(n, 1.0), 0.05);
    auto topo = build_mesh(t, 0.05 / 3).topology();
    EXPECT_TRUE(topo.watertight()) << n;
    EXPECT_TRUE(topo.orientable()) << n;
    EXPECT_EQ(topo.euler_characteristic, 2) << n;
    EXPECT_EQ(topo.genus(), 0) << n;
  }
}

TEST(TubeMesh, VerticesStayWithinEpsOfTheirProjection) {
  TubeSurface t(DoubledNgon(6, 1.0), 0.08);
  auto mesh = build_mesh(t, 0.02);
  // Vertex projections are nudged 1e-9 into an edge.
  EXPECT_LE(mesh.max_projection_displacement(), 0.08 + 1e-8);
  std::ostringstream off;
  mesh.write_off(off);
  EXPECT_EQ(off.str().rfind("OFF", 0), 0u);
}

TEST(TubeMesh, RejectsCoarseSpacing) {
  TubeSurface t(DoubledNgon(4, 1.0), 0.06);
  EXPECT_THROW(build_mesh(t, 0.021), ValidationError);
  EXPECT_THROW(TubeDistanceGraph(t, 0.021), ValidationError);
  EXPECT_NO_THROW(TubeDistanceGraph(t, 0.02));
}

TEST(TubeDistance, SameFaceIsPlanarChord) {
  TubeSurface t(DoubledNgon(6, 1.0), 0.05);
  TubeDistanceGraph g(t, 0.05 / 3);
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    auto a = std::get<polygon::InteriorPoint>(geolab::testing::random_interior(t.base(), rng));
    auto b = std::get<polygon::InteriorPoint>(geolab::testing::random_interior(t.base(), rng));
    TubePoint p = TubePoint::face(Face::kTop, a.xy), q = TubePoint::face(Face::kTop, b.xy);
    EXPECT_NEAR(g.distance(p, q), (a.xy - b.xy).norm(), 1e-12);
  }
}

TEST(TubeDistance, AroundOneCylinderIsHalfCircle) {
  // Top and bottom of the same rim point: straight over the cylinder.
  TubeSurface t(DoubledNgon(4, 1.0), 0.1);
  TubeDistanceGraph g(t, 0.1 / 5);
  for (double u : {0.2, 0.5, 0.8}) {
    TubePoint p = TubePoint::cylinder(1, u, 0.0), q = TubePoint::cylinder(1, u, kPi);
    EXPECT_NEAR(g.distance(p, q), kPi * 0.1, 1e-12);
  }
}

TEST(TubeDistance, BracketedByIndependentBounds) {
  // Lower: ambient chord and the 1-Lipschitz projection to X_n.
  // Upper: the X_n path lifted to Y, paying at most pi eps at each end and
  // pi eps for its single edge crossing.
  for (int n : {3, 4, 6}) {
    const double eps = 0.06;
    TubeSurface t(DoubledNgon(n, 1.0), eps);
    TubeDistanceGraph g(t, eps / 3);
    Rng rng(100 + n);
    for (int i = 0; i < 150; ++i) {
      TubePoint p = sample_uniform(t, rng), q = sample_uniform(t, rng);
      double d = g.distance(p, q);
      double dx = polygon::exact_distance(t.base(), t.project(p), t.project(q)).length;
      EXPECT_GE(d, (t.ambient(p) - t.ambient(q)).norm() - 1e-12);
      EXPECT_GE(d, dx - 1e-9);
      EXPECT_LE(d, dx + 3.0 * kPi * eps + 1e-9);
    }
  }
}

TEST(TubeDistance, MetricPropertiesWithinDeclaredError) {
  TubeSurface t(DoubledNgon(5, 1.0), 0.05);
  TubeDistanceGraph g(t, 0.05 / 3);
  const double err = g.error_bound();
  EXPECT_DOUBLE_EQ(err, 0.5 * g.h());
  Rng rng(5);
  for (int i = 0; i < 80; ++i) {
    TubePoint p = sample_uniform(t, rng), q = sample_uniform(t, rng), r = sample_uniform(t, rng);
    EXPECT_EQ(g.distance(p, p), 0.0);
    double pq = g.distance(p, q), qp = g.distance(q, p);
    EXPECT_NEAR(pq, qp, err);
    EXPECT_LE(g.distance(p, r), pq + g.distance(q, r) + err);
  }
}

TEST(TubeDistance, PathLengthMatchesDistanceAndMidpointSplitsIt) {
  TubeSurface t(DoubledNgon(3, 1.0), 0.08);
  TubeDistanceGraph g(t, 0.08 / 3);
  TubeSpace space(t);
  Rng rng(9);
  for (int i = 0; i < 40; ++i) {
    TubePoint p = sample_uniform(t, rng), q = sample_uniform(t, rng);
    TubePath path = g.path(p, q);
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < path.points.size(); ++k) {
      sum += space.segment_length(path.points[k], path.points[k + 1]);
    }
    EXPECT_NEAR(sum, path.length, 1e-9);
    EXPECT_NEAR(path.length, g.distance(p, q), 1e-12);
    double len = 0.0;
    TubePoint m = g.midpoint(p, q, &len);
    EXPECT_NEAR(len, path.length, 1e-12);
    EXPECT_NEAR(g.distance(p, m), 0.5 * len, g.error_bound());
    EXPECT_NEAR(g.distance(m, q), 0.5 * len, g.error_bound());
  }
}

TEST(TubeMeridian, LengthAndGuards) {
  for (double eps : {0.1, 0.05}) {
    TubeSurface t(DoubledNgon(4, 1.0), eps);
    TubeSpace space(t);
    auto c = meridian_on_tube(t, 0);
    metric::validate_curve(space, c);
    EXPECT_NEAR(c.total_length, 2.0 + 2.0 * kPi * eps, 1e-12);
  }
  TubeSurface hex(DoubledNgon(6, 1.0), 0.1);
  EXPECT_NEAR(meridian_on_tube(hex, 2).total_length, 2.0 * std::sqrt(3.0) + 0.2 * kPi, 1e-12);
  EXPECT_THROW(meridian_on_tube(TubeSurface(DoubledNgon(5, 1.0), 0.1), 0), ValidationError);
  EXPECT_THROW(meridian_on_tube(hex, 3), ValidationError);
  EXPECT_THROW(meridian_on_tube(hex, -1), ValidationError);
}

TEST(TubeMeridian, PassesHalfGeodesicVerification) {
  const double eps = 0.1;
  TubeSurface t(DoubledNgon(4, 1.0), eps);
  auto g = std::make_shared<const TubeDistanceGraph>(t, eps / 5);
  auto report = metric::verify_one_over_k(TubeSpace(t), meridian_on_tube(t, 0), graph_oracle(g), 2,
                                          metric::ToleranceConfig::for_oracle_error(g->error_bound()));
  EXPECT_EQ(report.verdict, metric::Verdict::kPass);
  EXPECT_LE(report.max_deviation, 5.0 * g->error_bound());
}

TEST(TubeMeridian, ConvergesToPolygonMeridian) {
  for (double eps : {0.1, 0.05, 0.025}) {
    TubeSurface t(DoubledNgon(4, 1.0), eps);
    double dev = meridian_convergence(t, 1);
    EXPECT_LE(dev, 2.0 * eps) << eps;
    EXPECT_GT(dev, 0.0);
  }
}

TEST(TubeDistortion, ShrinksWithEps) {
  double prev = std::numeric_limits<double>::infinity();
  for (double eps : {0.1, 0.05}) {
    TubeSurface t(DoubledNgon(4, 1.0), eps);
    TubeDistanceGraph g(t, eps / 5);
    auto rep = gh_distortion(t, g, 150, 21);
    EXPECT_LE(rep.max_distortion, 10.0 * eps);
    EXPECT_LT(rep.max_distortion, prev);
    EXPECT_LE(rep.max_distortion, rep.max_raw);
    prev = rep.max_distortion;
  }
}

TEST(TubeBirkhoff, LuneLoopContracts) {
  TubeSurface t(DoubledNgon(4, 1.0), 0.1);
  TubeDistanceGraph g(t, 0.1 / 3);
  auto res = birkhoff_shorten(g, lune_loop(t, 2, 0.6, 16));
  EXPECT_TRUE(res.contracted);
  EXPECT_LT(res.length, 4.0 * g.h());
}

TEST(TubeBirkhoff, MeridianIsStable) {
  const double eps = 0.1;
  TubeSurface t(DoubledNgon(4, 1.0), eps);
  TubeDistanceGraph g(t, eps / 3);
  auto res = birkhoff_shorten(g, sample_curve(t, meridian_on_tube(t, 1), 16));
  EXPECT_FALSE(res.contracted);
  EXPECT_TRUE(res.converged);
  EXPECT_NEAR(res.length, 2.0 + 2.0 * kPi * eps, 1e-6);
}

TEST(TubeBirkhoff, ValidatesLevels) {
  TubeSurface t(DoubledNgon(4, 1.0), 0.1);
  TubeDistanceGraph g(t, 0.1 / 3);
  auto loop = lune_loop(t, 0, 0.5, 16);
  BirkhoffConfig odd;
  odd.levels = {15, 30};
  EXPECT_THROW(birkhoff_shorten(g, loop, odd), ValidationError);
  BirkhoffConfig skip;
  skip.levels = {16, 64};
  EXPECT_THROW(birkhoff_shorten(g, loop, skip), ValidationError);
  EXPECT_THROW(birkhoff_shorten(g, lune_loop(t, 0, 0.5, 8)), ValidationError);
}

TEST(TubeBirkhoff, PlaneSectionsAreValidLoops) {
  TubeSurface t(DoubledNgon(3, 1.0), 0.05);
  TubeSpace space(t);
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    auto loop = plane_section_loop(t, rng, 32);
    ASSERT_EQ(loop.size(), 32u);
    for (const auto& p : loop) EXPECT_NO_THROW(t.validate(p));
  }
}

TEST(TubeSystole, SurvivorsAreLong) {
  // Every surviving loop on the square tube is a meridian-type geodesic.
  const double eps = 0.1;
  TubeSurface t(DoubledNgon(4, 1.0), eps);
  TubeDistanceGraph g(t, eps / 3);
  auto rep = systole_probe(t, g, 12, 4);
  EXPECT_EQ(rep.runs.size(), 12u);
  EXPECT_GE(rep.min_surviving_length, 1.0);
  for (const auto& run : rep.runs) {
    if (!run.result.contracted) {
      EXPECT_NEAR(run.result.length, 2.0 + 2.0 * kPi * eps, 0.02);
    }
  }
}

TEST(TubeGeometry, SummaryBoundsAreConsistent) {
  double prev_diam = std::numeric_limits<double>::infinity();
  for (double eps : {0.1, 0.05}) {
    TubeSurface t(DoubledNgon(4, 1.0), eps);
    auto s = geometry_summary(t);
    EXPECT_EQ(s.curvature_lower, 0.0);
    EXPECT_NEAR(s.area, area_formula(t.base(), eps), 1e-12);
    EXPECT_GE(s.area, 2.0 * t.base().face_area());
    EXPECT_GT(s.vol_lower, 0.0);
    // Half the meridian separates antipodal meridian points.
    EXPECT_GE(s.diam_upper, 1.0 + kPi * eps);
    EXPECT_LT(s.diam_upper, prev_diam);
    prev_diam = s.diam_upper;
  }
}

}  // namespace
