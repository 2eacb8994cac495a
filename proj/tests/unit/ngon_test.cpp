#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "geolab/errors.hpp"
#include "geolab/polygon/ngon.hpp"

namespace geolab::polygon {
namespace {

TEST(DoubledNgon, SquareMeasurements) {
  DoubledNgon sq(4, 1.0);
  EXPECT_NEAR(sq.apothem(), 0.5, 1e-15);
  EXPECT_NEAR(sq.perimeter(), 4.0, 1e-15);
  EXPECT_NEAR(sq.face_area(), 1.0, 1e-15);
  EXPECT_NEAR(sq.circumradius(), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(sq.interior_angle(), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(sq.width_across_flats(), 1.0, 1e-15);
  EXPECT_EQ(sq.opposite_edge(1), 3);
}

TEST(DoubledNgon, HexagonAndTriangle) {
  DoubledNgon hex(6, 1.0);
  EXPECT_NEAR(hex.apothem(), std::sqrt(3.0) / 2, 1e-15);
  EXPECT_NEAR(hex.width_across_flats(), std::sqrt(3.0), 1e-15);
  DoubledNgon tri(3, 1.0);
  EXPECT_NEAR(tri.apothem(), 1.0 / (2 * std::sqrt(3.0)), 1e-15);
  EXPECT_FALSE(tri.has_parallel_edges());
  EXPECT_THROW(tri.width_across_flats(), ValidationError);
}

TEST(DoubledNgon, ChartConventions) {
  for (int n : {3, 4, 5, 7, 10}) {
    DoubledNgon g(n, 0.7);
    EXPECT_NEAR(g.edge_midpoint(0).y, 0.0, 1e-15);
    EXPECT_GT(g.edge_midpoint(0).x, 0.0);
    for (int e = 0; e < n; ++e) {
      EXPECT_NEAR((g.vertex(e + 1) - g.vertex(e)).norm(), 0.7, 1e-14);
      EXPECT_NEAR(dot(g.edge_midpoint(e), g.outward_normal(e)), g.apothem(), 1e-14);
      // CCW orientation.
      EXPECT_GT(cross(g.vertex(e), g.vertex(e + 1)), 0.0);
    }
  }
}

TEST(DoubledNgon, ReflectionFixesEdgeAndSwapsSides) {
  DoubledNgon g(5, 1.3);
  for (int e = 0; e < 5; ++e) {
    Isometry2 r = g.edge_reflection(e);
    EXPECT_NEAR(r.det(), -1.0, 1e-15);
    EXPECT_NEAR((r.apply(g.vertex(e)) - g.vertex(e)).norm(), 0.0, 1e-14);
    EXPECT_NEAR((r.apply(g.vertex(e + 1)) - g.vertex(e + 1)).norm(), 0.0, 1e-14);
    Vec2 c = r.apply({0.0, 0.0});
    EXPECT_NEAR(c.norm(), 2 * g.apothem(), 1e-14);
    Isometry2 id = r.compose(r);
    EXPECT_NEAR(id.apply({0.3, -0.2}).x, 0.3, 1e-14);
    Isometry2 inv = r.inverse();
    EXPECT_NEAR((inv.apply(r.apply({0.1, 0.4})) - Vec2{0.1, 0.4}).norm(), 0.0, 1e-14);
  }
}

TEST(DoubledNgon, Validation) {
  EXPECT_THROW(DoubledNgon(2, 1.0), ValidationError);
  EXPECT_THROW(DoubledNgon(4, 0.0), ValidationError);
  EXPECT_THROW(DoubledNgon(4, -1.0), ValidationError);
  DoubledNgon sq(4, 1.0);
  EXPECT_THROW(sq.interior(Face::kTop, {0.6, 0.0}), ValidationError);
  EXPECT_THROW(sq.on_edge(0, 0.0), ValidationError);
  EXPECT_THROW(sq.on_edge(0, 1.0), ValidationError);
  EXPECT_THROW(sq.on_edge(4, 0.5), ValidationError);
  EXPECT_NO_THROW(sq.interior(Face::kBottom, {0.49, 0.49}));
  EXPECT_EQ(sq.id(), DoubledNgon(4, 1.0).id());
  EXPECT_NE(sq.id(), DoubledNgon(4, 2.0).id());
}

TEST(PolygonSpace, SegmentsAndInterpolation) {
  PolygonSpace space(DoubledNgon(4, 1.0));
  PolygonPoint a = InteriorPoint{Face::kTop, {-0.25, 0.0}};
  PolygonPoint b = EdgePoint{0, 0.5};
  EXPECT_NEAR(space.segment_length(a, b), 0.75, 1e-15);
  PolygonPoint m = space.interpolate(a, b, 2.0 / 3.0);
  ASSERT_NE(as_interior(m), nullptr);
  EXPECT_EQ(as_interior(m)->face, Face::kTop);
  EXPECT_NEAR(as_interior(m)->xy.x, 0.25, 1e-15);
  EXPECT_EQ(space.interpolate(a, b, 1.0), b);
  PolygonPoint c = EdgePoint{1, 0.5};
  EXPECT_THROW(space.segment_length(b, c), ValidationError);
  PolygonPoint top = InteriorPoint{Face::kTop, {0.0, 0.0}};
  PolygonPoint bottom = InteriorPoint{Face::kBottom, {0.1, 0.0}};
  EXPECT_THROW(space.segment_length(top, bottom), ValidationError);
}

}  // namespace
}  // namespace geolab::polygon
