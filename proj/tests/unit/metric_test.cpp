#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "geolab/metric/verify.hpp"

namespace geolab::metric {
namespace {

// Round circle of circumference c; points are arc positions in [0, c).
struct CircleSpace {
  using Point = double;
  double c = 2.0 * std::numbers::pi;
  double wrap(double x) const {
    double w = std::fmod(x, c);
    return w < 0 ? w + c : w;
  }
  double forward(double a, double b) const { return wrap(b - a); }
  double segment_length(double a, double b) const { return forward(a, b); }
  double interpolate(double a, double b, double lambda) const {
    return wrap(a + lambda * forward(a, b));
  }
  std::string surface_id() const { return "circle"; }
};

DistanceOracle<double> circle_oracle(const CircleSpace& s, double err = 0.0) {
  return {[s](double a, double b) {
            double f = s.forward(a, b);
            return std::min(f, s.c - f);
          },
          err, "circle"};
}

ClosedCurve<double> loop(const CircleSpace& s, int windings, int pieces) {
  ClosedCurve<double> curve{{}, windings * s.c, "circle"};
  for (int i = 0; i < pieces; ++i) {
    curve.breakpoints.push_back({kTwoPi * i / pieces, s.wrap(windings * s.c * i / pieces)});
  }
  return curve;
}

TEST(Curve, OrderingChecks) {
  CircleSpace s;
  ClosedCurve<double> one{{{0.0, 0.0}}, 1.0, "circle"};
  EXPECT_THROW(check_breakpoint_order(one), ValidationError);
  ClosedCurve<double> unsorted{{{0.0, 0.0}, {2.0, 1.0}, {1.0, 2.0}}, 3.0, "circle"};
  EXPECT_THROW(check_breakpoint_order(unsorted), ValidationError);
  ClosedCurve<double> shifted{{{0.1, 0.0}, {2.0, 1.0}}, 3.0, "circle"};
  EXPECT_THROW(check_breakpoint_order(shifted), ValidationError);
  EXPECT_NO_THROW(validate_curve(s, loop(s, 1, 4)));
}

TEST(Curve, RejectsNonConstantSpeed) {
  CircleSpace s;
  auto c = loop(s, 1, 4);
  c.breakpoints[1].t = 1.0;
  EXPECT_THROW(validate_curve(s, c), ValidationError);
  auto d = loop(s, 1, 4);
  d.total_length *= 1.01;
  EXPECT_THROW(validate_curve(s, d), ValidationError);
}

TEST(Curve, PointAtAndWrap) {
  CircleSpace s;
  auto c = loop(s, 1, 3);
  EXPECT_NEAR(point_at(s, c, 0.5), 0.5, 1e-15);
  EXPECT_NEAR(point_at(s, c, kTwoPi + 0.5), 0.5, 1e-12);
  EXPECT_NEAR(point_at(s, c, -0.5), s.c - 0.5, 1e-12);
  EXPECT_EQ(wrap_parameter(kTwoPi), 0.0);
}

TEST(Curve, ReversedAndRotatedKeepLength) {
  CircleSpace s;
  auto c = loop(s, 1, 5);
  auto r = rotated(s, c, 1.3);
  EXPECT_NO_THROW(validate_curve(s, r));
  EXPECT_NEAR(point_at(s, r, 0.0), 1.3, 1e-12);
  EXPECT_NEAR(point_at(s, r, 1.0), point_at(s, c, 2.3), 1e-12);
  auto rev = reversed(c);
  EXPECT_EQ(rev.breakpoints.size(), c.breakpoints.size());
  EXPECT_NEAR(rev.breakpoints[1].t, kTwoPi - c.breakpoints.back().t, 0.0);
}

TEST(Verify, GreatCircleIsHalfGeodesic) {
  CircleSpace s;
  auto report = verify_one_over_k(s, loop(s, 1, 4), circle_oracle(s), 2, ToleranceConfig{});
  EXPECT_EQ(report.verdict, Verdict::kPass);
  EXPECT_LT(report.max_deviation, 1e-12);
  EXPECT_GE(report.sample_count, 720);
}

TEST(Verify, DoubleCoverIsNotHalfGeodesic) {
  // Twice around: gamma(t + pi) = gamma(t), so the deviation is L/2 = 2pi.
  CircleSpace s;
  auto report = verify_one_over_k(s, loop(s, 2, 4), circle_oracle(s), 2, ToleranceConfig{});
  EXPECT_EQ(report.verdict, Verdict::kFail);
  EXPECT_NEAR(report.max_deviation, s.c, 1e-12);
}

TEST(Verify, ThirdGeodesicOnCircle) {
  CircleSpace s;
  auto report = verify_one_over_k(s, loop(s, 1, 6), circle_oracle(s), 3, ToleranceConfig{});
  EXPECT_EQ(report.verdict, Verdict::kPass);
}

TEST(Verify, InputChecks) {
  CircleSpace s;
  auto c = loop(s, 1, 4);
  EXPECT_THROW(verify_one_over_k(s, c, circle_oracle(s), 1, ToleranceConfig{}), ValidationError);
  auto other = circle_oracle(s);
  other.surface_id = "elsewhere";
  EXPECT_THROW(verify_one_over_k(s, c, other, 2, ToleranceConfig{}), ValidationError);
  ToleranceConfig bad;
  bad.fail_gap = bad.pass_tol;
  EXPECT_THROW(verify_one_over_k(s, c, circle_oracle(s), 2, bad), ValidationError);
}

TEST(Verify, OracleExceptionsCarryParameter) {
  CircleSpace s;
  DistanceOracle<double> broken{[](double, double) -> double { throw std::runtime_error("x"); },
                                0.0, "circle"};
  EXPECT_THROW(verify_one_over_k(s, loop(s, 1, 4), broken, 2, ToleranceConfig{}), OracleFailure);
}

TEST(Verify, ToleranceBands) {
  auto cfg = ToleranceConfig::for_oracle_error(0.01);
  EXPECT_DOUBLE_EQ(cfg.pass_tol, 0.05);
  EXPECT_DOUBLE_EQ(cfg.fail_gap, 0.1 + 1e-9);
  EXPECT_EQ(classify_deviation(0.04, cfg), Verdict::kPass);
  EXPECT_EQ(classify_deviation(0.07, cfg), Verdict::kInconclusive);
  EXPECT_EQ(classify_deviation(0.2, cfg), Verdict::kFail);
  auto exact = ToleranceConfig::for_oracle_error(0.0);
  EXPECT_LT(exact.pass_tol, exact.fail_gap);
  EXPECT_EQ(classify_deviation(exact.pass_tol, exact), Verdict::kPass);
  EXPECT_EQ(classify_deviation(exact.fail_gap, exact), Verdict::kFail);
}

TEST(Verify, SampleParametersIncludeBreakpoints) {
  auto ts = sample_parameters({0.0, 0.123, 4.0}, 8);
  EXPECT_TRUE(std::is_sorted(ts.begin(), ts.end()));
  EXPECT_NE(std::find(ts.begin(), ts.end(), 0.123), ts.end());
  EXPECT_EQ(ts.size(), 10u);
}

TEST(Verify, ReportJson) {
  CircleSpace s;
  auto report = verify_one_over_k(s, loop(s, 1, 4), circle_oracle(s), 2, ToleranceConfig{});
  nlohmann::json j = report;
  EXPECT_EQ(j["verdict"], "PASS");
  EXPECT_EQ(j["k"], 2);
  EXPECT_TRUE(j.contains("worst_t"));
}

TEST(Axioms, ExactCircleMetricIsClean) {
  CircleSpace s;
  std::vector<double> pts;
  for (int i = 0; i < 20; ++i) pts.push_back(0.31 * i);
  auto r = metric_axiom_check(circle_oracle(s), pts);
  EXPECT_EQ(r.violation_count, 0);
  EXPECT_LE(r.worst_violation, 0.0);
}

TEST(Axioms, DetectsBrokenTriangleInequality) {
  DistanceOracle<double> sq{[](double a, double b) { return (a - b) * (a - b); }, 0.0, "line"};
  auto r = metric_axiom_check(sq, std::vector<double>{0.0, 1.0, 2.0});
  EXPECT_GT(r.violation_count, 0);
  EXPECT_NEAR(r.max_triangle_excess, 2.0, 1e-12);
}

TEST(Axioms, DiameterCutoff) {
  EXPECT_TRUE(diameter_cutoff(2.0, 1.0));
  EXPECT_FALSE(diameter_cutoff(2.1, 1.0));
}

}  // namespace
}  // namespace geolab::metric
