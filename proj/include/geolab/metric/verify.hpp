#pragma once

// 1/k-geodesic verification: a closed curve gamma of length L is a 1/k-geodesic
// when d(gamma(t), gamma(t + 2pi/k)) = L/k for every t.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"

#include "geolab/errors.hpp"
#include "geolab/metric/curve.hpp"
#include "geolab/metric/oracle.hpp"
#include "geolab/parallel.hpp"

namespace geolab::metric {

enum class Verdict { kPass, kFail, kInconclusive };

const char* verdict_name(Verdict v);

struct ToleranceConfig {
  double pass_tol = 1e-9;
  double fail_gap = 1.0000000000000002e-9;
  int sample_count = 720;
  std::uint64_t rng_seed = 0;

  // Defaults scaled to an oracle's declared error. For exact oracles the fail
  // gap sits one ulp above pass_tol, so every sample is decided.
  static ToleranceConfig for_oracle_error(double err, int sample_count = 720,
                                          std::uint64_t seed = 0);
  void validate() const;
};

Verdict classify_deviation(double max_deviation, const ToleranceConfig& cfg);

struct DeviationSample {
  double t = 0.0;
  double distance = 0.0;
  double deviation = 0.0;
};

struct VerificationReport {
  int k = 2;
  int sample_count = 0;
  double max_deviation = 0.0;
  double worst_t = 0.0;
  Verdict verdict = Verdict::kPass;
  std::vector<DeviationSample> samples;
};

void to_json(nlohmann::json& j, const VerificationReport& r);

// Oracle failure at a specific curve parameter.
class OracleFailure : public NumericalFailure {
 public:
  OracleFailure(double t, const std::string& what)
      : NumericalFailure("distance oracle failed at t=" + std::to_string(t) + ": " + what),
        t_(t) {}
  double t() const { return t_; }

 private:
  double t_;
};

// Uniform grid of cfg.sample_count parameters plus every breakpoint parameter.
std::vector<double> sample_parameters(const std::vector<double>& breakpoint_ts,
                                      int sample_count);

template <CurveSpace S>
VerificationReport verify_one_over_k(const S& space,
                                     const ClosedCurve<typename S::Point>& curve,
                                     const DistanceOracle<typename S::Point>& oracle, int k,
                                     const ToleranceConfig& cfg) {
  if (k < 2) throw ValidationError("k must be at least 2");
  if (oracle.surface_id != curve.surface_id) {
    throw ValidationError("oracle surface '" + oracle.surface_id + "' does not match curve '" +
                          curve.surface_id + "'");
  }
  cfg.validate();
  check_breakpoint_order(curve);

  std::vector<double> bts;
  for (const auto& b : curve.breakpoints) bts.push_back(b.t);
  const std::vector<double> ts = sample_parameters(bts, cfg.sample_count);
  const double target = curve.total_length / k;
  const double offset = kTwoPi / k;

  std::vector<DeviationSample> samples(ts.size());
  parallel_for(ts.size(), [&](std::size_t i) {
    const double t = ts[i];
    double d = 0.0;
    try {
      d = oracle(point_at(space, curve, t), point_at(space, curve, t + offset));
    } catch (const std::exception& e) {
      throw OracleFailure(t, e.what());
    }
    samples[i] = {t, d, std::abs(d - target)};
  });

  VerificationReport report;
  report.k = k;
  report.sample_count = static_cast<int>(samples.size());
  report.max_deviation = -1.0;
  for (const auto& s : samples) {
    if (s.deviation > report.max_deviation) {
      report.max_deviation = s.deviation;
      report.worst_t = s.t;
    }
  }
  report.verdict = classify_deviation(report.max_deviation, cfg);
  report.samples = std::move(samples);
  return report;
}

struct AxiomReport {
  int point_count = 0;
  double allowance = 0.0;     // oracle error bound the checks were scaled by
  double max_self_distance = 0.0;
  double max_asymmetry = 0.0;
  double max_triangle_excess = 0.0;
  // Largest amount by which any check exceeded its allowance (<= 0 means clean).
  double worst_violation = 0.0;
  int violation_count = 0;
};

// Identity (d(p,p) <= err), symmetry (within 2 err) and the triangle
// inequality (within 3 err) on all pairs and triples of points.
template <class Point>
AxiomReport metric_axiom_check(const DistanceOracle<Point>& oracle,
                               const std::vector<Point>& points, double extra_tol = 1e-12) {
  if (points.size() < 3) throw ValidationError("axiom check needs at least three points");
  const std::size_t m = points.size();
  std::vector<double> d(m * m);
  parallel_for(m, [&](std::size_t i) {
    for (std::size_t j = 0; j < m; ++j) d[i * m + j] = oracle(points[i], points[j]);
  });
  const double err = oracle.error_bound;
  AxiomReport r;
  r.point_count = static_cast<int>(m);
  r.allowance = err;
  r.worst_violation = -std::numeric_limits<double>::infinity();
  auto note = [&](double value, double allowed) {
    double excess = value - allowed - extra_tol;
    r.worst_violation = std::max(r.worst_violation, excess);
    if (excess > 0.0) ++r.violation_count;
  };
  for (std::size_t i = 0; i < m; ++i) {
    r.max_self_distance = std::max(r.max_self_distance, std::abs(d[i * m + i]));
    note(std::abs(d[i * m + i]), err);
    for (std::size_t j = 0; j < m; ++j) {
      double asym = std::abs(d[i * m + j] - d[j * m + i]);
      r.max_asymmetry = std::max(r.max_asymmetry, asym);
      note(asym, 2.0 * err);
      for (std::size_t l = 0; l < m; ++l) {
        double excess = d[i * m + l] - d[i * m + j] - d[j * m + l];
        r.max_triangle_excess = std::max(r.max_triangle_excess, excess);
        note(excess, 3.0 * err);
      }
    }
  }
  return r;
}

// The L <= 2 diam(M) bound that holds whenever a half-geodesic exists; used to
// prune half-geodesic candidates.
bool diameter_cutoff(double length, double diameter, double pass_tol = 1e-9);

}  // namespace geolab::metric
