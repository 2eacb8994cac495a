#include "geolab/metric/verify.hpp"

#include <algorithm>

namespace geolab::metric {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "PASS";
    case Verdict::kFail: return "FAIL";
    case Verdict::kInconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

ToleranceConfig ToleranceConfig::for_oracle_error(double err, int sample_count,
                                                  std::uint64_t seed) {
  ToleranceConfig cfg;
  if (err <= 0.0) {
    cfg.pass_tol = 1e-9;
    cfg.fail_gap = std::nextafter(cfg.pass_tol, 1.0);
  } else {
    cfg.pass_tol = 5.0 * err;
    cfg.fail_gap = 10.0 * err + 1e-9;
  }
  cfg.sample_count = sample_count;
  cfg.rng_seed = seed;
  return cfg;
}

void ToleranceConfig::validate() const {
  if (!(pass_tol > 0.0 && pass_tol < fail_gap)) {
    throw ValidationError("tolerances must satisfy 0 < pass_tol < fail_gap");
  }
  if (sample_count < 1) throw ValidationError("sample_count must be positive");
}

Verdict classify_deviation(double max_deviation, const ToleranceConfig& cfg) {
  if (max_deviation <= cfg.pass_tol) return Verdict::kPass;
  if (max_deviation >= cfg.fail_gap) return Verdict::kFail;
  return Verdict::kInconclusive;
}

void to_json(nlohmann::json& j, const VerificationReport& r) {
  j = nlohmann::json{{"k", r.k},
                     {"sample_count", r.sample_count},
                     {"max_deviation", r.max_deviation},
                     {"worst_t", r.worst_t},
                     {"verdict", verdict_name(r.verdict)}};
}

std::vector<double> sample_parameters(const std::vector<double>& breakpoint_ts,
                                      int sample_count) {
  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(sample_count) + breakpoint_ts.size());
  for (int j = 0; j < sample_count; ++j) ts.push_back(kTwoPi * j / sample_count);
  ts.insert(ts.end(), breakpoint_ts.begin(), breakpoint_ts.end());
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

bool diameter_cutoff(double length, double diameter, double pass_tol) {
  if (!(length > 0.0) || !(diameter > 0.0)) {
    throw ValidationError("diameter_cutoff needs positive length and diameter");
  }
  return length <= 2.0 * diameter + pass_tol;
}

}  // namespace geolab::metric
