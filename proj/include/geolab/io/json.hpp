#pragma once

// JSON serialization of every module's results, plus the report envelope the
// CLI emits. Doubles round-trip exactly; non-finite values become null.

#include <optional>
#include <string>

#include <json.hpp>

#include "geolab/ellipsoid/classify.hpp"
#include "geolab/metric/verify.hpp"
#include "geolab/polygon/closed_geodesics.hpp"
#include "geolab/polygon/distance.hpp"
#include "geolab/polygon/ellipse.hpp"
#include "geolab/tube/curves.hpp"

namespace geolab::io {

using Json = nlohmann::json;

inline constexpr const char* kReportSchemaId = "geolab.report/1";

const char* version();

Json finite_or_null(double v);

Json to_json(const metric::VerificationReport& r, bool with_samples = false);
Json to_json(const metric::ToleranceConfig& t);

Json to_json(const polygon::DoubledNgon& g);
Json to_json(const polygon::PolygonPoint& p);
Json to_json(const polygon::ClosedGeodesic& g);
Json to_json(const polygon::EnumerationCertificate& c);
Json to_json(const polygon::EnumerationResult& r);
Json to_json(const polygon::HalfGeodesicClassification& c);
Json to_json(const polygon::ClearanceResult& c);
Json to_json(const polygon::DoubledNgon& g, const polygon::DistanceResult& r);

Json to_json(const tube::TubePoint& p);
Json to_json(const tube::CheegerInputs& c);
Json to_json(const tube::DistortionReport& r);
Json to_json(const tube::SystoleReport& r);

Json to_json(const ellipsoid::SectionClassification& c);
Json to_json(const ellipsoid::SearchResult& r, bool with_traces = false);

struct Verdict {
  std::string expected;  // what the run was checked against, or "none"
  bool holds = true;
  std::string summary;
};

// Envelope shared by all experiments: spec echo, results, verdict summary and
// provenance (seed, tolerances, version, kernel ISA). No timestamps, so equal
// specs give byte-identical reports.
Json make_report(const std::string& experiment, Json spec, Json results, const Verdict& verdict,
                 std::optional<std::uint64_t> seed, Json tolerances);

}  // namespace geolab::io
