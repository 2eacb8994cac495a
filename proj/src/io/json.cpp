#include "geolab/io/json.hpp"

#include <cmath>

#include "geolab/simd/kernels.hpp"

#ifndef GEOLAB_VERSION
#define GEOLAB_VERSION "0.0.0"
#endif

namespace geolab::io {

namespace {

Json vec(const Vec2& v) { return Json::array({v.x, v.y}); }
Json vec(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

template <class Point>
Json breakpoints(const metric::ClosedCurve<Point>& c) {
  Json out = Json::array();
  for (const auto& b : c.breakpoints) out.push_back({{"t", b.t}, {"point", to_json(b.point)}});
  return out;
}

}  // namespace

const char* version() { return GEOLAB_VERSION; }

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json to_json(const metric::VerificationReport& r, bool with_samples) {
  Json j{{"k", r.k},
         {"sample_count", r.sample_count},
         {"max_deviation", finite_or_null(r.max_deviation)},
         {"worst_t", r.worst_t},
         {"verdict", metric::verdict_name(r.verdict)}};
  if (with_samples) {
    Json s = Json::array();
    for (const auto& d : r.samples) s.push_back({{"t", d.t}, {"distance", d.distance}, {"deviation", d.deviation}});
    j["samples"] = std::move(s);
  }
  return j;
}

Json to_json(const metric::ToleranceConfig& t) {
  return {{"pass_tol", t.pass_tol}, {"fail_gap", t.fail_gap}, {"sample_count", t.sample_count}};
}

Json to_json(const polygon::DoubledNgon& g) {
  return {{"n", g.n()}, {"side", g.side()}, {"apothem", g.apothem()}, {"id", g.id()}};
}

Json to_json(const polygon::PolygonPoint& p) {
  if (const auto* in = polygon::as_interior(p)) {
    return {{"kind", "interior"}, {"face", polygon::face_name(in->face)}, {"x", in->xy.x}, {"y", in->xy.y}};
  }
  const auto* e = polygon::as_edge(p);
  return {{"kind", "edge"}, {"edge", e->edge}, {"u", e->u}};
}

Json to_json(const polygon::ClosedGeodesic& g) {
  return {{"length", g.curve.total_length},
          {"period", g.period},
          {"edges", g.edges},
          {"start_face", polygon::face_name(g.start_face)},
          {"tag", polygon::tag_name(g.tag)},
          {"family_width", g.family_width},
          {"direction", vec(g.direction)},
          {"breakpoints", breakpoints(g.curve)}};
}

Json to_json(const polygon::EnumerationCertificate& c) {
  return {{"l_max", c.l_max},
          {"nodes_explored", c.nodes_explored},
          {"deepest_sequence", c.deepest_sequence},
          {"exhausted", c.exhausted}};
}

Json to_json(const polygon::EnumerationResult& r) {
  Json gs = Json::array();
  for (const auto& g : r.geodesics) {
    if (g.representative) gs.push_back(to_json(g));
  }
  return {{"certificate", to_json(r.certificate)},
          {"total_found", r.geodesics.size()},
          {"representatives", std::move(gs)}};
}

Json to_json(const polygon::HalfGeodesicClassification& c) {
  Json fams = Json::array();
  for (const auto& f : c.families) {
    Json members = Json::array();
    for (const auto& m : f.members) members.push_back({{"fraction", m.fraction}, {"report", to_json(m.report)}});
    fams.push_back({{"core", to_json(f.core)}, {"core_report", to_json(f.core_report)}, {"members", std::move(members)}});
  }
  Json halves = Json::array();
  for (const auto& g : c.half_geodesics) halves.push_back(to_json(g));
  return {{"diameter", {{"value", c.diameter.value}, {"error_bound", c.diameter.error_bound},
                        {"grid", c.diameter.grid}, {"pairs", c.diameter.pairs}}},
          {"l_max", c.l_max},
          {"certificate", to_json(c.certificate)},
          {"half_geodesic_count", c.half_geodesics.size()},
          {"half_geodesics", std::move(halves)},
          {"families", std::move(fams)}};
}

Json to_json(const polygon::ClearanceResult& c) {
  Json edges = Json::array();
  for (const auto& e : c.edges) edges.push_back({{"edge", e.edge}, {"u", e.u}, {"focal_sum", e.focal_sum}});
  return {{"clear", c.clear},
          {"witness", {{"edge", c.witness.edge}, {"u", c.witness.u}, {"focal_sum", c.witness.focal_sum}}},
          {"witness_point", vec(c.witness_point)},
          {"edges", std::move(edges)}};
}

Json to_json(const polygon::DoubledNgon& g, const polygon::DistanceResult& r) {
  Json crossings = Json::array();
  for (const auto& c : r.path.crossings) {
    crossings.push_back({{"edge", c.edge}, {"u", c.u}, {"from", polygon::face_name(c.from)}});
  }
  Json poly = Json::array();
  for (const auto& v : polygon::path_polyline(g, r.path)) poly.push_back(vec(v));
  return {{"length", r.length},
          {"nodes_explored", r.nodes_explored},
          {"start", to_json(r.path.start)},
          {"end", to_json(r.path.end)},
          {"start_face", polygon::face_name(r.path.start_face)},
          {"vertex_margin", finite_or_null(r.path.vertex_margin)},
          {"crossings", std::move(crossings)},
          {"polyline", std::move(poly)}};
}

Json to_json(const tube::TubePoint& p) {
  return {{"region", tube::region_name(p.region)}, {"index", p.index}, {"a", p.a}, {"b", p.b}};
}

Json to_json(const tube::CheegerInputs& c) {
  return {{"diam_upper", c.diam_upper},
          {"vol_lower", c.vol_lower},
          {"curvature_lower", c.curvature_lower},
          {"area", c.area},
          {"base_diameter", c.base_diameter.value}};
}

Json to_json(const tube::DistortionReport& r) {
  return {{"samples", r.samples},
          {"max_raw", r.max_raw},
          {"allowance", r.allowance},
          {"max_distortion", r.max_distortion},
          {"worst_p", to_json(r.worst_p)},
          {"worst_q", to_json(r.worst_q)}};
}

Json to_json(const tube::SystoleReport& r) {
  Json runs = Json::array();
  for (const auto& run : r.runs) {
    runs.push_back({{"seed", run.seed},
                    {"length", run.result.length},
                    {"contracted", run.result.contracted},
                    {"converged", run.result.converged},
                    {"iterations", run.result.iterations}});
  }
  return {{"contracted", r.contracted},
          {"unconverged", r.unconverged},
          {"min_surviving_length", finite_or_null(r.min_surviving_length)},
          {"runs", std::move(runs)}};
}

Json to_json(const ellipsoid::SectionClassification& c) {
  Json secs = Json::array();
  for (const auto& v : c.sections) {
    secs.push_back({{"plane", ellipsoid::plane_name(v.section.plane)},
                    {"semi_axes", Json::array({v.section.p, v.section.q})},
                    {"perimeter", v.section.perimeter},
                    {"elliptic_perimeter", v.section.elliptic_perimeter},
                    {"geodesic_residual", v.section.geodesic_residual},
                    {"verdict", metric::verdict_name(v.report.verdict)},
                    {"max_deviation", v.report.max_deviation},
                    {"report", to_json(v.report)}});
  }
  return {{"axes", vec(c.axes)},
          {"oracle_error", c.oracle_error},
          {"tolerance", to_json(c.tolerance)},
          {"sections", std::move(secs)}};
}

Json to_json(const ellipsoid::SearchResult& r, bool with_traces) {
  Json found = Json::array();
  for (const auto& g : r.found) {
    Json j{{"label", g.label},
           {"length", g.length},
           {"transversal", ellipsoid::plane_name(g.transversal)},
           {"phi", g.phi},
           {"psi", g.psi},
           {"residual", g.residual}};
    if (with_traces) {
      Json t = Json::array();
      for (const auto& x : g.trace) t.push_back(vec(x));
      j["trace"] = std::move(t);
    }
    found.push_back(std::move(j));
  }
  return {{"exhaustive", r.exhaustive}, {"trials", r.trials}, {"converged", r.converged}, {"found", std::move(found)}};
}

Json make_report(const std::string& experiment, Json spec, Json results, const Verdict& verdict,
                 std::optional<std::uint64_t> seed, Json tolerances) {
  return {{"schema", kReportSchemaId},
          {"experiment", experiment},
          {"spec", std::move(spec)},
          {"results", std::move(results)},
          {"verdict", {{"expected", verdict.expected}, {"holds", verdict.holds}, {"summary", verdict.summary}}},
          {"provenance",
           {{"version", version()},
            {"seed", seed ? Json(*seed) : Json(nullptr)},
            {"tolerances", std::move(tolerances)},
            {"isa", simd::isa_name(simd::active_isa())}}}};
}

}  // namespace geolab::io
