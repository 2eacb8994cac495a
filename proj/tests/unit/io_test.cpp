#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "experiments.hpp"
#include "geolab/errors.hpp"
#include "geolab/io/output.hpp"
#include "geolab/io/schema.hpp"

namespace {

using namespace geolab;
using io::Json;

const std::string kSchemaDir = GEOLAB_SCHEMA_DIR;

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

TEST(SchemaValidator, CatchesEachKindOfViolation) {
  Json schema = Json::parse(R"({
    "definitions": {"pos": {"type": "number", "minimum": 0}},
    "type": "object", "required": ["a", "b"], "additionalProperties": false,
    "properties": {
      "a": {"type": "integer"},
      "b": {"type": "array", "minItems": 1, "items": {"$ref": "#/definitions/pos"}},
      "c": {"type": "string", "enum": ["x", "y"]},
      "d": {"type": ["number", "null"]}
    }})");
  EXPECT_TRUE(io::validate_schema(Json::parse(R"({"a": 1, "b": [0.5], "c": "x", "d": null})"), schema).empty());
  EXPECT_EQ(io::validate_schema(Json::parse(R"({"a": 1.5, "b": [1]})"), schema).size(), 1u);  // not integer
  EXPECT_EQ(io::validate_schema(Json::parse(R"({"a": 1})"), schema).size(), 1u);              // missing b
  EXPECT_EQ(io::validate_schema(Json::parse(R"({"a": 1, "b": []})"), schema).size(), 1u);     // minItems
  EXPECT_EQ(io::validate_schema(Json::parse(R"({"a": 1, "b": [-1]})"), schema).size(), 1u);   // $ref minimum
  EXPECT_EQ(io::validate_schema(Json::parse(R"({"a": 1, "b": [1], "c": "z"})"), schema).size(), 1u);
  EXPECT_EQ(io::validate_schema(Json::parse(R"({"a": 1, "b": [1], "e": 0})"), schema).size(), 1u);
  auto errs = io::validate_schema(Json::parse(R"({"a": 1, "b": ["s"]})"), schema);
  ASSERT_EQ(errs.size(), 1u);
  EXPECT_EQ(errs[0].rfind("/b/0:", 0), 0u) << errs[0];
}

TEST(Json, NonFiniteBecomesNullAndDoublesRoundTrip) {
  EXPECT_TRUE(io::finite_or_null(std::numeric_limits<double>::infinity()).is_null());
  const double x = 0.1 + 0.2;
  EXPECT_EQ(Json::parse(Json(x).dump()).get<double>(), x);
  EXPECT_EQ(std::stod(io::format_double(x)), x);
}

class ReportSchemas : public ::testing::TestWithParam<std::pair<std::string, cli::Options>> {};

TEST_P(ReportSchemas, ReportValidatesAndIsDeterministic) {
  const auto& [id, opt] = GetParam();
  auto a = cli::run_experiment(id, opt, {"json"});
  auto errors = io::validate_report(a.report, kSchemaDir);
  for (const auto& e : errors) ADD_FAILURE() << e;
  EXPECT_TRUE(a.holds) << a.summary;
  auto b = cli::run_experiment(id, opt, {"json"});
  EXPECT_EQ(a.report.dump(), b.report.dump());
}

cli::Options small(std::function<void(cli::Options&)> f) {
  cli::Options o;
  o.samples = 16;
  f(o);
  return o;
}

INSTANTIATE_TEST_SUITE_P(
    AllExperiments, ReportSchemas,
    ::testing::Values(std::make_pair("polygon-classify", small([](auto& o) { o.n = 4; })),
                      std::make_pair("polygon-classify", small([](auto& o) { o.n = 3; })),  // no half-geodesics
                      std::make_pair("polygon-distance", small([](auto& o) {
                                       o.n = 5, o.p = "top:0.1,0.2", o.q = "edge:2,0.3", o.h = 0.05;
                                     })),
                      std::make_pair("polygon-enumerate", small([](auto&) {})),
                      std::make_pair("tube-verify", small([](auto& o) { o.eps = {0.1}; })),
                      std::make_pair("tube-gh", small([](auto& o) { o.eps = {0.1, 0.05}; })),
                      std::make_pair("tube-systole", small([](auto& o) { o.n = 3, o.runs = 4; })),
                      std::make_pair("ellipsoid-classify", small([](auto& o) { o.axes = {1, 1, 1}; })),
                      std::make_pair("ellipsoid-search", small([](auto& o) { o.trials = 6; })),
                      std::make_pair("ellipsoid-search", small([](auto& o) { o.trials = 4, o.lmax = 6.0; }))),
    [](const auto& info) { return std::to_string(info.index); });

TEST(Experiments, EmptySearchIsSchemaValid) {
  cli::Options o;
  o.trials = 4;
  o.lmax = 6.0;  // below every section perimeter
  auto r = cli::run_experiment("ellipsoid-search", o, {"json"});
  EXPECT_TRUE(r.report["results"]["found"].empty());
  EXPECT_TRUE(io::validate_report(r.report, kSchemaDir).empty());
}

TEST(Experiments, RejectsBadParametersAndFormats) {
  cli::Options o;
  o.eps = {0.4};
  EXPECT_THROW(cli::run_experiment("tube-verify", o, {"json"}), ValidationError);
  EXPECT_THROW(cli::run_experiment("polygon-distance", cli::Options{}, {"json"}), ValidationError);
  EXPECT_THROW(cli::run_experiment("ellipsoid-classify", cli::Options{}, {"svg"}), ValidationError);
  EXPECT_THROW(cli::run_experiment("no-such-experiment", cli::Options{}, {"json"}), ValidationError);
  cli::Options odd;
  odd.n = 5;
  EXPECT_THROW(cli::run_experiment("tube-verify", odd, {"json"}), ValidationError);
}

TEST(Output, AtomicWriteReplacesContentAndLeavesNoTemporaries) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "geolab_io_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string path = (dir / "r.json").string();
  io::write_file_atomic(path, "first");
  io::write_file_atomic(path, "second");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "second");
  EXPECT_EQ(std::distance(fs::directory_iterator(dir), fs::directory_iterator()), 1);
  EXPECT_THROW(io::write_file_atomic((dir / "missing" / "x.json").string(), "x"), IoError);
  fs::remove_all(dir);
}

TEST(Output, CsvRowsMustMatchHeader) {
  io::CsvTable t{{"a", "b"}, {}};
  t.add({"1", "2"});
  EXPECT_THROW(t.add({"1"}), ValidationError);
  EXPECT_EQ(t.str(), "a,b\n1,2\n");
}

TEST(Output, FiguresContainTheirElements) {
  polygon::DoubledNgon sq(4, 1.0);
  auto ms = polygon::meridians(sq);
  std::string svg = io::polygon_curves_svg(sq, ms);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_EQ(count(svg, "<polygon"), 2u);  // the two faces
  EXPECT_GE(count(svg, "<polyline"), 2 * ms.size());

  polygon::PolygonPoint p = polygon::InteriorPoint{polygon::Face::kTop, {0.0, 0.2}};
  polygon::PolygonPoint q = polygon::InteriorPoint{polygon::Face::kBottom, {0.0, -0.2}};
  auto clear = polygon::ellipse_clearance_check(sq, p, q, 1.0, {1, 3});
  std::string w = io::ellipse_witness_svg(sq, {0.0, 0.2}, {0.0, -0.2}, 1.0, clear, {1, 3});
  EXPECT_EQ(count(w, "stroke:#2ca02c;stroke-width:4"), 2u);  // tangency edge pair
  EXPECT_EQ(count(w, "<circle"), 3u);                        // two foci and the witness

  tube::TubeSurface t(sq, 0.1);
  std::string atlas = io::tube_atlas_svg(t, {tube::meridian_on_tube(t, 0)});
  EXPECT_EQ(count(atlas, "fill:#b3b3b3"), 4u);  // cylinder strips
  EXPECT_EQ(count(atlas, "fill:#dcdcdc"), 4u);  // sphere sectors
  EXPECT_GE(count(atlas, "<polyline"), 2u);     // meridian split between the panels
}

}  // namespace
