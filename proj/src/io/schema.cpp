#include "geolab/io/schema.hpp"

#include <fstream>

#include "geolab/errors.hpp"

namespace geolab::io {

namespace {

bool has_type(const Json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  throw ValidationError("schema uses unsupported type '" + t + "'");
}

class Validator {
 public:
  explicit Validator(const Json& root) : root_(root) {}

  void check(const Json& v, const Json& s, const std::string& at) {
    if (s.contains("$ref")) {
      const std::string ref = s["$ref"];
      const std::string prefix = "#/definitions/";
      if (ref.rfind(prefix, 0) != 0) throw ValidationError("unsupported $ref '" + ref + "'");
      check(v, root_.at("definitions").at(ref.substr(prefix.size())), at);
      return;
    }
    if (s.contains("type")) {
      const Json& t = s["type"];
      bool ok = false;
      if (t.is_string()) {
        ok = has_type(v, t);
      } else {
        for (const auto& alt : t) ok = ok || has_type(v, alt);
      }
      if (!ok) {
        fail(at, "expected type " + t.dump() + ", got " + v.type_name());
        return;
      }
    }
    if (s.contains("enum")) {
      bool ok = false;
      for (const auto& e : s["enum"]) ok = ok || e == v;
      if (!ok) fail(at, "value " + v.dump() + " not in " + s["enum"].dump());
    }
    if (v.is_number()) {
      double x = v.get<double>();
      if (s.contains("minimum") && x < s["minimum"].get<double>()) fail(at, "below minimum");
      if (s.contains("maximum") && x > s["maximum"].get<double>()) fail(at, "above maximum");
    }
    if (v.is_object()) {
      if (s.contains("required")) {
        for (const auto& key : s["required"]) {
          if (!v.contains(key.get<std::string>())) fail(at, "missing required '" + key.get<std::string>() + "'");
        }
      }
      const bool closed = s.contains("additionalProperties") && s["additionalProperties"] == false;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (s.contains("properties") && s["properties"].contains(it.key())) {
          check(it.value(), s["properties"][it.key()], at + "/" + it.key());
        } else if (closed) {
          fail(at, "unexpected property '" + it.key() + "'");
        }
      }
    }
    if (v.is_array()) {
      if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>()) fail(at, "too few items");
      if (s.contains("items")) {
        for (std::size_t i = 0; i < v.size(); ++i) check(v[i], s["items"], at + "/" + std::to_string(i));
      }
    }
  }

  std::vector<std::string> errors;

 private:
  void fail(const std::string& at, const std::string& what) { errors.push_back((at.empty() ? "/" : at) + ": " + what); }

  const Json& root_;
};

}  // namespace

std::vector<std::string> validate_schema(const Json& doc, const Json& schema) {
  Validator v(schema);
  v.check(doc, schema, "");
  return v.errors;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
}

std::vector<std::string> validate_report(const Json& report, const std::string& schema_dir) {
  auto errors = validate_schema(report, load_json_file(schema_dir + "/report.schema.json"));
  if (!errors.empty() || !report.contains("experiment")) return errors;
  const std::string experiment = report["experiment"];
  auto more = validate_schema(report["results"], load_json_file(schema_dir + "/" + experiment + ".schema.json"));
  for (auto& e : more) errors.push_back("/results" + e);
  return errors;
}

}  // namespace geolab::io
