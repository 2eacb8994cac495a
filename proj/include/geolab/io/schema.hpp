#pragma once

// Validator for the JSON Schema subset used by the shipped schemas: type,
// properties, required, additionalProperties (boolean), items, enum,
// minimum/maximum, minItems and local "$ref": "#/definitions/...".

#include <string>
#include <vector>

#include "geolab/io/json.hpp"

namespace geolab::io {

// One message per violation, each prefixed with a JSON pointer. Empty means valid.
std::vector<std::string> validate_schema(const Json& doc, const Json& schema);

Json load_json_file(const std::string& path);

// Envelope against report.schema.json, then "results" against
// <experiment>.schema.json, both from schema_dir.
std::vector<std::string> validate_report(const Json& report, const std::string& schema_dir);

}  // namespace geolab::io
