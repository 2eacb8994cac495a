#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "geolab/io/json.hpp"

namespace geolab::cli {

// Flag values; 0 or empty means "use the experiment's documented default".
struct Options {
  int n = 4;
  double side = 1.0;
  std::vector<double> eps{0.1};
  double h = 0.0;
  std::vector<double> axes{1.0, 1.005, 1.01};
  double lmax = 0.0;
  std::uint64_t seed = 1;
  double tol = 0.0;
  std::string p, q;  // polygon-distance endpoints
  int runs = 100;
  int trials = 200;
  int samples = 0;
  int meridian = 0;
  std::string expect = "auto";
};

struct Artifact {
  std::string format;  // "svg" or "csv"
  std::string filename;
  std::string content;
};

struct Outcome {
  io::Json report;
  std::vector<Artifact> artifacts;
  bool holds = true;
  std::string summary;
};

const std::vector<std::string>& experiment_ids();
std::set<std::string> available_formats(const std::string& experiment);

// Validates parameters against the owning module, runs, and builds the report.
// Artifacts are produced only for the requested formats.
Outcome run_experiment(const std::string& experiment, const Options& opt,
                       const std::set<std::string>& formats);

}  // namespace geolab::cli
