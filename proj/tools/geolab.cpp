// geolab: runs one experiment and emits its report and figures.
// Exit status: 0 when the expected verdicts hold, 1 on a verdict mismatch,
// 2 on invalid parameters, exhausted budgets, numerical or output failures.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "experiments.hpp"
#include "geolab/errors.hpp"
#include "geolab/io/output.hpp"

namespace {

using geolab::cli::Options;

std::set<std::string> parse_formats(const std::string& text) {
  std::set<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.insert(item);
  }
  if (out.empty()) out.insert("json");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geolab: half-geodesic experiments on doubled polygons, tubes and ellipsoids.\n"
               "GEOLAB_THREADS caps worker threads."};
  app.set_help_flag("--help", "print this help and exit");
  app.set_version_flag("--version", std::string(geolab::io::version()));
  app.require_subcommand(1);

  Options opt;
  std::string out_dir;
  std::string format = "json";

  const std::map<std::string, std::string> about{
      {"polygon-classify", "Classify half-geodesics on the doubled regular n-gon"},
      {"polygon-distance", "Exact distance between two points of the doubled n-gon"},
      {"polygon-enumerate", "Enumerate closed geodesics up to --lmax"},
      {"tube-verify", "Verify the tube meridian is a half-geodesic for each --eps"},
      {"tube-gh", "Gromov-Hausdorff distortion between tube and base for each --eps"},
      {"tube-systole", "Curve-shortening probe for short closed loops on the tube"},
      {"ellipsoid-classify", "Half-geodesic verdicts for the coordinate sections"},
      {"ellipsoid-search", "Random-start search for short closed geodesics"},
  };

  for (const auto& id : geolab::cli::experiment_ids()) {
    CLI::App* sub = app.add_subcommand(id, about.at(id));
    sub->set_help_flag("--help", "print this help and exit");  // --h is the graph spacing
    const bool polygon = id.rfind("polygon", 0) == 0, tube = id.rfind("tube", 0) == 0;
    const bool ell = id.rfind("ellipsoid", 0) == 0;
    if (polygon || tube) {
      sub->add_option("--n", opt.n, "number of polygon sides")->capture_default_str();
      sub->add_option("--side", opt.side, "polygon side length")->capture_default_str();
    }
    if (tube) {
      sub->add_option("--eps", opt.eps, "tube radius; repeatable")->capture_default_str();
      sub->add_option("--h", opt.h,
                      id == "tube-systole" ? "graph spacing (default eps/3)" : "graph spacing (default eps/5)");
    }
    if (id == "polygon-distance") {
      sub->add_option("--p", opt.p, "start point: top:x,y | bottom:x,y | edge:e,u")->required();
      sub->add_option("--q", opt.q, "end point, same forms as --p")->required();
      sub->add_option("--h", opt.h, "also compare with the mesh oracle at this spacing");
    }
    if (id == "polygon-enumerate") sub->add_option("--lmax", opt.lmax, "length cutoff (default 2 x diameter)");
    if (ell) {
      sub->add_option("--axes", opt.axes, "semi-axes a,b,c with a <= b <= c")->delimiter(',')->capture_default_str();
      sub->add_option("--expect", opt.expect,
                      id == "ellipsoid-classify" ? "auto | all | ab | none (auto: all for spheres, ab when a < b < c)"
                                                 : "auto | sections | great-circles | none")
          ->capture_default_str();
    }
    if (id == "ellipsoid-search") {
      sub->add_option("--lmax", opt.lmax, "length cutoff (default 8)");
      sub->add_option("--trials", opt.trials, "random starts")->capture_default_str();
    }
    if (id == "tube-gh" || id == "tube-systole" || id == "ellipsoid-search") {
      sub->add_option("--seed", opt.seed, "random seed")->capture_default_str();
    }
    if (id == "tube-systole") sub->add_option("--runs", opt.runs, "shortening runs per eps")->capture_default_str();
    if (id == "tube-verify") {
      sub->add_option("--meridian", opt.meridian, "meridian index in [0, n/2)")->capture_default_str();
    }
    if (id == "tube-verify" || id == "tube-gh" || id == "tube-systole" || id == "ellipsoid-classify") {
      sub->add_option("--samples", opt.samples,
                      id == "tube-verify"    ? "verification samples (default 720)"
                      : id == "tube-gh"      ? "sampled point pairs (default 150)"
                      : id == "tube-systole" ? "verification samples per survivor (default 180)"
                                             : "verification samples per section (default 64)");
    }
    if (polygon || tube) {
      sub->add_option("--tol", opt.tol, "override the k=2 pass tolerance (default: from the oracle error)");
    }
    sub->add_option("--out", out_dir, "directory for report and figures (default: JSON report on stdout)");
    sub->add_option("--format", format, "comma-separated subset of json,csv,svg")->capture_default_str();
  }

  if (argc > 1 && argv[1][0] != '-') {
    const auto& ids = geolab::cli::experiment_ids();
    if (std::find(ids.begin(), ids.end(), argv[1]) == ids.end()) {
      std::cerr << "unknown experiment '" << argv[1] << "'; expected one of:";
      for (const auto& id : ids) std::cerr << ' ' << id;
      std::cerr << "\n";
      return 2;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string id = app.get_subcommands().front()->get_name();
  try {
    const auto formats = parse_formats(format);
    auto outcome = geolab::cli::run_experiment(id, opt, formats);
    const std::string json = outcome.report.dump(2) + "\n";
    if (out_dir.empty()) {
      if (!outcome.artifacts.empty()) throw geolab::ValidationError("csv and svg output need --out");
      std::cout << json;
    } else {
      std::filesystem::create_directories(out_dir);
      if (formats.count("json")) geolab::io::write_file_atomic(out_dir + "/" + id + ".json", json);
      for (const auto& a : outcome.artifacts) geolab::io::write_file_atomic(out_dir + "/" + a.filename, a.content);
    }
    std::cerr << id << ": " << (outcome.holds ? "expected verdicts hold" : "VERDICT MISMATCH") << " -- "
              << outcome.summary << "\n";
    return outcome.holds ? 0 : 1;
  } catch (const geolab::ValidationError& e) {
    std::cerr << id << ": invalid parameters: " << e.what() << "\n";
  } catch (const geolab::BudgetExhausted& e) {
    std::cerr << id << ": budget exhausted: " << e.what() << "\n";
  } catch (const geolab::NumericalFailure& e) {
    std::cerr << id << ": numerical failure: " << e.what() << "\n";
  } catch (const geolab::IoError& e) {
    std::cerr << id << ": output error: " << e.what() << "\n";
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << id << ": output error: " << e.what() << "\n";
  }
  return 2;
}
