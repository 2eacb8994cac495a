#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "geolab/metric/curve.hpp"
#include "geolab/polygon/distance.hpp"
#include "geolab/tube/distance.hpp"
#include "geolab/tube/surface.hpp"

namespace geolab::tube {

using TubeCurve = metric::ClosedCurve<TubePoint>;

struct CheegerInputs {
  double diam_upper = 0.0;
  double vol_lower = 0.0;
  double curvature_lower = 0.0;
  double area = 0.0;
  polygon::DiameterEstimate base_diameter;
};

// diam_upper = base diameter estimate + its error bound + pi eps: a path on Y
// can follow the projection of an X_n path after climbing over at most half a
// cylinder at each end.
CheegerInputs geometry_summary(const TubeSurface& tube, int diameter_grid = 8);

// Face chords through both centers joined by half-circle arcs over edges j and
// j + n/2; t = 0 at the top face center. Throws for odd n or j out of range.
TubeCurve meridian_on_tube(const TubeSurface& tube, int j);

// max over sampled t of d_X(project(tube meridian(t)), X_n meridian(t)).
double meridian_convergence(const TubeSurface& tube, int j, int samples = 720);

// Area-uniform random point.
TubePoint sample_uniform(const TubeSurface& tube, std::mt19937_64& rng);

struct DistortionReport {
  int samples = 0;
  double max_raw = 0.0;     // max |d_Y - d_X(projection)|
  double allowance = 0.0;   // oracle error bound subtracted from max_raw
  double max_distortion = 0.0;
  TubePoint worst_p, worst_q;
};

DistortionReport gh_distortion(const TubeSurface& tube, const TubeDistanceGraph& graph,
                               int sample_count, std::uint64_t seed);

// Section of Y by a random plane through a random point of the core, sampled
// at `count` equally spaced ray angles.
std::vector<TubePoint> plane_section_loop(const TubeSurface& tube, std::mt19937_64& rng, int count);
// Small circle of angular radius `radius` around the middle of lune `vertex`.
std::vector<TubePoint> lune_loop(const TubeSurface& tube, int vertex, double radius, int count);

struct BirkhoffConfig {
  std::vector<int> levels{16, 32, 64};
  int max_iterations = 400;  // sweeps per level
  double tol = 1e-6;         // relative shortening that counts as progress
  int patience = 10;         // sweeps without progress before a level ends
  double contraction_length = 0.0;  // 0 picks 4 h
};

struct BirkhoffResult {
  std::vector<TubePoint> loop;
  double length = 0.0;
  bool contracted = false;
  bool converged = true;  // false when some level hit max_iterations
  int iterations = 0;
};

// Alternating odd/even midpoint replacement; see BirkhoffConfig.
BirkhoffResult birkhoff_shorten(const TubeDistanceGraph& graph, std::vector<TubePoint> loop,
                                const BirkhoffConfig& cfg = {});

// Closed curve through the loop, with every graph path's interface nodes
// inserted so consecutive breakpoints share a region.
TubeCurve loop_to_curve(const TubeDistanceGraph& graph, const std::vector<TubePoint>& loop);

struct SystoleRun {
  std::uint64_t seed = 0;
  BirkhoffResult result;
};

struct SystoleReport {
  std::vector<SystoleRun> runs;
  double min_surviving_length = 0.0;  // infinity when every run contracted
  int contracted = 0;
  int unconverged = 0;
};

SystoleReport systole_probe(const TubeSurface& tube, const TubeDistanceGraph& graph, int runs,
                            std::uint64_t seed, const BirkhoffConfig& cfg = {});

}  // namespace geolab::tube
