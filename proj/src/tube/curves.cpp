#include "geolab/tube/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geolab/errors.hpp"
#include "geolab/parallel.hpp"
#include "geolab/polygon/closed_geodesics.hpp"

namespace geolab::tube {

using polygon::Face;

namespace {
constexpr double kPi = std::numbers::pi;
}

CheegerInputs geometry_summary(const TubeSurface& tube, int diameter_grid) {
  CheegerInputs out;
  out.base_diameter = polygon::approximate_diameter(tube.base(), diameter_grid);
  out.diam_upper = out.base_diameter.value + out.base_diameter.error_bound + kPi * tube.eps();
  out.area = tube.area();
  out.vol_lower = out.area;
  out.curvature_lower = 0.0;
  return out;
}

TubeCurve meridian_on_tube(const TubeSurface& tube, int j) {
  const int n = tube.n();
  if (n % 2 != 0) throw ValidationError("tube meridians need an even number of polygon sides");
  if (j < 0 || j >= n / 2) throw ValidationError("meridian index must lie in [0, n/2)");
  const int k = j + n / 2;
  const double a = tube.base().apothem();
  const double arc = 0.5 * kPi * tube.eps();
  struct Piece {
    TubePoint p;
    double len_before;
  };
  const std::vector<Piece> pieces{
      {TubePoint::face(Face::kTop, {0.0, 0.0}), 0.0},
      {TubePoint::cylinder(j, 0.5, 0.0), a},
      {TubePoint::cylinder(j, 0.5, kPi / 2), arc},
      {TubePoint::cylinder(j, 0.5, kPi), arc},
      {TubePoint::face(Face::kBottom, {0.0, 0.0}), a},
      {TubePoint::cylinder(k, 0.5, kPi), a},
      {TubePoint::cylinder(k, 0.5, kPi / 2), arc},
      {TubePoint::cylinder(k, 0.5, 0.0), arc},
  };
  const double total = 4.0 * a + 4.0 * arc;
  TubeCurve c{{}, total, tube.id()};
  double s = 0.0;
  for (const auto& piece : pieces) {
    s += piece.len_before;
    c.breakpoints.push_back({metric::kTwoPi * s / total, piece.p});
  }
  return c;
}

double meridian_convergence(const TubeSurface& tube, int j, int samples) {
  const auto& g = tube.base();
  TubeCurve y = meridian_on_tube(tube, j);
  polygon::PolygonSpace xspace(g);
  auto x = polygon::closed_geodesic_from_sequence(g, {j, g.opposite_edge(j)}, Face::kTop).curve;
  // The X_n curve starts at edge j; its top-face center sits at t = 3pi/2.
  x = metric::rotated(xspace, x, 1.5 * kPi);
  TubeSpace yspace(tube);
  std::vector<double> dev(samples);
  parallel_for(static_cast<std::size_t>(samples), [&](std::size_t i) {
    double t = metric::kTwoPi * static_cast<double>(i) / samples;
    auto py = tube.project(metric::point_at(yspace, y, t));
    auto px = metric::point_at(xspace, x, t);
    dev[i] = polygon::exact_distance(g, py, px).length;
  });
  return *std::max_element(dev.begin(), dev.end());
}

TubePoint sample_uniform(const TubeSurface& tube, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double wf = tube.face_area(), wc = tube.cylinder_area(), ws = tube.lune_area();
  double r = uni(rng) * tube.area();
  if (r < 2.0 * wf) {
    const double rad = tube.base().circumradius();
    Face face = r < wf ? Face::kTop : Face::kBottom;
    for (;;) {
      Vec2 p{(2.0 * uni(rng) - 1.0) * rad, (2.0 * uni(rng) - 1.0) * rad};
      if (tube.base().signed_boundary_distance(p) < 0.0) return TubePoint::face(face, p);
    }
  }
  r -= 2.0 * wf;
  int i = std::min(tube.n() - 1, static_cast<int>(r / (wc + ws)));
  r -= i * (wc + ws);
  if (r < wc) return TubePoint::cylinder(i, uni(rng), kPi * uni(rng));
  return TubePoint::sphere(i, tube.lune_angle() * uni(rng), std::acos(1.0 - 2.0 * uni(rng)));
}

DistortionReport gh_distortion(const TubeSurface& tube, const TubeDistanceGraph& graph,
                               int sample_count, std::uint64_t seed) {
  if (sample_count < 1) throw ValidationError("gh_distortion needs at least one sample");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<TubePoint, TubePoint>> pairs;
  for (int i = 0; i < sample_count; ++i) {
    TubePoint p = sample_uniform(tube, rng);
    TubePoint q = sample_uniform(tube, rng);
    pairs.push_back({p, q});
  }
  std::vector<double> diff(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    double dy = graph.distance(pairs[i].first, pairs[i].second);
    double dx = polygon::exact_distance(tube.base(), tube.project(pairs[i].first),
                                        tube.project(pairs[i].second))
                    .length;
    diff[i] = std::abs(dy - dx);
  });
  DistortionReport out;
  out.samples = sample_count;
  out.allowance = graph.error_bound();
  auto worst = std::max_element(diff.begin(), diff.end());
  out.max_raw = *worst;
  out.max_distortion = out.max_raw - out.allowance;
  out.worst_p = pairs[worst - diff.begin()].first;
  out.worst_q = pairs[worst - diff.begin()].second;
  return out;
}

std::vector<TubePoint> plane_section_loop(const TubeSurface& tube, std::mt19937_64& rng, int count) {
  if (count < 4) throw ValidationError("a section loop needs at least four points");
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  Vec3 w;
  do {
    w = {gauss(rng), gauss(rng), gauss(rng)};
  } while (w.norm() < 1e-6);
  w = unit(w);
  Vec3 helper = std::abs(w.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  Vec3 e1 = unit(cross(w, helper));
  Vec3 e2 = cross(w, e1);
  const auto& g = tube.base();
  Vec2 c2;
  do {
    c2 = {(2.0 * uni(rng) - 1.0) * g.circumradius(), (2.0 * uni(rng) - 1.0) * g.circumradius()};
  } while (g.signed_boundary_distance(c2 * 2.0) >= 0.0);
  const Vec3 center{c2.x, c2.y, 0.0};
  const double phase = metric::kTwoPi * uni(rng);
  const double far = center.norm() + g.circumradius() + 2.0 * tube.eps();
  std::vector<TubePoint> loop;
  for (int k = 0; k < count; ++k) {
    double theta = phase + metric::kTwoPi * k / count;
    Vec3 dir = e1 * std::cos(theta) + e2 * std::sin(theta);
    double lo = 0.0, hi = far;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      double mid = 0.5 * (lo + hi);
      (tube.distance_to_core(center + dir * mid) < tube.eps() ? lo : hi) = mid;
    }
    loop.push_back(tube.from_ambient(center + dir * (0.5 * (lo + hi))));
  }
  return loop;
}

std::vector<TubePoint> lune_loop(const TubeSurface& tube, int vertex, double radius, int count) {
  if (!(radius > 0.0 && radius < tube.lune_angle() / 2)) {
    throw ValidationError("lune loop radius must lie in (0, pi/n)");
  }
  TubePoint mid = TubePoint::sphere(vertex, tube.lune_angle() / 2, kPi / 2);
  Vec3 c = tube.normal(mid);
  Vec3 e1{0.0, 0.0, 1.0};
  Vec3 e2 = cross(c, e1);
  Vec2 v = tube.base().vertex(vertex);
  std::vector<TubePoint> loop;
  for (int k = 0; k < count; ++k) {
    double theta = metric::kTwoPi * k / count;
    Vec3 d = c * std::cos(radius) + (e1 * std::cos(theta) + e2 * std::sin(theta)) * std::sin(radius);
    loop.push_back(tube.from_ambient(Vec3{v.x, v.y, 0.0} + d * tube.eps()));
  }
  return loop;
}

BirkhoffResult birkhoff_shorten(const TubeDistanceGraph& graph, std::vector<TubePoint> loop,
                                const BirkhoffConfig& cfg) {
  if (cfg.levels.empty() || cfg.levels.front() < 4 || cfg.levels.front() % 2 != 0) {
    throw ValidationError("Birkhoff levels must start with an even count of at least 4");
  }
  for (std::size_t k = 1; k < cfg.levels.size(); ++k) {
    if (cfg.levels[k] != 2 * cfg.levels[k - 1]) throw ValidationError("Birkhoff levels must double");
  }
  if (static_cast<int>(loop.size()) != cfg.levels.front()) {
    throw ValidationError("initial loop size must equal the first Birkhoff level");
  }
  const double shrink = cfg.contraction_length > 0.0 ? cfg.contraction_length : 4.0 * graph.h();
  BirkhoffResult out;

  auto half_step = [&](int parity) {
    const std::size_t m = loop.size();
    std::vector<TubePoint> next = loop;
    std::vector<double> lens(m, 0.0);
    parallel_for(m / 2, [&](std::size_t k) {
      std::size_t i = 2 * k + parity;
      next[i] = graph.midpoint(loop[(i + m - 1) % m], loop[(i + 1) % m], &lens[i]);
    });
    loop = std::move(next);
    double total = 0.0;
    for (double l : lens) total += l;
    return total;
  };

  double length = std::numeric_limits<double>::infinity();
  for (std::size_t level = 0; level < cfg.levels.size(); ++level) {
    if (level > 0) {
      std::vector<TubePoint> finer;
      for (std::size_t i = 0; i < loop.size(); ++i) {
        finer.push_back(loop[i]);
        finer.push_back(graph.midpoint(loop[i], loop[(i + 1) % loop.size()]));
      }
      loop = std::move(finer);
    }
    // Midpoints carry small refinement noise, so a single sweep may lengthen
    // the loop; converge only after `patience` sweeps without real progress.
    double best = std::numeric_limits<double>::infinity();
    int stalled = 0;
    int sweeps = 0;
    for (;;) {
      half_step(1);
      length = half_step(0);
      ++sweeps;
      ++out.iterations;
      if (length < shrink) {
        out.contracted = true;
        out.length = length;
        out.loop = std::move(loop);
        return out;
      }
      if (best - length < cfg.tol * length) {
        if (++stalled >= cfg.patience) break;
      } else {
        stalled = 0;
      }
      best = std::min(best, length);
      if (sweeps >= cfg.max_iterations) {
        out.converged = false;
        break;
      }
    }
  }
  out.length = length;
  out.loop = std::move(loop);
  return out;
}

TubeCurve loop_to_curve(const TubeDistanceGraph& graph, const std::vector<TubePoint>& loop) {
  const auto& tube = graph.tube();
  std::vector<TubePoint> pts;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    TubePath path = graph.path(loop[i], loop[(i + 1) % loop.size()]);
    for (std::size_t k = 0; k + 1 < path.points.size(); ++k) pts.push_back(path.points[k]);
  }
  TubeSpace space(tube);
  std::vector<TubePoint> kept;
  std::vector<double> lens;
  for (const auto& p : pts) {
    if (!kept.empty() && space.segment_length(kept.back(), p) < 1e-14) continue;
    kept.push_back(p);
  }
  while (kept.size() > 1 && space.segment_length(kept.back(), kept.front()) < 1e-14) kept.pop_back();
  if (kept.size() < 2) throw ValidationError("loop is degenerate");
  double total = 0.0;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    lens.push_back(space.segment_length(kept[i], kept[(i + 1) % kept.size()]));
    total += lens.back();
  }
  TubeCurve c{{}, total, tube.id()};
  double s = 0.0;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    c.breakpoints.push_back({metric::kTwoPi * s / total, kept[i]});
    s += lens[i];
  }
  return c;
}

SystoleReport systole_probe(const TubeSurface& tube, const TubeDistanceGraph& graph, int runs,
                            std::uint64_t seed, const BirkhoffConfig& cfg) {
  SystoleReport out;
  out.runs.resize(runs);
  for (int r = 0; r < runs; ++r) out.runs[r].seed = seed * 1000003ULL + static_cast<std::uint64_t>(r);
  for (auto& run : out.runs) {
    std::mt19937_64 rng(run.seed);
    run.result = birkhoff_shorten(graph, plane_section_loop(tube, rng, cfg.levels.front()), cfg);
  }
  out.min_surviving_length = std::numeric_limits<double>::infinity();
  for (const auto& run : out.runs) {
    if (run.result.contracted) {
      ++out.contracted;
      continue;
    }
    if (!run.result.converged) ++out.unconverged;
    out.min_surviving_length = std::min(out.min_surviving_length, run.result.length);
  }
  return out;
}

}  // namespace geolab::tube
