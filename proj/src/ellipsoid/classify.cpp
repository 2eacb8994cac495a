#include "geolab/ellipsoid/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "geolab/errors.hpp"
#include "geolab/parallel.hpp"

namespace geolab::ellipsoid {

namespace {

constexpr double kPi = std::numbers::pi;

Vec3 axis_vector(int m) {
  Vec3 e;
  if (m == 0) e.x = 1.0;
  else if (m == 1) e.y = 1.0;
  else e.z = 1.0;
  return e;
}

int off_axis(SectionPlane p) {
  switch (p) {
    case SectionPlane::kAB: return 2;
    case SectionPlane::kAC: return 1;
    case SectionPlane::kBC: return 0;
  }
  return 2;
}

// Crossing of a transversal plane, upward along its off-plane axis.
struct Crossing {
  double phi = 0.0, psi = 0.0;
  double s = 0.0;
};

class ReturnMap {
 public:
  ReturnMap(const Ellipsoid& ell, SectionPlane plane, double reach, const IntegrationConfig& icfg)
      : ell_(ell), e_(ell, plane), m_(off_axis(plane)), em_(axis_vector(m_)), reach_(reach), icfg_(icfg) {}

  GeodesicState start(double phi, double psi) const {
    return {e_.point(phi), e_.tangent(phi) * std::cos(psi) + em_ * std::sin(psi)};
  }

  // Next upward crossing within reach, if any.
  std::optional<Crossing> operator()(double phi, double psi) const {
    GeodesicPath path = integrate_geodesic(ell_, start(phi, psi), reach_, icfg_);
    for (std::size_t i = 1; i < path.states.size(); ++i) {
      if (!(path.states[i - 1].x[m_] < 0.0 && path.states[i].x[m_] >= 0.0)) continue;
      const GeodesicState& base = path.states[i - 1];
      double ds = 0.0;
      GeodesicState st = base;
      for (int it = 0; it < 30; ++it) {
        double step = -st.x[m_] / st.v[m_];
        ds += step;
        st = advance(ell_, base, ds, icfg_);
        if (std::abs(step) < 1e-15) break;
      }
      Crossing c;
      c.s = path.s[i - 1] + ds;
      if (c.s > reach_) return std::nullopt;
      Vec3 x = st.x;
      set_zero(x);
      c.phi = e_.angle(x);
      c.psi = std::atan2(dot(st.v, em_), dot(st.v, e_.tangent(c.phi)));
      return c;
    }
    return std::nullopt;
  }

  const SectionEllipse& ellipse() const { return e_; }

 private:
  void set_zero(Vec3& x) const {
    if (m_ == 0) x.x = 0.0;
    else if (m_ == 1) x.y = 0.0;
    else x.z = 0.0;
  }

  Ellipsoid ell_;
  SectionEllipse e_;
  int m_;
  Vec3 em_;
  double reach_;
  IntegrationConfig icfg_;
};

double point_segment(const Vec3& p, const Vec3& a, const Vec3& b) {
  Vec3 ab = b - a;
  double t = std::clamp(dot(p - a, ab) / std::max(ab.norm2(), 1e-300), 0.0, 1.0);
  return (p - (a + ab * t)).norm();
}

// Largest distance from a trace point of `a` to the closed polyline `b`.
double trace_distance(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  double worst = 0.0;
  for (const Vec3& p : a) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      best = std::min(best, point_segment(p, b[j], b[(j + 1) % b.size()]));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

SectionClassification classify_section_half_geodesics(const Ellipsoid& ell, const ClassifyConfig& cfg) {
  if (cfg.sample_count < 1) throw ValidationError("sample_count must be at least 1");
  SectionClassification out;
  out.axes = {ell.a(), ell.b(), ell.c()};
  auto oracle = shooting_oracle(ell, cfg.shooting);
  out.oracle_error = oracle.error_bound;
  out.tolerance = metric::ToleranceConfig::for_oracle_error(oracle.error_bound, cfg.sample_count);
  for (auto& sec : coordinate_sections(ell, cfg.integration)) {
    SectionSpace space(ell, sec.plane);
    auto report = metric::verify_one_over_k(space, sec.curve, oracle, 2, out.tolerance);
    out.sections.push_back({std::move(sec), std::move(report)});
  }
  return out;
}

void SearchConfig::validate() const {
  if (max_newton < 1) throw ValidationError("max_newton must be at least 1");
  if (!(closure_tol > 0.0)) throw ValidationError("closure_tol must be positive");
  if (!(fd_step > 0.0)) throw ValidationError("fd_step must be positive");
  if (!(max_move > 0.0)) throw ValidationError("max_move must be positive");
  if (!(dedup_tol > 0.0)) throw ValidationError("dedup_tol must be positive");
  if (trace_points < 8) throw ValidationError("trace_points must be at least 8");
}

SearchResult search_short_closed_geodesics(const Ellipsoid& ell, double L_max, int trials,
                                           const SearchConfig& cfg) {
  if (trials < 1) throw ValidationError("trials must be at least 1");
  if (!(L_max > 0.0)) throw ValidationError("L_max must be positive");
  cfg.validate();

  const ReturnMap maps[2] = {ReturnMap(ell, SectionPlane::kAB, L_max, cfg.integration),
                             ReturnMap(ell, SectionPlane::kBC, L_max, cfg.integration)};
  const SectionEllipse sections[3] = {SectionEllipse(ell, SectionPlane::kAB),
                                      SectionEllipse(ell, SectionPlane::kAC),
                                      SectionEllipse(ell, SectionPlane::kBC)};

  std::vector<std::optional<ClosedGeodesic>> results(trials);
  parallel_for(trials, [&](std::size_t trial) {
    std::mt19937_64 rng(cfg.seed * 0x9E3779B97F4A7C15ull + trial);
    std::uniform_real_distribution<double> uphi(0.0, 2.0 * kPi), upsi(0.05, kPi - 0.05);
    const ReturnMap& map = maps[trial % 2];
    double phi = uphi(rng), psi = upsi(rng);

    auto residual = [&](double f, double p) -> std::optional<std::array<double, 2>> {
      auto c = map(f, p);
      if (!c) return std::nullopt;
      return std::array<double, 2>{std::remainder(c->phi - f, 2.0 * kPi), c->psi - p};
    };
    bool ok = false;
    double res = 0.0;
    for (int it = 0; it < cfg.max_newton; ++it) {
      auto F = residual(phi, psi);
      if (!F) return;
      res = std::max(std::abs((*F)[0]), std::abs((*F)[1]));
      if (res < cfg.closure_tol) {
        ok = true;
        break;
      }
      // Central differences for the Jacobian of F.
      double J[2][2];
      const double h = cfg.fd_step;
      for (int col = 0; col < 2; ++col) {
        auto Fp = residual(phi + (col == 0 ? h : 0.0), psi + (col == 1 ? h : 0.0));
        auto Fm = residual(phi - (col == 0 ? h : 0.0), psi - (col == 1 ? h : 0.0));
        if (!Fp || !Fm) return;
        for (int row = 0; row < 2; ++row) {
          double diff = std::remainder((*Fp)[row] - (*Fm)[row], 2.0 * kPi);
          J[row][col] = diff / (2.0 * h);
        }
      }
      double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
      if (!(std::abs(det) > 1e-300)) return;
      double dphi = -(J[1][1] * (*F)[0] - J[0][1] * (*F)[1]) / det;
      double dpsi = -(-J[1][0] * (*F)[0] + J[0][0] * (*F)[1]) / det;
      double move = std::hypot(dphi, dpsi);
      if (move > cfg.max_move) dphi *= cfg.max_move / move, dpsi *= cfg.max_move / move;
      phi = std::remainder(phi + dphi, 2.0 * kPi);
      psi += dpsi;
      // Grazing directions leave the transversal parametrization.
      if (std::sin(psi) < 0.01) return;
    }
    if (!ok) return;

    auto c = map(phi, psi);
    ClosedGeodesic g;
    g.length = c->s;
    g.transversal = map.ellipse().plane();
    g.phi = phi < 0.0 ? phi + 2.0 * kPi : phi;
    g.psi = psi;
    g.residual = res;
    GeodesicState st = map.start(phi, psi);
    const double ds = g.length / cfg.trace_points;
    for (int i = 0; i < cfg.trace_points; ++i) {
      g.trace.push_back(st.x);
      st = advance(ell, st, ds, cfg.integration);
    }
    g.label = "other";
    for (const auto& sec : sections) {
      double off = 0.0;
      for (const Vec3& x : g.trace) off = std::max(off, sec.distance_from(x));
      if (off < 1e-6) {
        g.label = plane_name(sec.plane());
        break;
      }
    }
    results[trial] = std::move(g);
  });

  SearchResult out;
  out.trials = trials;
  for (auto& r : results) {
    if (!r) continue;
    ++out.converged;
    bool dup = false;
    for (const auto& f : out.found) {
      if (std::abs(f.length - r->length) < 1e-6 * std::max(1.0, f.length) &&
          trace_distance(r->trace, f.trace) < cfg.dedup_tol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.found.push_back(std::move(*r));
  }
  std::sort(out.found.begin(), out.found.end(),
            [](const ClosedGeodesic& a, const ClosedGeodesic& b) { return a.length < b.length; });
  return out;
}

}  // namespace geolab::ellipsoid
