#include "geolab/polygon/closed_geodesics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>

#include "geolab/errors.hpp"
#include "geolab/parallel.hpp"

namespace geolab::polygon {

namespace {

bool is_translation(const Isometry2& g) {
  constexpr double tol = 1e-9;
  return std::abs(g.m00 - 1.0) < tol && std::abs(g.m11 - 1.0) < tol && std::abs(g.m01) < tol &&
         std::abs(g.m10) < tol;
}

Face copy_face(Face start, int j) { return j % 2 == 0 ? start : opposite(start); }

int pair_code(int edge, Face from) { return 2 * edge + (from == Face::kTop ? 0 : 1); }

// Edge e of copy g, ordered so that the copy lies to its left.
std::pair<Vec2, Vec2> oriented_edge(const DoubledNgon& ngon, const Isometry2& g, int e) {
  Vec2 a = g.apply(ngon.vertex(e));
  Vec2 b = g.apply(ngon.vertex(e + 1));
  if (g.det() < 0.0) std::swap(a, b);
  return {a, b};
}

std::vector<int> minimal_rotation(const std::vector<int>& v) {
  std::vector<int> best = v;
  std::vector<int> r = v;
  for (std::size_t i = 1; i < v.size(); ++i) {
    std::rotate(r.begin(), r.begin() + 1, r.end());
    if (r < best) best = r;
  }
  return best;
}

// Raw (edge, from_face) codes of a sequence.
std::vector<int> raw_code(const std::vector<int>& edges, Face start_face) {
  std::vector<int> code;
  for (std::size_t j = 0; j < edges.size(); ++j) {
    code.push_back(pair_code(edges[j], copy_face(start_face, static_cast<int>(j))));
  }
  return code;
}

std::vector<int> canonical_from_raw(const std::vector<int>& raw) {
  // Reversal visits the crossings backwards, leaving from the other face.
  std::vector<int> rev(raw.rbegin(), raw.rend());
  for (int& c : rev) c ^= 1;
  return std::min(minimal_rotation(raw), minimal_rotation(rev));
}

bool is_primitive(const std::vector<int>& raw) {
  const std::size_t m = raw.size();
  for (std::size_t d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = 0; i < m && periodic; ++i) periodic = raw[i] == raw[(i + d) % m];
    if (periodic) return false;
  }
  return true;
}

// Smallest canonical code over the orbit of the dihedral group and face swap.
std::vector<int> orbit_minimum(int n, const std::vector<int>& canonical) {
  std::vector<int> best = canonical;
  for (int flip = 0; flip < 2; ++flip) {
    for (int mirror = 0; mirror < 2; ++mirror) {
      for (int k = 0; k < n; ++k) {
        std::vector<int> img;
        for (int c : canonical) {
          int e = c / 2;
          int f = (c & 1) ^ flip;
          int e2 = mirror ? -e + k : e + k;
          e2 = ((e2 % n) + n) % n;
          img.push_back(2 * e2 + f);
        }
        best = std::min(best, canonical_from_raw(img));
      }
    }
  }
  return best;
}

using Poly = std::vector<Vec2>;  // (s, c) vertices of a convex region

// Keeps {a s + b c + k <= slack}.
Poly clip(const Poly& poly, double a, double b, double k) {
  const double slack = 1e-12 * (std::abs(a) + std::abs(b) + std::abs(k) + 1.0);
  Poly out;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    Vec2 p = poly[i], q = poly[(i + 1) % m];
    double fp = a * p.x + b * p.y + k - slack;
    double fq = a * q.x + b * q.y + k - slack;
    if (fp <= 0.0) out.push_back(p);
    if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
      double t = fp / (fp - fq);
      out.push_back(p + (q - p) * t);
    }
  }
  return out;
}

// Crossing constraints n.A <= c <= n.B with n = tau - s nu.
Poly clip_edge(const Poly& poly, Vec2 nu, Vec2 tau, Vec2 a, Vec2 b) {
  Poly r = clip(poly, -dot(nu, a), -1.0, dot(tau, a));
  if (r.empty()) return r;
  return clip(r, dot(nu, b), 1.0, -dot(tau, b));
}

struct Corridor {
  std::vector<Isometry2> g;  // g_0 .. g_m
  Vec2 translation;
  Vec2 nu, tau;
  double s = 0.0;
  double c_lo = 0.0, c_hi = 0.0;
};

// Throws ValidationError unless the sequence closes up with a family of positive width.
Corridor build_corridor(const DoubledNgon& ngon, const std::vector<int>& edges, double min_width) {
  const int m = static_cast<int>(edges.size());
  if (m < 2 || m % 2 != 0) throw ValidationError("closed geodesic needs an even number of crossings");
  for (int j = 0; j < m; ++j) {
    if (edges[j] < 0 || edges[j] >= ngon.n()) throw ValidationError("edge index out of range");
    if (edges[j] == edges[(j + 1) % m]) throw ValidationError("consecutive crossings repeat an edge");
  }
  Corridor c;
  c.g.push_back(Isometry2{});
  for (int e : edges) c.g.push_back(c.g.back().compose(ngon.edge_reflection(e)));
  if (!is_translation(c.g.back())) throw ValidationError("edge sequence does not unfold to a translation");
  c.translation = c.g.back().t;
  c.nu = ngon.outward_normal(edges[0]);
  c.tau = rot90(c.nu);
  double along = dot(c.translation, c.nu);
  if (!(along > 0.0)) throw ValidationError("translation does not leave through the first edge");
  c.s = dot(c.translation, c.tau) / along;
  Vec2 normal = c.tau - c.nu * c.s;
  c.c_lo = -INFINITY;
  c.c_hi = INFINITY;
  for (int j = 0; j < m; ++j) {
    auto [a, b] = oriented_edge(ngon, c.g[j], edges[j]);
    c.c_lo = std::max(c.c_lo, dot(normal, a));
    c.c_hi = std::min(c.c_hi, dot(normal, b));
  }
  if (!((c.c_hi - c.c_lo) / normal.norm() > min_width)) {
    throw ValidationError("edge sequence has no straight closed corridor");
  }
  return c;
}

}  // namespace

const char* tag_name(GeodesicTag tag) {
  return tag == GeodesicTag::kMeridian ? "MERIDIAN" : "OTHER";
}

std::vector<int> canonical_code(const std::vector<int>& edges, Face start_face) {
  return canonical_from_raw(raw_code(edges, start_face));
}

ClosedGeodesic closed_geodesic_from_sequence(const DoubledNgon& ngon, const std::vector<int>& edges,
                                             Face start_face, double fraction) {
  if (!(std::abs(fraction) < 1.0)) throw ValidationError("family offset must lie in (-1, 1)");
  Corridor cor = build_corridor(ngon, edges, 0.0);
  const int m = static_cast<int>(edges.size());
  const Vec2 normal = cor.tau - cor.nu * cor.s;
  const double c = 0.5 * (cor.c_lo + cor.c_hi) + 0.5 * fraction * (cor.c_hi - cor.c_lo);
  const double period = cor.translation.norm();
  const Vec2 dir = cor.translation * (1.0 / period);

  std::vector<Vec2> x(m + 1);
  ClosedGeodesic out;
  for (int j = 0; j < m; ++j) {
    auto [a, b] = oriented_edge(ngon, cor.g[j], edges[j]);
    double mu = (c - dot(normal, a)) / dot(normal, b - a);
    x[j] = a + (b - a) * mu;
  }
  x[m] = x[0] + cor.translation;
  const double lambda0 = dot(dir, x[0]);

  auto& bps = out.curve.breakpoints;
  for (int j = 0; j < m; ++j) {
    Vec2 local = cor.g[j].inverse().apply(x[j]);
    Vec2 v0 = ngon.vertex(edges[j]), v1 = ngon.vertex(edges[j] + 1);
    double u = dot(local - v0, v1 - v0) / (ngon.side() * ngon.side());
    if (!(u > 0.0 && u < 1.0)) throw NumericalFailure("corridor crossing fell on a vertex");
    bps.push_back({metric::kTwoPi * (dot(dir, x[j]) - lambda0) / period, EdgePoint{edges[j], u}});
    Vec2 mid = (x[j] + x[j + 1]) * 0.5;
    Vec2 mid_local = cor.g[j + 1].inverse().apply(mid);
    bps.push_back({metric::kTwoPi * (dot(dir, mid) - lambda0) / period,
                   InteriorPoint{copy_face(start_face, j + 1), mid_local}});
  }
  bps.front().t = 0.0;
  out.curve.total_length = period;
  out.curve.surface_id = ngon.id();
  out.edges = edges;
  out.start_face = start_face;
  out.period = m;
  out.family_width = (cor.c_hi - cor.c_lo) / normal.norm();
  out.direction = dir;
  out.code = canonical_code(edges, start_face);
  bool parallel_pair = m == 2 && ngon.has_parallel_edges() && edges[1] == ngon.opposite_edge(edges[0]);
  out.tag = parallel_pair ? GeodesicTag::kMeridian : GeodesicTag::kOther;
  return out;
}

std::vector<ClosedGeodesic> meridians(const DoubledNgon& ngon) {
  std::vector<ClosedGeodesic> out;
  if (!ngon.has_parallel_edges()) return out;
  for (int e = 0; e < ngon.n() / 2; ++e) {
    out.push_back(closed_geodesic_from_sequence(ngon, {e, ngon.opposite_edge(e)}, Face::kTop));
    out.back().representative = e == 0;
  }
  return out;
}

namespace {

class Enumerator {
 public:
  Enumerator(const DoubledNgon& ngon, double l_max, const EnumerationConfig& cfg)
      : ngon_(ngon), l_max_(l_max), cfg_(cfg) {}

  void search_from(int e1) {
    nu_ = ngon_.outward_normal(e1);
    tau_ = rot90(nu_);
    const double big = (1.0 + cfg_.slope_limit) * 2.0 * ngon_.circumradius();
    Poly box{{-cfg_.slope_limit, -big}, {cfg_.slope_limit, -big}, {cfg_.slope_limit, big},
             {-cfg_.slope_limit, big}};
    auto [a, b] = oriented_edge(ngon_, Isometry2{}, e1);
    first_a_ = a;
    first_b_ = b;
    Poly region = clip_edge(box, nu_, tau_, a, b);
    edges_.assign(1, e1);
    dfs(Isometry2{}.compose(ngon_.edge_reflection(e1)), region);
  }

  std::vector<std::vector<int>> found;  // canonical codes
  std::size_t nodes = 0;
  int deepest = 0;

  std::atomic<std::size_t>* node_counter = nullptr;

 private:
  void dfs(const Isometry2& g, const Poly& region) {
    const int depth = static_cast<int>(edges_.size());
    deepest = std::max(deepest, depth);
    if (node_counter->fetch_add(1) + 1 > cfg_.max_nodes) {
      throw BudgetExhausted("closed geodesic search exceeded its node budget of " +
                            std::to_string(cfg_.max_nodes));
    }
    ++nodes;
    if (depth % 2 == 0 && edges_.back() != edges_.front() && is_translation(g)) {
      record();
    }
    const int entered = edges_.back();
    for (int e = 0; e < ngon_.n(); ++e) {
      if (e == entered) continue;
      auto [a, b] = oriented_edge(ngon_, g, e);
      if (segment_segment_distance(first_a_, first_b_, a, b) > l_max_) continue;
      Poly child = clip_edge(region, nu_, tau_, a, b);
      if (child.empty()) continue;
      if (depth + 1 > cfg_.max_depth) {
        throw BudgetExhausted("closed geodesic search needs crossing sequences longer than " +
                              std::to_string(cfg_.max_depth));
      }
      edges_.push_back(e);
      dfs(g.compose(ngon_.edge_reflection(e)), child);
      edges_.pop_back();
    }
  }

  void record() {
    std::vector<int> raw = raw_code(edges_, Face::kTop);
    if (!is_primitive(raw)) return;
    Corridor cor;
    try {
      cor = build_corridor(ngon_, edges_, cfg_.min_width);
    } catch (const ValidationError&) {
      return;
    }
    if (cor.translation.norm() > l_max_) return;
    found.push_back(canonical_from_raw(raw));
  }

  static double segment_segment_distance(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    auto side = [](Vec2 p, Vec2 q, Vec2 r) { return cross(q - p, r - p); };
    double d1 = side(a, b, c), d2 = side(a, b, d), d3 = side(c, d, a), d4 = side(c, d, b);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
      return 0.0;
    }
    return std::min({segment_distance(a, c, d), segment_distance(b, c, d), segment_distance(c, a, b),
                     segment_distance(d, a, b)});
  }

  const DoubledNgon& ngon_;
  double l_max_;
  EnumerationConfig cfg_;
  Vec2 nu_, tau_, first_a_, first_b_;
  std::vector<int> edges_;
};

}  // namespace

EnumerationResult enumerate_closed_geodesics(const DoubledNgon& ngon, double l_max,
                                             const EnumerationConfig& cfg) {
  if (!(l_max > 0.0)) throw ValidationError("L_max must be positive");
  const int n = ngon.n();
  std::vector<Enumerator> workers;
  workers.reserve(n);
  std::atomic<std::size_t> counter{0};
  for (int e = 0; e < n; ++e) {
    workers.emplace_back(ngon, l_max, cfg);
    workers.back().node_counter = &counter;
  }
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t e) { workers[e].search_from(static_cast<int>(e)); });

  EnumerationResult result;
  result.certificate.l_max = l_max;
  std::map<std::vector<int>, bool> codes;
  for (auto& w : workers) {
    result.certificate.nodes_explored += w.nodes;
    result.certificate.deepest_sequence = std::max(result.certificate.deepest_sequence, w.deepest);
    for (auto& code : w.found) codes.emplace(code, true);
  }
  for (const auto& [code, unused] : codes) {
    std::vector<int> edges;
    for (int c : code) edges.push_back(c / 2);
    Face start = (code.front() & 1) ? Face::kBottom : Face::kTop;
    ClosedGeodesic g = closed_geodesic_from_sequence(ngon, edges, start);
    g.representative = orbit_minimum(n, g.code) == g.code;
    result.geodesics.push_back(std::move(g));
  }
  std::sort(result.geodesics.begin(), result.geodesics.end(), [](const auto& a, const auto& b) {
    if (a.curve.total_length != b.curve.total_length) {
      return a.curve.total_length < b.curve.total_length;
    }
    return a.code < b.code;
  });
  return result;
}

HalfGeodesicClassification classify_half_geodesics(const DoubledNgon& ngon,
                                                   const HalfGeodesicConfig& cfg) {
  HalfGeodesicClassification out;
  out.diameter = approximate_diameter(ngon, cfg.diameter_grid, cfg.distance);
  out.l_max = 2.0 * (out.diameter.value + out.diameter.error_bound) * (1.0 + cfg.margin);
  EnumerationResult all = enumerate_closed_geodesics(ngon, out.l_max, cfg.enumeration);
  out.certificate = all.certificate;

  const PolygonSpace space(ngon);
  const auto oracle = exact_oracle(ngon, cfg.distance);
  // Verdicts are isometry invariant, so each orbit is verified once.
  std::map<std::vector<int>, std::size_t> verified;
  for (const auto& g : all.geodesics) {
    if (!g.representative) continue;
    FamilyClassification fam;
    fam.core = g;
    fam.core_report = metric::verify_one_over_k(space, g.curve, oracle, 2, cfg.tolerances);
    for (double f : cfg.member_fractions) {
      ClosedGeodesic member = closed_geodesic_from_sequence(ngon, g.edges, g.start_face, f);
      fam.members.push_back({f, metric::verify_one_over_k(space, member.curve, oracle, 2, cfg.tolerances)});
    }
    verified.emplace(g.code, out.families.size());
    out.families.push_back(std::move(fam));
  }
  for (const auto& g : all.geodesics) {
    const auto& fam = out.families[verified.at(orbit_minimum(ngon.n(), g.code))];
    if (fam.core_report.verdict == metric::Verdict::kPass) out.half_geodesics.push_back(g);
    for (const auto& member : fam.members) {
      if (member.report.verdict == metric::Verdict::kPass) {
        out.half_geodesics.push_back(
            closed_geodesic_from_sequence(ngon, g.edges, g.start_face, member.fraction));
      }
    }
  }
  return out;
}

}  // namespace geolab::polygon
