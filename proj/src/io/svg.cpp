#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "geolab/io/output.hpp"

namespace geolab::io {

namespace {

constexpr double kPi = std::numbers::pi;
const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

// World-to-pixel mapping with y up.
class Canvas {
 public:
  Canvas(double minx, double miny, double maxx, double maxy, double px_per_unit = 240.0)
      : minx_(minx), maxy_(maxy), scale_(px_per_unit) {
    width_ = (maxx - minx) * scale_;
    height_ = (maxy - miny) * scale_;
    os_ << std::fixed << std::setprecision(2);
  }

  double px(double len) const { return len * scale_; }

  void polygon(const std::vector<Vec2>& pts, const std::string& style) {
    os_ << "<polygon points=\"";
    for (const auto& p : pts) os_ << X(p) << ',' << Y(p) << ' ';
    os_ << "\" style=\"" << style << "\"/>\n";
  }
  void polyline(const std::vector<Vec2>& pts, const std::string& style) {
    if (pts.size() < 2) return;
    os_ << "<polyline points=\"";
    for (const auto& p : pts) os_ << X(p) << ',' << Y(p) << ' ';
    os_ << "\" style=\"fill:none;" << style << "\"/>\n";
  }
  void circle(Vec2 c, double r_px, const std::string& style) {
    os_ << "<circle cx=\"" << X(c) << "\" cy=\"" << Y(c) << "\" r=\"" << r_px << "\" style=\"" << style << "\"/>\n";
  }
  void text(Vec2 p, const std::string& s) {
    os_ << "<text x=\"" << X(p) << "\" y=\"" << Y(p) << "\" font-size=\"12\" font-family=\"sans-serif\">" << s
        << "</text>\n";
  }
  std::string str() const {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\"" << height_
        << "\" viewBox=\"0 0 " << width_ << ' ' << height_ << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << os_.str() << "</svg>\n";
    return out.str();
  }

 private:
  double X(Vec2 p) const { return (p.x - minx_) * scale_; }
  double Y(Vec2 p) const { return (maxy_ - p.y) * scale_; }

  double minx_, maxy_, scale_, width_ = 0, height_ = 0;
  std::ostringstream os_;
};

std::string stroke(const std::string& color, double width) {
  std::ostringstream os;
  os << "stroke:" << color << ";stroke-width:" << width;
  return os.str();
}

const std::string kOutline = "fill:#f2f2f2;stroke:#333333;stroke-width:1";

}  // namespace

std::string polygon_curves_svg(const polygon::DoubledNgon& ngon,
                               const std::vector<polygon::ClosedGeodesic>& curves) {
  const double r = ngon.circumradius(), gap = 0.3 * r;
  const Vec2 offset{2.0 * r + gap, 0.0};
  Canvas c(-r - gap, -r - gap, 3.0 * r + 2.0 * gap, r + 2.0 * gap);
  for (int panel = 0; panel < 2; ++panel) {
    std::vector<Vec2> poly;
    for (const auto& v : ngon.vertices()) poly.push_back(v + offset * panel);
    c.polygon(poly, kOutline);
    c.text(Vec2{-0.3 * r, r + gap} + offset * panel, panel == 0 ? "top face" : "bottom face");
  }
  polygon::PolygonSpace space(ngon);
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto& bp = curves[k].curve.breakpoints;
    const std::string style = stroke(kPalette[k % 8], 2.0);
    for (std::size_t i = 0; i < bp.size(); ++i) {
      const auto& a = bp[i].point;
      const auto& b = bp[(i + 1) % bp.size()].point;
      auto mid = space.interpolate(a, b, 0.5);
      const auto* in = polygon::as_interior(mid);
      int panel = in && in->face == polygon::Face::kBottom ? 1 : 0;
      c.polyline({ngon.position(a) + offset * panel, ngon.position(b) + offset * panel}, style);
    }
  }
  return c.str();
}

std::string ellipse_witness_svg(const polygon::DoubledNgon& ngon, Vec2 p, Vec2 q, double focal_sum,
                                const polygon::ClearanceResult& clearance,
                                const std::vector<int>& tangent_edges) {
  const double r = ngon.circumradius();
  const double A = 0.5 * focal_sum, f = 0.5 * (q - p).norm();
  const double B = std::sqrt(std::max(A * A - f * f, 0.0));
  const double ext = std::max(r, A) + 0.2 * r;
  Canvas c(-ext, -ext, ext, ext);
  c.polygon(ngon.vertices(), kOutline);
  for (int e : tangent_edges) {
    c.polyline({ngon.vertex(e), ngon.vertex(e + 1)}, stroke("#2ca02c", 4.0));
  }
  const Vec2 center = (p + q) * 0.5;
  const Vec2 u = f > 0.0 ? (q - p) / (2.0 * f) : Vec2{1.0, 0.0};
  const Vec2 w{-u.y, u.x};
  std::vector<Vec2> ell;
  for (int i = 0; i <= 256; ++i) {
    double t = 2.0 * kPi * i / 256;
    ell.push_back(center + u * (A * std::cos(t)) + w * (B * std::sin(t)));
  }
  c.polyline(ell, stroke("#1f77b4", 1.5));
  c.circle(p, 4.0, "fill:#d62728");
  c.circle(q, 4.0, "fill:#d62728");
  c.text(p, " p");
  c.text(q, " q");
  if (!clearance.edges.empty()) {
    c.circle(clearance.witness_point, 4.0, clearance.clear ? "fill:#2ca02c" : "fill:#ff7f0e");
    c.text(clearance.witness_point, clearance.clear ? " closest (clear)" : " closest (violates)");
  }
  return c.str();
}

std::string tube_atlas_svg(const tube::TubeSurface& tube, const std::vector<tube::TubeCurve>& curves,
                           int samples_per_curve) {
  const auto& g = tube.base();
  const double eps = tube.eps(), reach = kPi * eps;
  const double r = g.circumradius() + reach, gap = 0.2 * g.circumradius();
  const Vec2 offset{2.0 * r + gap, 0.0};
  Canvas c(-r - gap, -r - gap, 3.0 * r + 2.0 * gap, r + 2.0 * gap);
  auto azimuth = [&](int e) {
    Vec2 nrm = g.outward_normal(e);
    return std::atan2(nrm.y, nrm.x);
  };
  // Cylinder strips and sphere sectors around face 0.
  for (int e = 0; e < g.n(); ++e) {
    Vec2 nrm = g.outward_normal(e) * reach;
    c.polygon({g.vertex(e), g.vertex(e + 1), g.vertex(e + 1) + nrm, g.vertex(e) + nrm},
              "fill:#b3b3b3;stroke:#555555;stroke-width:0.5");
    std::vector<Vec2> wedge{g.vertex(e)};
    const double a0 = azimuth(e - 1);
    const double span = std::remainder(azimuth(e) - a0, 2.0 * kPi);
    for (int i = 0; i <= 16; ++i) {
      double a = a0 + span * i / 16;
      wedge.push_back(g.vertex(e) + Vec2{std::cos(a), std::sin(a)} * reach);
    }
    c.polygon(wedge, "fill:#dcdcdc;stroke:#555555;stroke-width:0.5");
  }
  c.polygon(g.vertices(), kOutline);
  std::vector<Vec2> back;
  for (const auto& v : g.vertices()) back.push_back(v + offset);
  c.polygon(back, kOutline);
  c.text({-0.4 * r, r + 0.5 * gap}, "face 0, cylinders, sphere sectors");
  c.text(Vec2{-0.2 * r, r + 0.5 * gap} + offset, "face 1");

  auto atlas = [&](const tube::TubePoint& p) -> Vec2 {
    switch (p.region) {
      case tube::Region::kFace:
        return p.index == 0 ? Vec2{p.a, p.b} : Vec2{p.a, p.b} + offset;
      case tube::Region::kCylinder:
        return g.edge_position(p.index, p.a) + g.outward_normal(p.index) * (p.b * eps);
      case tube::Region::kSphere: {
        double a = azimuth(p.index - 1) + p.a;
        return g.vertex(p.index) + Vec2{std::cos(a), std::sin(a)} * (p.b * eps);
      }
    }
    return {};
  };
  tube::TubeSpace space(tube);
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const double step = curves[k].total_length / samples_per_curve;
    const std::string style = stroke(kPalette[k % 8], 2.0);
    std::vector<Vec2> run;
    Vec2 prev;
    for (int i = 0; i <= samples_per_curve; ++i) {
      Vec2 x = atlas(metric::point_at(space, curves[k], 2.0 * kPi * i / samples_per_curve));
      // Moving between panels breaks the drawn polyline.
      if (!run.empty() && (x - prev).norm() > 4.0 * step) {
        c.polyline(run, style);
        run.clear();
      }
      run.push_back(x);
      prev = x;
    }
    c.polyline(run, style);
  }
  return c.str();
}

}  // namespace geolab::io
