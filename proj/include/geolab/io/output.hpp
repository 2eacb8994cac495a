#pragma once

// Static figure and table emitters, and atomic file output.

#include <string>
#include <vector>

#include "geolab/polygon/closed_geodesics.hpp"
#include "geolab/polygon/ellipse.hpp"
#include "geolab/tube/curves.hpp"

namespace geolab::io {

// Writes to a temporary sibling and renames over `path`. Throws IoError when
// the directory is missing or unwritable.
void write_file_atomic(const std::string& path, const std::string& content);

// Shortest decimal form that round-trips the double.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  void add(std::vector<std::string> row);
  std::string str() const;
};

// Both faces side by side with the curves' straight pieces drawn on the face
// they cross.
std::string polygon_curves_svg(const polygon::DoubledNgon& ngon,
                               const std::vector<polygon::ClosedGeodesic>& curves);

// Foci p and q, the ellipse |x - p| + |x - q| = focal_sum, the tangency edge
// pair and the closest boundary point among the other edges.
std::string ellipse_witness_svg(const polygon::DoubledNgon& ngon, Vec2 p, Vec2 q, double focal_sum,
                                const polygon::ClearanceResult& clearance,
                                const std::vector<int>& tangent_edges);

// Flattened atlas: face 0 with its cylinder strips (width pi eps) along the
// edges and the sphere sectors in the corner wedges; face 1 beside it.
std::string tube_atlas_svg(const tube::TubeSurface& tube, const std::vector<tube::TubeCurve>& curves,
                           int samples_per_curve = 600);

}  // namespace geolab::io
