#pragma once

#include <functional>
#include <string>

namespace geolab::metric {

// d(p, q) for one surface backend, with the backend's declared error bound
// (0 for exact backends).
template <class Point>
struct DistanceOracle {
  std::function<double(const Point&, const Point&)> distance;
  double error_bound = 0.0;
  std::string surface_id;

  double operator()(const Point& p, const Point& q) const { return distance(p, q); }
};

}  // namespace geolab::metric
