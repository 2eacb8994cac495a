#pragma once

// Closed constant-speed curves S^1 -> M stored as breakpoint polylines in the
// intrinsic coordinates of a surface backend.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <numbers>
#include <string>
#include <vector>

#include "geolab/errors.hpp"

namespace geolab::metric {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// A surface backend that can measure and interpolate the geodesic segment
// between two consecutive breakpoints.
template <class S>
concept CurveSpace = requires(const S& s, const typename S::Point& a,
                              const typename S::Point& b, double lambda) {
  { s.segment_length(a, b) } -> std::convertible_to<double>;
  { s.interpolate(a, b, lambda) } -> std::convertible_to<typename S::Point>;
  { s.surface_id() } -> std::convertible_to<std::string>;
};

template <class Point>
struct Breakpoint {
  double t = 0.0;
  Point point;
};

template <class Point>
struct ClosedCurve {
  std::vector<Breakpoint<Point>> breakpoints;
  double total_length = 0.0;
  std::string surface_id;
};

inline double wrap_parameter(double t) {
  double w = std::fmod(t, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

// Checks ordering and closure only; throws ValidationError.
template <class Point>
void check_breakpoint_order(const ClosedCurve<Point>& curve) {
  const auto& bp = curve.breakpoints;
  if (bp.size() < 2) {
    throw ValidationError("closed curve needs at least two breakpoints to close");
  }
  if (bp.front().t != 0.0) throw ValidationError("first breakpoint parameter must be 0");
  for (std::size_t i = 0; i < bp.size(); ++i) {
    if (!(bp[i].t >= 0.0 && bp[i].t < kTwoPi)) {
      throw ValidationError("breakpoint parameter outside [0, 2pi)");
    }
    if (i > 0 && !(bp[i].t > bp[i - 1].t)) {
      throw ValidationError("breakpoint parameters must be strictly increasing");
    }
  }
  if (!(curve.total_length > 0.0)) throw ValidationError("curve length must be positive");
}

// l(gamma): sum of segment lengths, including the closing segment.
template <CurveSpace S>
double curve_length(const S& space, const ClosedCurve<typename S::Point>& curve) {
  check_breakpoint_order(curve);
  const auto& bp = curve.breakpoints;
  double total = 0.0;
  for (std::size_t i = 0; i < bp.size(); ++i) {
    total += space.segment_length(bp[i].point, bp[(i + 1) % bp.size()].point);
  }
  return total;
}

// Full invariant check: ordering, length bookkeeping, and constant speed.
template <CurveSpace S>
void validate_curve(const S& space, const ClosedCurve<typename S::Point>& curve,
                    double speed_tol = 1e-9) {
  double length = curve_length(space, curve);
  if (std::abs(length - curve.total_length) > 1e-12 * curve.total_length + 1e-15) {
    throw ValidationError("segment lengths do not add up to total_length");
  }
  const auto& bp = curve.breakpoints;
  const double speed = curve.total_length / kTwoPi;
  for (std::size_t i = 0; i < bp.size(); ++i) {
    double t_next = i + 1 < bp.size() ? bp[i + 1].t : kTwoPi;
    double seg = space.segment_length(bp[i].point, bp[(i + 1) % bp.size()].point);
    if (std::abs(seg / (t_next - bp[i].t) - speed) > speed_tol * std::max(1.0, speed)) {
      throw ValidationError("curve is not parameterized at constant speed");
    }
  }
}

template <CurveSpace S>
typename S::Point point_at(const S& space, const ClosedCurve<typename S::Point>& curve,
                           double t) {
  const auto& bp = curve.breakpoints;
  t = wrap_parameter(t);
  auto it = std::upper_bound(bp.begin(), bp.end(), t,
                             [](double v, const auto& b) { return v < b.t; });
  std::size_t i = static_cast<std::size_t>(it - bp.begin()) - 1;
  std::size_t j = (i + 1) % bp.size();
  double t0 = bp[i].t;
  double t1 = i + 1 < bp.size() ? bp[i + 1].t : kTwoPi;
  double lambda = (t - t0) / (t1 - t0);
  if (lambda <= 0.0) return bp[i].point;
  return space.interpolate(bp[i].point, bp[j].point, lambda);
}

// gamma(-t).
template <class Point>
ClosedCurve<Point> reversed(const ClosedCurve<Point>& curve) {
  ClosedCurve<Point> out{{}, curve.total_length, curve.surface_id};
  const auto& bp = curve.breakpoints;
  out.breakpoints.push_back({0.0, bp.front().point});
  for (std::size_t i = bp.size() - 1; i >= 1; --i) {
    out.breakpoints.push_back({kTwoPi - bp[i].t, bp[i].point});
  }
  return out;
}

// gamma(t + shift); the point gamma(shift) becomes the new t = 0 breakpoint.
template <CurveSpace S>
ClosedCurve<typename S::Point> rotated(const S& space,
                                       const ClosedCurve<typename S::Point>& curve,
                                       double shift) {
  shift = wrap_parameter(shift);
  ClosedCurve<typename S::Point> out{{}, curve.total_length, curve.surface_id};
  out.breakpoints.push_back({0.0, point_at(space, curve, shift)});
  std::vector<Breakpoint<typename S::Point>> rest;
  for (const auto& b : curve.breakpoints) {
    double t = wrap_parameter(b.t - shift);
    if (t > 0.0) rest.push_back({t, b.point});
  }
  std::sort(rest.begin(), rest.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
  out.breakpoints.insert(out.breakpoints.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace geolab::metric
