// Independent reference computations shared by the tests.
#ifndef ANISOSPEC_TESTS_ORACLES_HPP
#define ANISOSPEC_TESTS_ORACLES_HPP

#include "anisospec/subdivision.hpp"

#include <array>
#include <cmath>
#include <functional>

namespace oracle {

using anisospec::Point2;

/// Samples `rays` rays from the lowest vertex across the triangle; the field must not decrease
/// along any of them (up to rel_tol of the triangle's value range).
inline bool rays_monotone(const std::function<double(const Point2&)>& f, const std::array<Point2, 3>& corners,
                          int lowest, int rays = 64, int steps = 64, double rel_tol = 1e-9) {
  const Point2 o = corners[lowest];
  const Point2 b = corners[(lowest + 1) % 3], c = corners[(lowest + 2) % 3];
  const double scale = std::max({std::abs(f(o)), std::abs(f(b)), std::abs(f(c)), 1e-300});
  for (int r = 0; r <= rays; ++r) {
    const Point2 target = b + (c - b) * (static_cast<double>(r) / rays);
    double prev = f(o);
    for (int s = 1; s <= steps; ++s) {
      const double v = f(o + (target - o) * (static_cast<double>(s) / steps));
      if (v < prev - rel_tol * scale) return false;
      prev = std::max(prev, v);
    }
  }
  return true;
}

/// Anisotropy of the parent's interpolated tensor field, bypassing the quadric.
inline std::function<double(const Point2&)> field_evaluator(const anisospec::ParentModel& parent) {
  return [field = parent.field](const Point2& p) { return anisospec::anisotropy(field(p)); };
}

/// Index (0..2) of the corner of a monotone triangle holding the lowest field value.
inline int lowest_corner(const std::function<double(const Point2&)>& f, const std::array<Point2, 3>& c) {
  int k = 0;
  for (int i = 1; i < 3; ++i) {
    if (f(c[i]) < f(c[k])) k = i;
  }
  return k;
}

inline double shoelace(const std::array<Point2, 3>& c) {
  return 0.5 * std::abs((c[1].x() - c[0].x()) * (c[2].y() - c[0].y()) - (c[2].x() - c[0].x()) * (c[1].y() - c[0].y()));
}

}  // namespace oracle

#endif  // ANISOSPEC_TESTS_ORACLES_HPP
