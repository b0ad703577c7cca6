#ifndef ANISOSPEC_AREA_HPP
#define ANISOSPEC_AREA_HPP

#include "anisospec/quadric.hpp"
#include "anisospec/random.hpp"
#include "anisospec/subdivision.hpp"

#include <array>
#include <cmath>
#include <cstdint>

namespace anisospec {

// Sublevel-set areas {sqanis <= v}. Kernels taking MonotoneTriangle return original-coordinate
// areas; the *_normalized variants work in the circular-contour frame.

/// Area of the circular sector of opening theta and squared radius v.
inline double sector_area(double theta, double v) { return theta * v / 2.0; }

/// d(sector_area)/dv, independent of v.
inline double sector_density(double theta) { return theta / 2.0; }

/// Unsigned angle at the origin between a and b, in [0, pi].
double angle_between(const Point2& a, const Point2& b);

/// Area of {|p|^2 <= v} inside triangle (origin, b, c).
///
/// If the far edge bc is monotone in |p| this is the sector up to the middle value, then the
/// sector plus the BDEF region. A far edge whose closest point to the origin is interior is
/// split there first.
double case1_area_normalized(const Point2& b, const Point2& c, double v);

/// Area of {|p|^2 <= v} inside a triangle not touching the origin, decomposed into
/// origin-anchored regions and the correction triangle AHB.
double case2_area_normalized(const Point2& a, const Point2& b, const Point2& c, double v);

/// Same quantity from the signed origin fan (O,a,b) + (O,b,c) + (O,c,a); used as a cross-check.
double case2_area_fan(const Point2& a, const Point2& b, const Point2& c, double v);

double case1_area(const MonotoneTriangle& tri, double v);
double case2_area(const MonotoneTriangle& tri, double v);

/// Triangle clipped to the strip {p : k (n.p - t0)^2 + floor <= v}.
double degenerate_strip_area(const StripModel<double>& strip, const std::array<Point2, 3>& corners, double v);
double degenerate_strip_area(const Quadricd& q, const std::array<Point2, 3>& corners, double v);

/// Triangle clipped to {s <= v} for an affine s given by its vertex values.
double linear_sublevel_area(const std::array<Point2, 3>& corners, const std::array<double, 3>& values, double v);
double linear_sublevel_area(const LinearCoeffs<double>& coeffs, const std::array<Point2, 3>& corners, double v);

/// Exact quadratic sublevel area of one monotone triangle, dispatched on its case.
double sublevel_area(const MonotoneTriangle& tri, const ParentModel& parent, double v);

double polygon_area(const Point2* pts, std::size_t n);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Monte-Carlo sublevel area with uniform barycentric sampling; deterministic given seed.
template <typename Evaluator>
McEstimate mc_sublevel_area(Evaluator&& eval, const std::array<Point2, 3>& corners, double v, std::uint64_t n_samples,
                            std::uint64_t seed) {
  if (n_samples == 0) n_samples = 1;
  const Point2 e1 = corners[1] - corners[0];
  const Point2 e2 = corners[2] - corners[0];
  const double area = std::abs(cross2<double>(e1, e2)) / 2.0;
  Rng rng(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    double u = rng.uniform();
    double w = rng.uniform();
    if (u + w > 1.0) {
      u = 1.0 - u;
      w = 1.0 - w;
    }
    const Point2 p = corners[0] + u * e1 + w * e2;
    if (eval(p) <= v) ++hits;
  }
  const double frac = static_cast<double>(hits) / static_cast<double>(n_samples);
  return {area * frac, area * std::sqrt(frac * (1.0 - frac) / static_cast<double>(n_samples))};
}

}  // namespace anisospec

#endif  // ANISOSPEC_AREA_HPP
