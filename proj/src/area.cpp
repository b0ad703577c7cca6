#include "anisospec/area.hpp"

#include <algorithm>
#include <vector>

namespace anisospec {

namespace {

constexpr double kRootSnap = 1e-9;

double clamp_area(double a, double full) { return std::clamp(a, 0.0, full); }

double orient_sign(const Point2& a, const Point2& b) {
  const double c = cross2<double>(a, b);
  return c > 0 ? 1.0 : (c < 0 ? -1.0 : 0.0);
}

// Signed disk area of the origin-anchored triangle (O, p, q).
double signed_wedge(const Point2& p, const Point2& q, double v) {
  const double s = orient_sign(p, q);
  return s == 0.0 ? 0.0 : s * case1_area_normalized(p, q, v);
}

// Sutherland-Hodgman against {d <= 0} for an affine d given at the polygon vertices.
std::vector<Point2> clip(const std::vector<Point2>& poly, const std::vector<double>& d) {
  std::vector<Point2> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const bool in_i = d[i] <= 0.0;
    const bool in_j = d[j] <= 0.0;
    if (in_i) out.push_back(poly[i]);
    if (in_i != in_j) {
      const double t = d[i] / (d[i] - d[j]);
      out.push_back(poly[i] + t * (poly[j] - poly[i]));
    }
  }
  return out;
}

}  // namespace

double polygon_area(const Point2* pts, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += cross2<double>(pts[i], pts[(i + 1) % n]);
  return std::abs(s) / 2.0;
}

double angle_between(const Point2& a, const Point2& b) {
  return std::atan2(std::abs(cross2<double>(a, b)), a.dot(b));
}

double case1_area_normalized(const Point2& b_in, const Point2& c_in, double v) {
  Point2 b = b_in, c = c_in;
  double v2 = b.squaredNorm(), v3 = c.squaredNorm();
  if (v2 > v3) {
    std::swap(b, c);
    std::swap(v2, v3);
  }
  const double full = std::abs(cross2<double>(b, c)) / 2.0;
  if (!(v > 0.0)) return 0.0;
  if (v >= v3) return full;

  const Point2 d = c - b;
  const double dd = d.squaredNorm();
  if (dd == 0.0) return 0.0;
  const double foot = -b.dot(d) / dd;
  if (foot > kRootSnap && foot < 1.0 - kRootSnap) {
    const Point2 m = b + foot * d;
    return case1_area_normalized(b, m, v) + case1_area_normalized(m, c, v);
  }

  const double theta_a = angle_between(b, c);
  if (v <= v2) return sector_area(theta_a, v);

  // contour circle meets the far edge at F = b + t d
  const double half_b = b.dot(d);
  const double cc = v2 - v;
  const double disc = std::max(half_b * half_b - dd * cc, 0.0);
  const double denom = half_b + std::sqrt(disc);
  double t = denom > 0.0 ? -cc / denom : 1.0;
  if (t < kRootSnap) t = 0.0;
  if (t > 1.0 - kRootSnap) t = 1.0;
  const Point2 f = b + t * d;
  const double theta = angle_between(f, c);  // measured from the ray towards c
  const double area = theta_a * v2 / 2.0 + (theta * v - theta_a * v2) / 2.0 +
                      std::sqrt(v * v2) * std::sin(theta_a - theta) / 2.0;
  return clamp_area(area, full);
}

double case2_area_fan(const Point2& a, const Point2& b, const Point2& c, double v) {
  const double full = std::abs(signed_area<double>(a, b, c));
  const double s = signed_wedge(a, b, v) + signed_wedge(b, c, v) + signed_wedge(c, a, v);
  return clamp_area(signed_area<double>(a, b, c) >= 0 ? s : -s, full);
}

double case2_area_normalized(const Point2& a_in, const Point2& b_in, const Point2& c_in, double v) {
  std::array<Point2, 3> p{a_in, b_in, c_in};
  std::sort(p.begin(), p.end(), [](const Point2& x, const Point2& y) { return x.squaredNorm() < y.squaredNorm(); });
  const Point2& a = p[0];
  const Point2& b = p[1];
  const Point2& c = p[2];
  const double v1 = a.squaredNorm(), v2 = b.squaredNorm(), v3 = c.squaredNorm();
  const double sa = signed_area<double>(a, b, c);
  const double full = std::abs(sa);
  if (v < v1) return 0.0;
  if (v >= v3) return full;
  if (v >= v2) {
    // H: line ac meets the line through the origin and b
    const Point2 ac = c - a;
    const double denom = cross2<double>(ac, b);
    if (std::abs(denom) > 1e-12 * ac.norm() * b.norm()) {
      const Point2 h = a - (cross2<double>(a, b) / denom) * ac;
      if (h.squaredNorm() <= v) {
        // Area(DBFG) - Area(DHEG) +- Area(AHB), signs from orientation
        const double s = signed_wedge(b, c, v) + signed_wedge(c, h, v) + signed_area<double>(h, a, b);
        return clamp_area(sa >= 0 ? s : -s, full);
      }
    }
  }
  return case2_area_fan(a, b, c, v);
}

double case1_area(const MonotoneTriangle& tri, double v) {
  if (!(v > 0.0)) return 0.0;
  if (v >= tri.values[2]) return tri.area;
  const double a = case1_area_normalized(tri.normalized[1], tri.normalized[2], v) / tri.area_factor;
  return clamp_area(a, tri.area);
}

double case2_area(const MonotoneTriangle& tri, double v) {
  if (v < tri.values[0]) return 0.0;
  if (v >= tri.values[2]) return tri.area;
  const double a = case2_area_normalized(tri.normalized[0], tri.normalized[1], tri.normalized[2], v) / tri.area_factor;
  return clamp_area(a, tri.area);
}

double degenerate_strip_area(const StripModel<double>& strip, const std::array<Point2, 3>& corners, double v) {
  const double full = std::abs(signed_area<double>(corners[0], corners[1], corners[2]));
  if (v < strip.floor) return 0.0;
  if (!(strip.k > 0.0)) return full;
  if (v >= std::max({strip(corners[0]), strip(corners[1]), strip(corners[2])})) return full;
  const double w = std::sqrt((v - strip.floor) / strip.k);
  std::vector<Point2> poly(corners.begin(), corners.end());
  std::vector<double> d(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) d[i] = strip.coordinate(poly[i]) - (strip.t0 + w);
  poly = clip(poly, d);
  d.resize(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) d[i] = (strip.t0 - w) - strip.coordinate(poly[i]);
  poly = clip(poly, d);
  if (poly.size() < 3) return 0.0;
  return clamp_area(polygon_area(poly.data(), poly.size()), full);
}

double degenerate_strip_area(const Quadricd& q, const std::array<Point2, 3>& corners, double v) {
  return degenerate_strip_area(strip_model(q), corners, v);
}

double linear_sublevel_area(const std::array<Point2, 3>& corners, const std::array<double, 3>& values, double v) {
  const double full = std::abs(signed_area<double>(corners[0], corners[1], corners[2]));
  const double lo = std::min({values[0], values[1], values[2]});
  const double hi = std::max({values[0], values[1], values[2]});
  if (v < lo) return 0.0;
  if (v >= hi) return full;
  std::vector<Point2> poly(corners.begin(), corners.end());
  std::vector<double> d{values[0] - v, values[1] - v, values[2] - v};
  poly = clip(poly, d);
  if (poly.size() < 3) return 0.0;
  return clamp_area(polygon_area(poly.data(), poly.size()), full);
}

double linear_sublevel_area(const LinearCoeffs<double>& coeffs, const std::array<Point2, 3>& corners, double v) {
  return linear_sublevel_area(corners, {coeffs(corners[0]), coeffs(corners[1]), coeffs(corners[2])}, v);
}

double sublevel_area(const MonotoneTriangle& tri, const ParentModel& parent, double v) {
  switch (tri.kind) {
    case MonotoneCase::MinAtVertex: return case1_area(tri, v);
    case MonotoneCase::Generic: return case2_area(tri, v);
    case MonotoneCase::DegenerateStrip: {
      if (v >= tri.values[2]) return tri.area;
      return degenerate_strip_area(parent.strip, tri.corners, v);
    }
  }
  return 0.0;
}

}  // namespace anisospec
