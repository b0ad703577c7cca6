#ifndef ANISOSPEC_TENSOR_HPP
#define ANISOSPEC_TENSOR_HPP

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace anisospec {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;

using Point2 = Vec2<double>;

/// Symmetric 2x2 tensor ((e, f), (f, g)).
template <typename Scalar>
struct Tensor2S {
  Scalar e{0};
  Scalar f{0};
  Scalar g{0};

  Mat2<Scalar> matrix() const {
    Mat2<Scalar> m;
    m << e, f, f, g;
    return m;
  }

  bool finite() const { return std::isfinite(e) && std::isfinite(f) && std::isfinite(g); }

  friend bool operator==(const Tensor2S&, const Tensor2S&) = default;
};

using Tensor2 = Tensor2S<double>;

/// Squared eigenvalue difference (lambda - mu)^2 = (e - g)^2 + 4 f^2.
template <typename Scalar>
Scalar anisotropy(const Tensor2S<Scalar>& t) {
  const Scalar d = t.e - t.g;
  return d * d + Scalar(4) * t.f * t.f;
}

/// Coefficients of the affine function s(x, y) = sx * x + sy * y + sc.
template <typename Scalar>
struct LinearCoeffs {
  Scalar sx{0};
  Scalar sy{0};
  Scalar sc{0};

  Scalar operator()(const Vec2<Scalar>& p) const { return sx * p.x() + sy * p.y() + sc; }
  Scalar operator()(Scalar x, Scalar y) const { return sx * x + sy * y + sc; }
};

class DegenerateTriangleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Twice the signed area of (p1, p2, p3); positive for counter-clockwise order.
template <typename Scalar>
Scalar cross2(const Vec2<Scalar>& a, const Vec2<Scalar>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

template <typename Scalar>
Scalar signed_area(const Vec2<Scalar>& p1, const Vec2<Scalar>& p2, const Vec2<Scalar>& p3) {
  return cross2<Scalar>(p2 - p1, p3 - p1) / Scalar(2);
}

/// Affine interpolant through three samples, from the closed-form barycentric quotients.
/// Throws DegenerateTriangleError when the triangle has (relatively) zero area.
template <typename Scalar>
LinearCoeffs<Scalar> linear_coeffs(const Vec2<Scalar>& p1, const Vec2<Scalar>& p2, const Vec2<Scalar>& p3,
                                   Scalar s1, Scalar s2, Scalar s3) {
  const Scalar x1 = p1.x(), y1 = p1.y();
  const Scalar x2 = p2.x(), y2 = p2.y();
  const Scalar x3 = p3.x(), y3 = p3.y();
  const Scalar den = (y2 - y3) * (x1 - x3) + (x3 - x2) * (y1 - y3);
  const Scalar extent = std::max({(p2 - p1).squaredNorm(), (p3 - p1).squaredNorm(), (p3 - p2).squaredNorm()});
  if (!(std::abs(den) > Scalar(1e-12) * extent)) {
    throw DegenerateTriangleError("linear_coeffs: degenerate triangle");
  }
  // quotients written on the differences s_i - s1, so constant samples give exactly zero slopes
  const Scalar d2 = s2 - s1, d3 = s3 - s1;
  LinearCoeffs<Scalar> c;
  c.sx = ((y3 - y1) * d2 + (y1 - y2) * d3) / den;
  c.sy = ((x1 - x3) * d2 + (x2 - x1) * d3) / den;
  c.sc = s1 - c.sx * x1 - c.sy * y1;
  return c;
}

/// Component-wise linear tensor field over one triangle.
template <typename Scalar>
struct TensorFieldCoeffs {
  LinearCoeffs<Scalar> e;
  LinearCoeffs<Scalar> f;
  LinearCoeffs<Scalar> g;

  Tensor2S<Scalar> operator()(const Vec2<Scalar>& p) const { return {e(p), f(p), g(p)}; }
};

template <typename Scalar>
TensorFieldCoeffs<Scalar> tensor_field_coeffs(const Vec2<Scalar>& p1, const Vec2<Scalar>& p2,
                                              const Vec2<Scalar>& p3, const Tensor2S<Scalar>& t1,
                                              const Tensor2S<Scalar>& t2, const Tensor2S<Scalar>& t3) {
  return {linear_coeffs(p1, p2, p3, t1.e, t2.e, t3.e), linear_coeffs(p1, p2, p3, t1.f, t2.f, t3.f),
          linear_coeffs(p1, p2, p3, t1.g, t2.g, t3.g)};
}

template <typename Scalar>
Tensor2S<Scalar> lerp(const Tensor2S<Scalar>& a, const Tensor2S<Scalar>& b, Scalar t) {
  return {a.e + t * (b.e - a.e), a.f + t * (b.f - a.f), a.g + t * (b.g - a.g)};
}

/// Anisotropy along a segment whose end tensors are a and b:
/// sqanis(t) = (u0 + t du)^2 + (w0 + t dw)^2 with u = e - g and w = 2 f.
template <typename Scalar>
struct EdgeRestriction {
  Scalar u0, du, w0, dw;

  EdgeRestriction(const Tensor2S<Scalar>& a, const Tensor2S<Scalar>& b)
      : u0(a.e - a.g), du((b.e - b.g) - (a.e - a.g)), w0(Scalar(2) * a.f), dw(Scalar(2) * (b.f - a.f)) {}

  Scalar quadratic() const { return du * du + dw * dw; }
  Scalar linear() const { return Scalar(2) * (u0 * du + w0 * dw); }
  Scalar constant() const { return u0 * u0 + w0 * w0; }

  Scalar operator()(Scalar t) const {
    const Scalar u = u0 + t * du;
    const Scalar w = w0 + t * dw;
    return u * u + w * w;
  }

  /// Unconstrained minimiser; NaN when the restriction is constant.
  Scalar argmin() const {
    const Scalar a = quadratic();
    if (!(a > Scalar(0))) return std::numeric_limits<Scalar>::quiet_NaN();
    return -(u0 * du + w0 * dw) / a;
  }

  /// Minimum value (u0 dw - w0 du)^2 / (du^2 + dw^2), free of cancellation.
  Scalar min_value() const {
    const Scalar a = quadratic();
    if (!(a > Scalar(0))) return constant();
    const Scalar c = u0 * dw - w0 * du;
    return c * c / a;
  }
};

}  // namespace anisospec

#endif  // ANISOSPEC_TENSOR_HPP
