#ifndef ANISOSPEC_QUADRIC_HPP
#define ANISOSPEC_QUADRIC_HPP

#include "anisospec/tensor.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace anisospec {

enum class QuadricKind { EllipticMin, DegenerateParallel };

inline const char* to_string(QuadricKind k) {
  return k == QuadricKind::EllipticMin ? "elliptic_min" : "degenerate_parallel";
}

class NoCriticalPointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One-dimensional form k (n . p - t0)^2 + floor of a quadric whose contours are parallel lines.
template <typename Scalar>
struct StripModel {
  Vec2<Scalar> direction{Scalar(1), Scalar(0)};
  Scalar k{0};
  Scalar t0{0};
  Scalar floor{0};

  Scalar coordinate(const Vec2<Scalar>& p) const { return direction.dot(p); }
  Scalar operator()(const Vec2<Scalar>& p) const {
    const Scalar t = coordinate(p) - t0;
    return k * t * t + floor;
  }
};

/// s(x, y) = A x^2 + B x y + C y^2 + D x + E y + F together with its classification.
template <typename Scalar>
struct Quadric {
  Scalar a{0}, b{0}, c{0}, d{0}, e{0}, f{0};
  Scalar h{0};      ///< Hessian determinant 4AC - B^2
  Scalar i_inv{0};  ///< BDE - AE^2 - CD^2
  QuadricKind kind{QuadricKind::DegenerateParallel};
  std::optional<Vec2<Scalar>> critical_point;

  Scalar operator()(const Vec2<Scalar>& p) const { return (*this)(p.x(), p.y()); }
  Scalar operator()(Scalar x, Scalar y) const {
    return a * x * x + b * x * y + c * y * y + d * x + e * y + f;
  }

  Vec2<Scalar> gradient(const Vec2<Scalar>& p) const {
    return {Scalar(2) * a * p.x() + b * p.y() + d, Scalar(2) * c * p.y() + b * p.x() + e};
  }

  /// Quadratic-form matrix M = ((A, B/2), (B/2, C)).
  Mat2<Scalar> form() const {
    Mat2<Scalar> m;
    m << a, b / Scalar(2), b / Scalar(2), c;
    return m;
  }

  Scalar scale() const { return std::max({std::abs(a), std::abs(b), std::abs(c), Scalar(1)}); }

  /// Threshold separating H > 0 from H = 0.
  Scalar hessian_tolerance() const { return Scalar(1e-10) * std::max(a * c, b * b); }

  /// Bound on |I| admissible for a degenerate classification: I = -F H exactly, plus rounding.
  Scalar invariant_tolerance() const {
    return std::abs(f) * hessian_tolerance() +
           Scalar(1e-10) * (std::abs(b * d * e) + std::abs(a * e * e) + std::abs(c * d * d));
  }
};

using Quadricd = Quadric<double>;

template <typename Scalar>
QuadricKind classify(const Quadric<Scalar>& q) {
  return q.h > q.hessian_tolerance() ? QuadricKind::EllipticMin : QuadricKind::DegenerateParallel;
}

namespace detail {

template <typename Scalar>
void finish(Quadric<Scalar>& q) {
  q.i_inv = q.b * q.d * q.e - q.a * q.e * q.e - q.c * q.d * q.d;
  q.kind = classify(q);
  if (q.kind == QuadricKind::EllipticMin) {
    q.critical_point = Vec2<Scalar>((-Scalar(2) * q.c * q.d + q.b * q.e) / q.h,
                                    (-Scalar(2) * q.a * q.e + q.b * q.d) / q.h);
  } else {
    q.critical_point.reset();
  }
}

}  // namespace detail

/// Quadric from raw coefficients; H is taken as 4AC - B^2.
template <typename Scalar>
Quadric<Scalar> quadric_from_coefficients(Scalar a, Scalar b, Scalar c, Scalar d, Scalar e, Scalar f) {
  Quadric<Scalar> q;
  q.a = a;
  q.b = b;
  q.c = c;
  q.d = d;
  q.e = e;
  q.f = f;
  q.h = Scalar(4) * a * c - b * b;
  detail::finish(q);
  return q;
}

/// Anisotropy quadric of a component-wise linear tensor field.
///
/// With u = e - g and w = 2 f the anisotropy is u^2 + w^2; A..F are the expanded
/// coefficients and H is taken from its perfect-square form
/// 16 (f_x (e_y - g_y) - f_y (e_x - g_x))^2, which is non-negative by construction.
template <typename Scalar>
Quadric<Scalar> build_quadric(const LinearCoeffs<Scalar>& ec, const LinearCoeffs<Scalar>& fc,
                              const LinearCoeffs<Scalar>& gc) {
  const Scalar ux = ec.sx - gc.sx, uy = ec.sy - gc.sy, uc = ec.sc - gc.sc;
  const Scalar fx = fc.sx, fy = fc.sy, fcc = fc.sc;
  Quadric<Scalar> q;
  q.a = ux * ux + Scalar(4) * fx * fx;
  q.b = Scalar(2) * (ux * uy + Scalar(4) * fx * fy);
  q.c = uy * uy + Scalar(4) * fy * fy;
  q.d = Scalar(2) * (ux * uc + Scalar(4) * fx * fcc);
  q.e = Scalar(2) * (uy * uc + Scalar(4) * fy * fcc);
  q.f = uc * uc + Scalar(4) * fcc * fcc;
  const Scalar cross = fx * uy - fy * ux;
  q.h = Scalar(16) * cross * cross;
  detail::finish(q);
  return q;
}

template <typename Scalar>
Quadric<Scalar> build_quadric(const TensorFieldCoeffs<Scalar>& t) {
  return build_quadric(t.e, t.f, t.g);
}

template <typename Scalar>
Vec2<Scalar> critical_point(const Quadric<Scalar>& q) {
  if (q.kind != QuadricKind::EllipticMin || !q.critical_point) {
    throw NoCriticalPointError("critical_point: quadric has no isolated minimum");
  }
  return *q.critical_point;
}

/// Constant term after translating the minimum to the origin: F + I / H.
template <typename Scalar>
Scalar translated_constant(const Quadric<Scalar>& q) {
  if (q.kind != QuadricKind::EllipticMin) {
    throw NoCriticalPointError("translated_constant: quadric has no isolated minimum");
  }
  return q.f + q.i_inv / q.h;
}

/// Eigen-decomposition of a symmetric 2x2 matrix in closed form.
/// values(0) >= values(1); columns of vectors are the matching unit eigenvectors with det = +1.
template <typename Scalar>
struct SymmetricEigen2 {
  Vec2<Scalar> values;
  Mat2<Scalar> vectors;
};

template <typename Scalar>
SymmetricEigen2<Scalar> symmetric_eigen2(Scalar a, Scalar off, Scalar c, Scalar det) {
  SymmetricEigen2<Scalar> r;
  const Scalar tr = a + c;
  const Scalar half_diff = (a - c) / Scalar(2);
  const Scalar disc = std::hypot(half_diff, off);
  const Scalar l1 = tr / Scalar(2) + disc;
  // the small eigenvalue from the determinant avoids cancellation in tr/2 - disc
  const Scalar l2 = l1 != Scalar(0) ? det / l1 : tr / Scalar(2) - disc;
  r.values << l1, l2;
  if (disc <= Scalar(1e-12) * (std::abs(a) + std::abs(c))) {
    r.vectors.setIdentity();
    return r;
  }
  Vec2<Scalar> v1(off, l1 - a);
  Vec2<Scalar> v2(l1 - c, off);
  Vec2<Scalar> v = v1.squaredNorm() >= v2.squaredNorm() ? v1 : v2;
  v.normalize();
  if (v.x() < Scalar(0) || (v.x() == Scalar(0) && v.y() < Scalar(0))) v = -v;
  r.vectors.col(0) = v;
  r.vectors.col(1) = Vec2<Scalar>(-v.y(), v.x());
  return r;
}

/// Translate-rotate-scale map taking an elliptic quadric to x_s^2 + y_s^2.
template <typename Scalar>
struct NormalizedFrame {
  Vec2<Scalar> translation{Vec2<Scalar>::Zero()};
  Mat2<Scalar> rotation{Mat2<Scalar>::Identity()};
  Vec2<Scalar> scales{Scalar(1), Scalar(1)};
  Scalar area_factor{1};

  Vec2<Scalar> to_normalized(const Vec2<Scalar>& p) const {
    const Vec2<Scalar> r = rotation.transpose() * (p - translation);
    return {std::sqrt(scales(0)) * r.x(), std::sqrt(scales(1)) * r.y()};
  }

  Vec2<Scalar> from_normalized(const Vec2<Scalar>& s) const {
    const Vec2<Scalar> r(s.x() / std::sqrt(scales(0)), s.y() / std::sqrt(scales(1)));
    return translation + rotation * r;
  }

  /// Value of the normalized quadric x_s^2 + y_s^2 at an original-coordinate point.
  Scalar value(const Vec2<Scalar>& p) const { return to_normalized(p).squaredNorm(); }
};

using Frame = NormalizedFrame<double>;

template <typename Scalar>
NormalizedFrame<Scalar> normalize(const Quadric<Scalar>& q) {
  const Vec2<Scalar> pc = critical_point(q);
  const auto eig = symmetric_eigen2(q.a, q.b / Scalar(2), q.c, q.h / Scalar(4));
  if (!(eig.values(0) > Scalar(0)) || !(eig.values(1) > Scalar(0))) {
    throw NumericalError("normalize: non-positive eigenvalue of the quadratic form");
  }
  NormalizedFrame<Scalar> fr;
  fr.translation = pc;
  fr.rotation = eig.vectors;
  fr.scales = eig.values;
  fr.area_factor = std::sqrt(eig.values(0) * eig.values(1));
  return fr;
}

/// Strip form of a degenerate quadric: projection onto the dominant eigendirection of M.
template <typename Scalar>
StripModel<Scalar> strip_model(const Quadric<Scalar>& q) {
  StripModel<Scalar> s;
  const auto eig = symmetric_eigen2(q.a, q.b / Scalar(2), q.c, std::max(q.h, Scalar(0)) / Scalar(4));
  s.direction = eig.vectors.col(0);
  s.k = std::max(q.a + q.c, Scalar(0));
  if (!(s.k > Scalar(0))) {
    s.k = 0;
    s.floor = q.f;
    return s;
  }
  const Scalar lin = q.d * s.direction.x() + q.e * s.direction.y();
  s.t0 = -lin / (Scalar(2) * s.k);
  s.floor = std::max(q.f - lin * lin / (Scalar(4) * s.k), Scalar(0));
  return s;
}

}  // namespace anisospec

#endif  // ANISOSPEC_QUADRIC_HPP
