#include "doctest.h"

#include "anisospec/random.hpp"
#include "anisospec/tensor.hpp"

#include <Eigen/Dense>

using namespace anisospec;

namespace {

// Direct 3x3 solve of [x y 1] * (sx, sy, sc)^T = s.
Eigen::Vector3d solve_affine(const Point2& p1, const Point2& p2, const Point2& p3, double s1, double s2, double s3) {
  Eigen::Matrix3d m;
  m << p1.x(), p1.y(), 1, p2.x(), p2.y(), 1, p3.x(), p3.y(), 1;
  return m.fullPivLu().solve(Eigen::Vector3d(s1, s2, s3));
}

double golden_min(const EdgeRestriction<double>& r) {
  double a = 0, b = 1;
  const double g = (std::sqrt(5.0) - 1) / 2;
  double c = b - g * (b - a), d = a + g * (b - a);
  for (int i = 0; i < 200; ++i) {
    if (r(c) < r(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - g * (b - a);
    d = a + g * (b - a);
  }
  return r((a + b) / 2);
}

}  // namespace

TEST_CASE("anisotropy of simple tensors") {
  CHECK(anisotropy(Tensor2{1, 0, 1}) == 0.0);
  CHECK(anisotropy(Tensor2{2, 0, 0}) == 4.0);
  CHECK(anisotropy(Tensor2{1, 1, 1}) == 4.0);
}

TEST_CASE("anisotropy equals squared eigenvalue gap") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Tensor2 t{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(t.matrix());
    const double gap = es.eigenvalues()(1) - es.eigenvalues()(0);
    CHECK(anisotropy(t) == doctest::Approx(gap * gap).epsilon(1e-12).scale(1));
  }
}

TEST_CASE("linear_coeffs examples") {
  const Point2 a(0, 0), b(1, 0), c(0, 1);
  auto k = linear_coeffs(a, b, c, 0.0, 1.0, 0.0);
  CHECK(k.sx == 1.0);
  CHECK(k.sy == 0.0);
  CHECK(k.sc == 0.0);
  k = linear_coeffs(a, b, c, 5.0, 5.0, 5.0);
  CHECK(k.sx == 0.0);
  CHECK(k.sy == 0.0);
  CHECK(k.sc == 5.0);

  const Point2 p1(0, 0), p2(2, 0), p3(0, 2);
  k = linear_coeffs(p1, p2, p3, 1.0, 3.0, 5.0);
  const auto ref = solve_affine(p1, p2, p3, 1, 3, 5);
  CHECK(k.sx == doctest::Approx(ref(0)).epsilon(1e-14));
  CHECK(k.sy == doctest::Approx(ref(1)).epsilon(1e-14));
  CHECK(k.sc == doctest::Approx(ref(2)).epsilon(1e-14));
  CHECK(k.sx == doctest::Approx(1.0));
  CHECK(k.sy == doctest::Approx(2.0));
  CHECK(k.sc == doctest::Approx(1.0));
}

TEST_CASE("linear_coeffs matches the 3x3 solve and reproduces samples") {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const Point2 p1(rng.uniform(-3, 3), rng.uniform(-3, 3));
    const Point2 p2(rng.uniform(-3, 3), rng.uniform(-3, 3));
    const Point2 p3(rng.uniform(-3, 3), rng.uniform(-3, 3));
    if (std::abs(signed_area(p1, p2, p3)) < 1e-2) continue;
    const double s1 = rng.uniform(-1, 1), s2 = rng.uniform(-1, 1), s3 = rng.uniform(-1, 1);
    const auto k = linear_coeffs(p1, p2, p3, s1, s2, s3);
    const auto ref = solve_affine(p1, p2, p3, s1, s2, s3);
    CHECK(std::abs(k.sx - ref(0)) < 1e-9);
    CHECK(std::abs(k.sy - ref(1)) < 1e-9);
    CHECK(std::abs(k.sc - ref(2)) < 1e-9);
    CHECK(std::abs(k(p1) - s1) < 1e-10);
    CHECK(std::abs(k(p2) - s2) < 1e-10);
    CHECK(std::abs(k(p3) - s3) < 1e-10);
  }
}

TEST_CASE("linear_coeffs rejects collinear points") {
  CHECK_THROWS_AS(linear_coeffs(Point2(0, 0), Point2(1, 0), Point2(2, 0), 1.0, 2.0, 3.0), DegenerateTriangleError);
}

TEST_CASE("tensor field at the barycenter is the vertex average") {
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    const Point2 p1(0, 0), p2(1 + rng.uniform(), rng.uniform()), p3(rng.uniform(), 1 + rng.uniform());
    const Tensor2 t1{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const Tensor2 t2{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const Tensor2 t3{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const auto field = tensor_field_coeffs(p1, p2, p3, t1, t2, t3);
    const auto mid = field(Point2((p1 + p2 + p3) / 3));
    CHECK(mid.e == doctest::Approx((t1.e + t2.e + t3.e) / 3).epsilon(1e-12).scale(1));
    CHECK(mid.f == doctest::Approx((t1.f + t2.f + t3.f) / 3).epsilon(1e-12).scale(1));
    CHECK(mid.g == doctest::Approx((t1.g + t2.g + t3.g) / 3).epsilon(1e-12).scale(1));
  }
}

TEST_CASE("edge restriction minimum against golden-section search") {
  Rng rng(21);
  int interior = 0;
  for (int i = 0; i < 500; ++i) {
    const Tensor2 a{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const Tensor2 b{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const EdgeRestriction<double> r(a, b);
    CHECK(r(0) == doctest::Approx(anisotropy(a)).epsilon(1e-14).scale(1));
    CHECK(r(1) == doctest::Approx(anisotropy(b)).epsilon(1e-12).scale(1));
    CHECK(r(0.3) == doctest::Approx(anisotropy(lerp(a, b, 0.3))).epsilon(1e-12).scale(1));
    const double t = r.argmin();
    if (t > 0 && t < 1) {
      ++interior;
      CHECK(std::abs(r.min_value() - golden_min(r)) < 1e-8);
      CHECK(std::abs(r.min_value() - r(t)) < 1e-12);
    }
  }
  CHECK(interior > 50);
}
