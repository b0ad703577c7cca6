#include "doctest.h"

#include "oracles.hpp"

#include "anisospec/area.hpp"

#include <numbers>

using namespace anisospec;

namespace {

const Quadricd kBowl = quadric_from_coefficients(1.0, 0.0, 1.0, 0.0, 0.0, 0.0);
const auto kBowlEval = [](const Point2& p) { return p.squaredNorm(); };

MonotoneTriangle single_piece(const std::array<Point2, 3>& c) {
  const auto pieces = subdivide_triangle(kBowl, normalize(kBowl), c);
  REQUIRE(pieces.size() == 1);
  return pieces[0];
}

// MonotoneTriangle with the bowl minimum at its first corner, built by hand.
MonotoneTriangle sector_triangle(const Point2& b, const Point2& c) {
  MonotoneTriangle mt;
  mt.corners = {Point2(0, 0), b, c};
  mt.normalized = mt.corners;
  mt.values = {0.0, b.squaredNorm(), c.squaredNorm()};
  if (mt.values[1] > mt.values[2]) {
    std::swap(mt.corners[1], mt.corners[2]);
    std::swap(mt.normalized[1], mt.normalized[2]);
    std::swap(mt.values[1], mt.values[2]);
  }
  mt.kind = MonotoneCase::MinAtVertex;
  mt.area = oracle::shoelace(mt.corners);
  return mt;
}

bool within_sigma(double exact, const McEstimate& mc, double k) {
  return std::abs(exact - mc.estimate) <= k * std::max(mc.std_error, 1e-12);
}

}  // namespace

TEST_CASE("sector_area and sector_density") {
  CHECK(sector_area(std::numbers::pi / 2, 1.0) == doctest::Approx(std::numbers::pi / 4));
  CHECK(sector_area(1.3, 0.0) == 0.0);
  CHECK(sector_area(1.0, 0.3) == doctest::Approx(0.15));
  CHECK(sector_density(std::numbers::pi / 2) == doctest::Approx(std::numbers::pi / 4));
  CHECK(sector_density(1e-300) == doctest::Approx(0.0));
}

TEST_CASE("case1_area seams") {
  // right angle at (1, 0): the far edge is monotone in the radius
  const auto mt = sector_triangle(Point2(1, 0), Point2(1, 1));
  CHECK(case1_area(mt, 2.0) == doctest::Approx(0.5));
  CHECK(case1_area(mt, 10.0) == 0.5);
  CHECK(case1_area(mt, 0.0) == 0.0);
  const double theta = std::numbers::pi / 4;
  CHECK(case1_area(mt, 1.0) == doctest::Approx(sector_area(theta, 1.0)).epsilon(1e-15));
  CHECK(case1_area(mt, 1.0 + 1e-12) == doctest::Approx(sector_area(theta, 1.0)).epsilon(1e-9));
}

TEST_CASE("case1_area against Monte Carlo") {
  const auto mt = sector_triangle(Point2(1, 0), Point2(0, 2));
  const auto mc = mc_sublevel_area(kBowlEval, mt.corners, 1.5, 2000000, 42);
  CHECK(within_sigma(case1_area(mt, 1.5), mc, 3));
}

TEST_CASE("case2_area limits and Monte Carlo") {
  const std::array<Point2, 3> tri{Point2(1, 0.2), Point2(2, 0.3), Point2(1.4, 1.5)};
  const auto pieces = subdivide_triangle(kBowl, normalize(kBowl), tri);
  double total = 0.0;
  for (const auto& mt : pieces) {
    CHECK(mt.kind == MonotoneCase::Generic);
    CHECK(case2_area(mt, mt.values[0] - 1e-9) == 0.0);
    CHECK(case2_area(mt, mt.values[2]) == mt.area);
    total += case2_area(mt, 2.0);
    // the two decompositions agree
    for (double v = mt.values[0]; v <= mt.values[2]; v += 0.05) {
      CHECK(case2_area_normalized(mt.normalized[0], mt.normalized[1], mt.normalized[2], v) ==
            doctest::Approx(case2_area_fan(mt.normalized[0], mt.normalized[1], mt.normalized[2], v)).epsilon(1e-10).scale(1));
    }
  }
  const auto mc = mc_sublevel_area(kBowlEval, tri, 2.0, 2000000, 43);
  CHECK(within_sigma(total, mc, 3));
  const auto single = single_piece({Point2(1, 0), Point2(2, 0), Point2(1, 1)});
  const auto mc1 = mc_sublevel_area(kBowlEval, single.corners, 2.5, 2000000, 45);
  CHECK(within_sigma(case2_area(single, 2.5), mc1, 3));
}

TEST_CASE("degenerate_strip_area analytic") {
  const auto q = quadric_from_coefficients(1.0, 0.0, 0.0, 0.0, 0.0, 0.0);
  const std::array<Point2, 3> c{Point2(0, 0), Point2(1, 0), Point2(1, 1)};
  for (double v : {0.0, 0.1, 0.25, 0.5, 0.9, 1.0}) CHECK(degenerate_strip_area(q, c, v) == doctest::Approx(v / 2).epsilon(1e-12));
  CHECK(degenerate_strip_area(q, c, 3.0) == doctest::Approx(0.5));
}

TEST_CASE("degenerate_strip_area against Monte Carlo") {
  Rng rng(5);
  for (int i = 0; i < 5; ++i) {
    const LinearCoeffs<double> u{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const double k = rng.uniform(-1, 1);
    const LinearCoeffs<double> f{k * u.sx, k * u.sy, rng.uniform(-1, 1)};
    const TensorFieldCoeffs<double> field{u, f, LinearCoeffs<double>{0, 0, 0}};
    const auto q = build_quadric(field);
    const std::array<Point2, 3> c{Point2(0, 0), Point2(1, 0.1), Point2(0.2, 0.9)};
    const double v = 0.5 * (q(c[0]) + q(c[1]));
    const auto mc = mc_sublevel_area([&](const Point2& p) { return anisotropy(field(p)); }, c, v, 400000, 100 + i);
    CHECK(within_sigma(degenerate_strip_area(q, c, v), mc, 4));
  }
}

TEST_CASE("linear_sublevel_area") {
  const std::array<Point2, 3> c{Point2(0, 0), Point2(1, 0), Point2(0, 1)};
  const LinearCoeffs<double> sx{1, 0, 0};
  CHECK(linear_sublevel_area(sx, c, 0.5) == doctest::Approx(0.375));
  CHECK(linear_sublevel_area(sx, c, -0.1) == 0.0);
  CHECK(linear_sublevel_area(sx, c, 1.0) == 0.5);
  const LinearCoeffs<double> s{0.3, -0.7, 0.2};
  const double median = s(c[0]);
  const auto mc = mc_sublevel_area(s, c, median, 2000000, 44);
  CHECK(within_sigma(linear_sublevel_area(s, c, median), mc, 3));
}

TEST_CASE("mc_sublevel_area basics") {
  const std::array<Point2, 3> c{Point2(0, 0), Point2(1, 0), Point2(0, 1)};
  CHECK(mc_sublevel_area(kBowlEval, c, 5.0, 1000, 1).estimate == 0.5);
  CHECK(mc_sublevel_area(kBowlEval, c, -1.0, 1000, 1).estimate == 0.0);
  // quarter disc of squared radius 0.8 minus the part beyond the hypotenuse
  const auto a = mc_sublevel_area(kBowlEval, c, 0.8, 200000, 1);
  const auto b = mc_sublevel_area(kBowlEval, c, 0.8, 200000, 2);
  CHECK(std::abs(a.estimate - b.estimate) <= 6 * std::hypot(a.std_error, b.std_error));
  CHECK(a.estimate < std::numbers::pi * 0.8 / 4);
  CHECK(a.estimate < 0.5);
  CHECK(a.std_error > 0);
}

TEST_CASE("kernels are continuous and non-decreasing in v") {
  Rng rng(91);
  for (int i = 0; i < 200; ++i) {
    const Point2 p1(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const Point2 p2(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const Point2 p3(rng.uniform(-1, 1), rng.uniform(-1, 1));
    if (std::abs(signed_area(p1, p2, p3)) < 1e-3) continue;
    const Tensor2 t1{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const Tensor2 t2{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const Tensor2 t3{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    TensorMesh m;
    m.vertices = {p1, p2, p3};
    m.triangles = {{0, 1, 2}};
    m.tensors = {t1, t2, t3};
    require_valid(m);
    const auto sub = subdivide_mesh(m);
    const auto& parent = sub.parents[0];
    for (const auto& mt : sub.monotone) {
      const double lo = mt.values[0], hi = mt.values[2];
      const double top = parent.value(mt.corners[0]) > hi ? parent.value(mt.corners[0]) : hi;
      double prev = 0.0;
      const int steps = 400;
      // the density is bounded by the sector density at the widest angle
      const double lipschitz = std::numbers::pi / (2 * mt.area_factor) + 1.0;
      for (int s = 0; s <= steps; ++s) {
        const double v = lo + (top - lo) * 1.05 * s / steps;
        const double a = sublevel_area(mt, parent, v);
        CHECK(a >= prev - 1e-12 * mt.area);
        if (mt.kind != MonotoneCase::DegenerateStrip && s > 0) {
          CHECK(a - prev <= lipschitz * (top - lo) * 1.05 / steps + 1e-12);
        }
        prev = a;
      }
      CHECK(prev == doctest::Approx(mt.area).epsilon(1e-12));
    }
  }
}

TEST_CASE("sublevel_area against Monte Carlo on random parents") {
  Rng rng(123);
  int cases = 0, outside = 0;
  for (int i = 0; i < 60; ++i) {
    TensorMesh m;
    m.vertices = {Point2(0, 0), Point2(1, rng.uniform(-0.3, 0.3)), Point2(rng.uniform(-0.3, 0.3), 1)};
    m.triangles = {{0, 1, 2}};
    for (int k = 0; k < 3; ++k) m.tensors.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
    require_valid(m);
    const auto sub = subdivide_mesh(m);
    const auto& parent = sub.parents[0];
    const auto f = oracle::field_evaluator(parent);
    for (const auto& mt : sub.monotone) {
      const double v = rng.uniform(mt.values[0], mt.values[2]);
      const double exact = sublevel_area(mt, parent, v);
      const auto mc = mc_sublevel_area(f, mt.corners, v, 200000, 1000 + cases);
      ++cases;
      if (!within_sigma(exact, mc, 3)) ++outside;
      CHECK(within_sigma(exact, mc, 5));
    }
  }
  CHECK(outside <= 0.03 * cases + 2);
}
