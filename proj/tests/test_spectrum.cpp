#include "doctest.h"

#include "oracles.hpp"

#include "anisospec/area.hpp"
#include "anisospec/spectrum.hpp"

#include <numbers>

using namespace anisospec;

namespace {

TensorMesh constant_mesh(const Tensor2& t) {
  auto m = generate_synthetic(4, 0, {}, false);
  for (auto& x : m.tensors) x = t;
  return m;
}

// sqanis = x^2 + y^2 from e = x, f = y / 2, g = 0
TensorMesh bowl_triangle(const std::array<Point2, 3>& c) {
  TensorMesh m;
  m.vertices = {c[0], c[1], c[2]};
  m.triangles = {{0, 1, 2}};
  for (const auto& p : c) m.tensors.push_back({p.x(), p.y() / 2, 0});
  return m;
}

}  // namespace

TEST_CASE("parse_modes") {
  CHECK(parse_modes("a,b,c") == std::vector<Mode>{Mode::LinearOriginal, Mode::LinearMonotone, Mode::QuadraticExact});
  CHECK(parse_modes("c,a") == std::vector<Mode>{Mode::LinearOriginal, Mode::QuadraticExact});
  CHECK(parse_modes("c, c") == std::vector<Mode>{Mode::QuadraticExact});
  CHECK_THROWS_AS(parse_modes("d"), std::invalid_argument);
  CHECK_THROWS_AS(parse_modes(""), std::invalid_argument);
}

TEST_CASE("uniform thresholds") {
  const auto t = uniform_thresholds(2.0, 4);
  CHECK(t == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
  CHECK(uniform_thresholds(0.0, 2).back() == 1.0);
  CHECK_THROWS_AS(uniform_thresholds(1.0, 1), std::invalid_argument);
  // doubling the bin count reproduces every shared threshold bitwise
  const double top = 7.123456789;
  const auto a = uniform_thresholds(top, 100), b = uniform_thresholds(top, 200);
  for (std::size_t j = 0; j < a.size(); ++j) CHECK(a[j] == b[2 * j]);
}

TEST_CASE("constant field gives a step in every mode") {
  const Tensor2 t{2, 0.5, 1};
  const SpectrumSource src(constant_mesh(t), 2);
  std::vector<ContourSpectrum> all;
  for (Mode m : kAllModes) {
    const auto s = cumulative_histogram(src, m, 16);
    CHECK(s.bin_values.back() == anisotropy(t));
    for (std::size_t j = 0; j + 1 < s.cumulative.size(); ++j) CHECK(s.cumulative[j] == 0.0);
    CHECK(s.cumulative.back() == doctest::Approx(1.0).epsilon(1e-14));
    int nonzero = 0;
    for (double d : s.density) nonzero += d != 0.0;
    CHECK(nonzero == 1);
    CHECK(s.density.back() > 0);
    all.push_back(s);
  }
  CHECK(all[0].cumulative == all[1].cumulative);
  CHECK(all[1].cumulative == all[2].cumulative);
}

TEST_CASE("single bowl triangle: every bin against Monte Carlo") {
  const std::array<Point2, 3> c{Point2(0, 0), Point2(1, 0), Point2(0, 2)};
  const SpectrumSource src(bowl_triangle(c));
  const auto s = cumulative_histogram(src, Mode::QuadraticExact, 16);
  int outside = 0;
  for (std::size_t j = 0; j < s.bin_values.size(); ++j) {
    const double v = s.bin_values[j];
    const auto mc = mc_sublevel_area([](const Point2& p) { return p.squaredNorm(); }, c, v, 400000, 500 + j);
    const double err = std::abs(s.cumulative[j] - mc.estimate);
    if (err > 3 * std::max(mc.std_error, 1e-12)) ++outside;
    CHECK(err <= 5 * std::max(mc.std_error, 1e-12));
  }
  CHECK(outside <= 2);
}

TEST_CASE("pure sector triangle has a flat density") {
  // right angle at (1, 0): every threshold up to 1 stays in the sector branch
  const std::array<Point2, 3> c{Point2(0, 0), Point2(1, 0), Point2(1, 1)};
  const SpectrumSource src(bowl_triangle(c));
  const auto s = cumulative_histogram(src, Mode::QuadraticExact, 8);
  REQUIRE(s.bin_values.back() == doctest::Approx(2.0));
  for (std::size_t j = 0; j < 4; ++j) CHECK(s.density[j] == doctest::Approx(sector_density(std::numbers::pi / 4)).epsilon(1e-12));
}

TEST_CASE("density telescopes to the cumulative range") {
  const SpectrumSource src(generate_random(9, 3));
  for (Mode m : kAllModes) {
    const auto s = cumulative_histogram(src, m, 64);
    double sum = 0;
    for (std::size_t j = 0; j < s.density.size(); ++j) sum += s.density[j] * (s.bin_values[j + 1] - s.bin_values[j]);
    CHECK(sum == doctest::Approx(s.cumulative.back() - s.cumulative.front()).epsilon(1e-12));
  }
}

TEST_CASE("conservation, monotonicity and bias on random meshes") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SpectrumSource src(generate_random(9, seed));
    const auto r = compare_modes(src, 64);
    for (const auto& s : r.spectra) {
      CHECK(s.cumulative.back() == doctest::Approx(src.total_area()).epsilon(1e-7));
      for (std::size_t j = 1; j < s.cumulative.size(); ++j) CHECK(s.cumulative[j] >= s.cumulative[j - 1]);
      CHECK(s.max_correction <= 1e-9 * s.total_area);
    }
    CHECK(r.max_b_over_c <= 1e-9 * src.total_area());
    CHECK(r.density_means[1] >= r.density_means[2] - 1e-12);
  }
}

TEST_CASE("quadratic mode has more mass near zero than the input-mesh interpolant") {
  const SpectrumSource src(generate_random(9, 11));
  const auto r = compare_modes(src, 32);
  CHECK(r.spectra[2].cumulative[1] > r.spectra[0].cumulative[1]);
}

TEST_CASE("perturbed ensemble members share the mode [a] spectrum bitwise") {
  const auto base = cumulative_histogram(generate_synthetic(5, 1, {}, true), Mode::LinearOriginal, 32);
  for (std::uint64_t seed : {2u, 3u, 4u}) {
    const auto other = cumulative_histogram(generate_synthetic(5, seed, {}, true), Mode::LinearOriginal, 32);
    CHECK(other.cumulative == base.cumulative);
    CHECK(other.bin_values == base.bin_values);
  }
}

TEST_CASE("worker count does not change the spectrum") {
  const auto mesh = generate_random(17, 8);
  for (Mode m : kAllModes) {
    const auto a = cumulative_histogram(mesh, m, 128, 1);
    const auto b = cumulative_histogram(mesh, m, 128, 4);
    CHECK(a.cumulative == b.cumulative);
    CHECK(a.density == b.density);
  }
}

TEST_CASE("refining the bins keeps shared thresholds bitwise") {
  const SpectrumSource src(generate_random(9, 6));
  for (Mode m : kAllModes) {
    const auto a = cumulative_histogram(src, m, 50);
    const auto b = cumulative_histogram(src, m, 100);
    for (std::size_t j = 0; j < a.cumulative.size(); ++j) CHECK(a.cumulative[j] == b.cumulative[2 * j]);
  }
}

TEST_CASE("density rejects zero-width bins") {
  ContourSpectrum s;
  s.bin_values = {0.0, 1.0, 1.0};
  s.cumulative = {0.0, 0.5, 1.0};
  CHECK_THROWS_AS(density(s), std::invalid_argument);
}
