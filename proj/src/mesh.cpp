#include "anisospec/mesh.hpp"

#include "anisospec/quadric.hpp"
#include "anisospec/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace anisospec {

const char* to_string(IssueKind k) {
  switch (k) {
    case IssueKind::IndexOutOfRange: return "index_out_of_range";
    case IssueKind::DegenerateTriangle: return "degenerate_triangle";
    case IssueKind::NonFiniteValue: return "non_finite_value";
    case IssueKind::SizeMismatch: return "size_mismatch";
    case IssueKind::Empty: return "empty_mesh";
  }
  return "unknown";
}

std::string ValidationReport::summary() const {
  if (issues.empty()) return "valid";
  std::ostringstream os;
  os << issues.size() << " issue(s)";
  const std::size_t shown = std::min<std::size_t>(issues.size(), 5);
  for (std::size_t i = 0; i < shown; ++i) {
    os << "; " << to_string(issues[i].kind) << " [" << issues[i].index << "]: " << issues[i].message;
  }
  if (shown < issues.size()) os << "; ...";
  return os.str();
}

double bounding_box_diagonal(const TensorMesh& mesh) {
  if (mesh.vertices.empty()) return 0.0;
  Point2 lo = mesh.vertices.front();
  Point2 hi = lo;
  for (const auto& p : mesh.vertices) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

ValidationReport validate_mesh(TensorMesh& mesh) {
  ValidationReport report;
  auto add = [&](IssueKind kind, std::int64_t index, std::string msg) {
    report.issues.push_back({kind, index, std::move(msg)});
  };
  if (mesh.triangles.empty() || mesh.vertices.empty()) add(IssueKind::Empty, -1, "mesh has no triangles");
  if (mesh.tensors.size() != mesh.vertices.size()) {
    add(IssueKind::SizeMismatch, -1,
        "tensor count " + std::to_string(mesh.tensors.size()) + " != vertex count " +
            std::to_string(mesh.vertices.size()));
  }
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    if (!mesh.vertices[i].allFinite()) add(IssueKind::NonFiniteValue, static_cast<std::int64_t>(i), "vertex");
  }
  for (std::size_t i = 0; i < mesh.tensors.size(); ++i) {
    if (!mesh.tensors[i].finite()) add(IssueKind::NonFiniteValue, static_cast<std::int64_t>(i), "tensor");
  }
  const double diag = bounding_box_diagonal(mesh);
  const double area_tol = 1e-12 * diag * diag;
  const auto nv = static_cast<long>(mesh.vertices.size());
  std::vector<std::size_t> flip;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    if (std::any_of(tri.begin(), tri.end(), [&](int i) { return i < 0 || i >= nv; })) {
      add(IssueKind::IndexOutOfRange, static_cast<std::int64_t>(t), "vertex index out of range");
      continue;
    }
    const double a = signed_area<double>(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]);
    if (!std::isfinite(a)) continue;
    if (std::abs(a) <= area_tol) {
      add(IssueKind::DegenerateTriangle, static_cast<std::int64_t>(t), "zero signed area");
    } else if (a < 0) {
      flip.push_back(t);
    }
  }
  if (report.ok()) {
    for (auto t : flip) std::swap(mesh.triangles[t][1], mesh.triangles[t][2]);
    report.reoriented = static_cast<int>(flip.size());
  }
  return report;
}

void require_valid(TensorMesh& mesh) {
  const auto report = validate_mesh(mesh);
  if (!report.ok()) throw MeshError("invalid mesh: " + report.summary());
}

TensorFieldCoeffs<double> tensor_field_coeffs(const TensorMesh& mesh, std::size_t triangle_index) {
  const auto& tri = mesh.triangles.at(triangle_index);
  return tensor_field_coeffs<double>(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]],
                                     mesh.tensors[tri[0]], mesh.tensors[tri[1]], mesh.tensors[tri[2]]);
}

double triangle_area(const TensorMesh& mesh, std::size_t triangle_index) {
  const auto c = mesh.corners(triangle_index);
  return std::abs(signed_area<double>(c[0], c[1], c[2]));
}

double mesh_area(const TensorMesh& mesh) {
  double sum = 0.0;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) sum += triangle_area(mesh, t);
  return sum;
}

Tensor2 tensor_from_eigen(double lambda, double mu, double phi) {
  const double mean = 0.5 * (lambda + mu);
  const double half = 0.5 * (lambda - mu);
  const double c2 = std::cos(2.0 * phi);
  const double s2 = std::sin(2.0 * phi);
  return {mean + half * c2, half * s2, mean - half * c2};
}

namespace {

std::vector<Triangle> grid_triangles(int n) {
  std::vector<Triangle> tris;
  tris.reserve(static_cast<std::size_t>(2 * (n - 1) * (n - 1)));
  auto id = [n](int i, int j) { return j * n + i; };
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) {
      tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return tris;
}

std::vector<Point2> grid_vertices(int n) {
  std::vector<Point2> v;
  v.reserve(static_cast<std::size_t>(n * n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) v.emplace_back(double(i) / (n - 1), double(j) / (n - 1));
  }
  return v;
}

}  // namespace

TensorMesh generate_synthetic(const SyntheticOptions& opts) {
  if (opts.grid_n < 2) throw MeshError("generate_synthetic: grid_n must be >= 2");
  TensorMesh mesh;
  mesh.vertices = grid_vertices(opts.grid_n);
  mesh.triangles = grid_triangles(opts.grid_n);
  const double lambda = opts.eigenvalues.lambda;
  const double mu = opts.eigenvalues.mu;
  const double target = anisotropy(tensor_from_eigen(lambda, mu, 0.0));
  Rng rng(mix_seed(opts.seed, 1));
  mesh.tensors.reserve(mesh.vertices.size());
  for (const auto& p : mesh.vertices) {
    const double base = 0.25 * std::numbers::pi * (p.x() + p.y());
    // Draws whose rounded anisotropy differs from the axis-aligned value are rejected, so the
    // vertex anisotropy is bitwise independent of the direction.
    Tensor2 t;
    for (int attempt = 0;; ++attempt) {
      double phi = base;
      if (opts.perturb_directions) {
        phi += opts.perturb_amplitude * rng.uniform(-0.5, 0.5) * std::numbers::pi;
      } else {
        phi += attempt * 1e-7;
      }
      t = tensor_from_eigen(lambda, mu, phi);
      if (anisotropy(t) == target) break;
      if (attempt > 100000) throw NumericalError("generate_synthetic: could not match vertex anisotropy");
    }
    mesh.tensors.push_back(t);
  }
  return mesh;
}

TensorMesh generate_random(int grid_n, std::uint64_t seed, double jitter, double range) {
  if (grid_n < 2) throw MeshError("generate_random: grid_n must be >= 2");
  TensorMesh mesh;
  mesh.vertices = grid_vertices(grid_n);
  mesh.triangles = grid_triangles(grid_n);
  Rng rng(mix_seed(seed, 2));
  const double h = 1.0 / (grid_n - 1);
  for (int j = 1; j + 1 < grid_n; ++j) {
    for (int i = 1; i + 1 < grid_n; ++i) {
      auto& p = mesh.vertices[static_cast<std::size_t>(j * grid_n + i)];
      p.x() += jitter * h * rng.uniform(-0.5, 0.5);
      p.y() += jitter * h * rng.uniform(-0.5, 0.5);
    }
  }
  mesh.tensors.reserve(mesh.vertices.size());
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const double e = rng.uniform(-range, range);
    const double f = rng.uniform(-range, range);
    const double g = rng.uniform(-range, range);
    mesh.tensors.push_back({e, f, g});
  }
  return mesh;
}

}  // namespace anisospec
