#ifndef ANISOSPEC_MESH_HPP
#define ANISOSPEC_MESH_HPP

#include "anisospec/tensor.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace anisospec {

using Triangle = std::array<int, 3>;

/// Triangulated 2D domain with one symmetric tensor per vertex.
struct TensorMesh {
  std::vector<Point2> vertices;
  std::vector<Triangle> triangles;
  std::vector<Tensor2> tensors;

  std::size_t num_vertices() const { return vertices.size(); }
  std::size_t num_triangles() const { return triangles.size(); }

  std::array<Point2, 3> corners(std::size_t t) const {
    const auto& tri = triangles[t];
    return {vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]};
  }
};

/// Raised for unreadable or invalid input; the CLI maps it to exit code 1.
class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class IssueKind { IndexOutOfRange, DegenerateTriangle, NonFiniteValue, SizeMismatch, Empty };

const char* to_string(IssueKind k);

struct ValidationIssue {
  IssueKind kind;
  std::int64_t index;  ///< triangle or vertex index, -1 for mesh-level issues
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  int reoriented = 0;  ///< triangles flipped to counter-clockwise order

  bool ok() const { return issues.empty(); }
  std::string summary() const;
};

/// Checks indices, areas and finiteness; on success reorients every triangle counter-clockwise.
ValidationReport validate_mesh(TensorMesh& mesh);

/// Throws MeshError carrying the report summary when the mesh is invalid.
void require_valid(TensorMesh& mesh);

/// Per-component linear coefficients of the tensor field on one triangle.
TensorFieldCoeffs<double> tensor_field_coeffs(const TensorMesh& mesh, std::size_t triangle_index);

double triangle_area(const TensorMesh& mesh, std::size_t triangle_index);

/// Shoelace area of the whole mesh.
double mesh_area(const TensorMesh& mesh);

double bounding_box_diagonal(const TensorMesh& mesh);

// Synthetic data ---------------------------------------------------------------

struct EigenvalueProfile {
  double lambda = 2.0;
  double mu = 1.0;
};

struct SyntheticOptions {
  int grid_n = 5;
  std::uint64_t seed = 0;
  EigenvalueProfile eigenvalues;
  bool perturb_directions = false;
  /// Direction perturbation is uniform in [-amplitude * pi/2, amplitude * pi/2].
  double perturb_amplitude = 1.0;
};

/// Regular grid on [0,1]^2, each quad split along the same diagonal, constant eigenvalues.
/// With perturb_directions the eigenvector angle at each vertex is randomised; vertex
/// anisotropy stays bitwise identical to the unperturbed value.
TensorMesh generate_synthetic(const SyntheticOptions& opts);

inline TensorMesh generate_synthetic(int grid_n, std::uint64_t seed, EigenvalueProfile profile,
                                     bool perturb_directions) {
  return generate_synthetic(SyntheticOptions{grid_n, seed, profile, perturb_directions, 1.0});
}

/// Grid mesh with jittered interior vertices and tensor components uniform in [-range, range].
TensorMesh generate_random(int grid_n, std::uint64_t seed, double jitter = 0.25, double range = 1.0);

/// Tensor with the given eigenvalues whose major eigenvector makes angle phi with the x axis.
Tensor2 tensor_from_eigen(double lambda, double mu, double phi);

}  // namespace anisospec

#endif  // ANISOSPEC_MESH_HPP
