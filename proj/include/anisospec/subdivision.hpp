#ifndef ANISOSPEC_SUBDIVISION_HPP
#define ANISOSPEC_SUBDIVISION_HPP

#include "anisospec/mesh.hpp"
#include "anisospec/quadric.hpp"

#include <array>
#include <optional>
#include <vector>

namespace anisospec {

enum class MonotoneCase { MinAtVertex, Generic, DegenerateStrip };

const char* to_string(MonotoneCase c);

/// Sub-triangle on which the anisotropy attains its minimum at a vertex.
///
/// All per-vertex arrays are sorted by ascending value. For elliptic parents `normalized`
/// holds the corners in the circular-contour frame and `values` are their squared radii;
/// for strips `normalized` repeats the original corners.
struct MonotoneTriangle {
  int parent = -1;
  std::array<int, 3> vertices{};  ///< subdivided-mesh vertex ids (local ids for subdivide_triangle)
  std::array<Point2, 3> corners;
  std::array<Point2, 3> normalized;
  std::array<double, 3> values{};
  MonotoneCase kind = MonotoneCase::Generic;
  double area_factor = 1.0;
  double area = 0.0;  ///< original-coordinate area
};

/// Per-parent anisotropy model shared by all of its sub-triangles.
struct ParentModel {
  TensorFieldCoeffs<double> field;
  Quadricd quadric;
  std::optional<Frame> frame;  ///< present for elliptic quadrics
  StripModel<double> strip;    ///< meaningful for degenerate quadrics
  bool interior_minimum = false;

  double value(const Point2& p) const { return frame ? frame->value(p) : strip(p); }
};

enum class VertexOrigin { Original, EdgeMinimum, InteriorMinimum };

struct SubdividedVertexInfo {
  VertexOrigin origin = VertexOrigin::Original;
  int parent_triangle = -1;      ///< for interior minima
  std::array<int, 2> edge{-1, -1};  ///< for edge minima, lower index first
};

/// Welded monotone subdivision of a tensor mesh.
struct SubdividedMesh {
  TensorMesh mesh;                          ///< original vertices first, then inserted points
  std::vector<double> values;               ///< anisotropy per vertex
  std::vector<SubdividedVertexInfo> vertex_info;
  std::vector<int> provenance;              ///< parent triangle per sub-triangle
  std::vector<MonotoneTriangle> monotone;   ///< parallel to mesh.triangles
  std::vector<ParentModel> parents;         ///< per original triangle
  std::size_t original_vertices = 0;
};

struct EdgeMinimum {
  Point2 point;
  double value;
  double t;  ///< parameter along the edge from its first endpoint
};

/// Interior minimiser of q restricted to the segment p -> r, if it lies strictly inside.
std::optional<EdgeMinimum> edge_minimum(const Quadricd& q, const Point2& p, const Point2& r);

/// Same for the anisotropy of the linearly interpolated tensors ta -> tb on the segment.
std::optional<EdgeMinimum> edge_minimum(const Tensor2& ta, const Tensor2& tb, const Point2& p, const Point2& r);

/// Local vertex ids used by subdivide_triangle: 0..2 corners, 3 + k the minimum on edge
/// (k, k+1 mod 3), 6 the interior critical point.
inline constexpr int kLocalCritical = 6;

/// Splits one triangle into monotone pieces given the quadric and (for elliptic quadrics)
/// its frame. Corner order is preserved; outputs are counter-clockwise.
std::vector<MonotoneTriangle> subdivide_triangle(const Quadricd& q, const std::optional<Frame>& frame,
                                                 const std::array<Point2, 3>& corners);

ParentModel make_parent_model(const TensorMesh& mesh, std::size_t triangle_index);

/// Subdivides every triangle (in parallel) and welds inserted edge points by canonical edge id.
/// The input must be valid and counter-clockwise (see validate_mesh).
SubdividedMesh subdivide_mesh(const TensorMesh& mesh, int workers = 1);

/// Tag for per-triangle failures, carrying the parent triangle index.
class TriangleError : public NumericalError {
 public:
  TriangleError(int triangle, const std::string& what)
      : NumericalError("triangle " + std::to_string(triangle) + ": " + what), triangle_(triangle) {}
  int triangle() const { return triangle_; }

 private:
  int triangle_;
};

}  // namespace anisospec

#endif  // ANISOSPEC_SUBDIVISION_HPP
