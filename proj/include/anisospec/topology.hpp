#ifndef ANISOSPEC_TOPOLOGY_HPP
#define ANISOSPEC_TOPOLOGY_HPP

#include "anisospec/mesh.hpp"
#include "anisospec/spectrum.hpp"
#include "anisospec/subdivision.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace anisospec {

// Merge trees ------------------------------------------------------------------

enum class NodeKind { Minimum, Maximum, Saddle, Root };

const char* to_string(NodeKind k);

struct TreeNode {
  int id = 0;
  int vertex = -1;
  double value = 0.0;
  Point2 position{0, 0};
  NodeKind kind = NodeKind::Minimum;
  bool is_degenerate_point = false;
  std::optional<int> parent_triangle;  ///< set for minima inserted inside an input triangle
};

/// Join tree (or split tree); edges are (child, parent) pairs directed along the sweep.
struct JoinTree {
  std::vector<TreeNode> nodes;
  std::vector<std::pair<int, int>> edges;

  int root() const;
  std::size_t count(NodeKind k) const;
  std::size_t degenerate_leaves() const;
};

/// PL sweep over vertices sorted by (value, index) with union-find. A k-way merge at one vertex
/// is emitted as k - 1 chained binary saddles. Minima with value <= zero_tolerance are flagged.
/// Throws MeshError if an edge is shared by more than two triangles.
JoinTree merge_tree(const std::vector<Point2>& vertices, const std::vector<Triangle>& triangles,
                    const std::vector<double>& values, bool split, double zero_tolerance,
                    const std::vector<std::optional<int>>& vertex_parent = {});

/// Default zero tolerance: 1e-7 of the maximum value.
double zero_tolerance(const std::vector<double>& values);

JoinTree join_tree(const SubdividedMesh& sub);
JoinTree split_tree(const SubdividedMesh& sub);
/// Mode [a] trees on the input triangulation.
JoinTree join_tree(const TensorMesh& mesh);
JoinTree split_tree(const TensorMesh& mesh);

/// Trees for one interpolation mode; [b] and [c] share the subdivided vertex set.
JoinTree join_tree(const SpectrumSource& src, Mode mode);
JoinTree split_tree(const SpectrumSource& src, Mode mode);

/// Same vertex set, kinds, edges and values within rel_tol.
bool equivalent_trees(const JoinTree& x, const JoinTree& y, double rel_tol = 1e-9);

// Contours ---------------------------------------------------------------------

struct ContourPolyline {
  std::vector<Point2> points;
  std::vector<int> segment_triangle;  ///< triangle (input or monotone) of each segment
  bool closed = false;
};

struct ContourSet {
  double isovalue = 0.0;
  Mode mode = Mode::QuadraticExact;
  std::vector<ContourPolyline> polylines;
};

struct ContourOptions {
  /// Maximum chordal deviation of arc polylines; <= 0 selects 1e-3 of the bounding-box diagonal.
  double chordal_tolerance = 0.0;
};

/// Marching triangles for [a]/[b]; exact circular arcs per monotone triangle for [c].
ContourSet extract_contours(const SpectrumSource& src, Mode mode, double isovalue, const ContourOptions& opts = {});

}  // namespace anisospec

#endif  // ANISOSPEC_TOPOLOGY_HPP
