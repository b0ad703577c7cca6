#include "anisospec/topology.hpp"

#include "anisospec/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <tuple>

namespace anisospec {

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Minimum: return "minimum";
    case NodeKind::Maximum: return "maximum";
    case NodeKind::Saddle: return "saddle";
    case NodeKind::Root: return "root";
  }
  return "?";
}

int JoinTree::root() const {
  for (const auto& n : nodes) {
    if (n.kind == NodeKind::Root) return n.id;
  }
  return -1;
}

std::size_t JoinTree::count(NodeKind k) const {
  return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [k](const TreeNode& n) { return n.kind == k; }));
}

std::size_t JoinTree::degenerate_leaves() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.is_degenerate_point; }));
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  int unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[b] = a;
    return a;
  }
};

std::vector<std::vector<int>> vertex_neighbours(std::size_t n, const std::vector<Triangle>& triangles) {
  std::map<std::pair<int, int>, int> edge_count;
  std::vector<std::vector<int>> adj(n);
  for (const auto& t : triangles) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n) {
        throw MeshError("merge tree: vertex index out of range");
      }
      const auto key = std::minmax(a, b);
      if (++edge_count[key] > 2) {
        throw MeshError("merge tree: non-conforming mesh, edge (" + std::to_string(key.first) + "," +
                        std::to_string(key.second) + ") shared by more than two triangles");
      }
      if (edge_count[key] == 1) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    }
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

}  // namespace

double zero_tolerance(const std::vector<double>& values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return 1e-7 * m;
}

JoinTree merge_tree(const std::vector<Point2>& vertices, const std::vector<Triangle>& triangles,
                    const std::vector<double>& values, bool split, double zero_tol,
                    const std::vector<std::optional<int>>& vertex_parent) {
  const std::size_t n = vertices.size();
  if (values.size() != n) throw MeshError("merge tree: value count does not match vertex count");
  JoinTree tree;
  if (n == 0) return tree;
  const auto adj = vertex_neighbours(n, triangles);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const double vx = split ? -values[x] : values[x];
    const double vy = split ? -values[y] : values[y];
    return vx < vy || (vx == vy && x < y);
  });

  UnionFind uf(n);
  std::vector<char> done(n, 0);
  std::vector<int> head(n, -1);
  auto add_node = [&](int v, NodeKind kind) {
    TreeNode node;
    node.id = static_cast<int>(tree.nodes.size());
    node.vertex = v;
    node.value = values[v];
    node.position = vertices[v];
    node.kind = kind;
    if (kind == NodeKind::Minimum) {
      node.is_degenerate_point = values[v] <= zero_tol;
      if (v < static_cast<int>(vertex_parent.size())) node.parent_triangle = vertex_parent[v];
    }
    tree.nodes.push_back(node);
    return node.id;
  };

  for (int v : order) {
    std::vector<int> comps;
    for (int u : adj[v]) {
      if (done[u]) comps.push_back(uf.find(u));
    }
    std::sort(comps.begin(), comps.end());
    comps.erase(std::unique(comps.begin(), comps.end()), comps.end());
    std::sort(comps.begin(), comps.end(), [&](int x, int y) { return head[x] < head[y]; });
    done[v] = 1;
    if (comps.empty()) {
      head[v] = add_node(v, split ? NodeKind::Maximum : NodeKind::Minimum);
      continue;
    }
    int current = head[comps[0]];
    int rep = uf.unite(comps[0], v);
    for (std::size_t k = 1; k < comps.size(); ++k) {
      const int s = add_node(v, NodeKind::Saddle);
      tree.edges.emplace_back(current, s);
      tree.edges.emplace_back(head[comps[k]], s);
      current = s;
      rep = uf.unite(rep, comps[k]);
    }
    head[rep] = current;
  }

  // Close every component at its last swept vertex.
  std::vector<int> last_of(n, -1);
  for (int v : order) last_of[uf.find(v)] = v;
  std::vector<int> roots;
  for (int v : order) {
    const int r = uf.find(v);
    if (last_of[r] == v) roots.push_back(r);
  }
  for (int r : roots) {
    const int v = last_of[r];
    const int h = head[r];
    if (tree.nodes[h].vertex == v) {
      tree.nodes[h].kind = NodeKind::Root;
      tree.nodes[h].is_degenerate_point = false;
    } else {
      const int id = add_node(v, NodeKind::Root);
      tree.edges.emplace_back(h, id);
    }
  }
  return tree;
}

namespace {

std::vector<std::optional<int>> interior_parents(const SubdividedMesh& sub) {
  std::vector<std::optional<int>> out(sub.vertex_info.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (sub.vertex_info[i].origin == VertexOrigin::InteriorMinimum) out[i] = sub.vertex_info[i].parent_triangle;
  }
  return out;
}

std::vector<double> original_values(const TensorMesh& mesh) {
  std::vector<double> v(mesh.tensors.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = anisotropy(mesh.tensors[i]);
  return v;
}

}  // namespace

JoinTree join_tree(const SubdividedMesh& sub) {
  return merge_tree(sub.mesh.vertices, sub.mesh.triangles, sub.values, false, zero_tolerance(sub.values),
                    interior_parents(sub));
}

JoinTree split_tree(const SubdividedMesh& sub) {
  return merge_tree(sub.mesh.vertices, sub.mesh.triangles, sub.values, true, zero_tolerance(sub.values),
                    interior_parents(sub));
}

JoinTree join_tree(const TensorMesh& mesh) {
  const auto v = original_values(mesh);
  return merge_tree(mesh.vertices, mesh.triangles, v, false, zero_tolerance(v));
}

JoinTree split_tree(const TensorMesh& mesh) {
  const auto v = original_values(mesh);
  return merge_tree(mesh.vertices, mesh.triangles, v, true, zero_tolerance(v));
}

// On the monotone subdivision the quadratic field has no critical points off the vertex set, so
// its merge trees are those of the vertex values, which are exact field values.
JoinTree join_tree(const SpectrumSource& src, Mode mode) {
  return mode == Mode::LinearOriginal ? join_tree(src.mesh()) : join_tree(src.subdivided());
}

JoinTree split_tree(const SpectrumSource& src, Mode mode) {
  return mode == Mode::LinearOriginal ? split_tree(src.mesh()) : split_tree(src.subdivided());
}

bool equivalent_trees(const JoinTree& x, const JoinTree& y, double rel_tol) {
  if (x.nodes.size() != y.nodes.size() || x.edges.size() != y.edges.size()) return false;
  double scale = 0.0;
  for (const auto& n : x.nodes) scale = std::max(scale, std::abs(n.value));
  for (std::size_t i = 0; i < x.nodes.size(); ++i) {
    const auto& a = x.nodes[i];
    const auto& b = y.nodes[i];
    if (a.vertex != b.vertex || a.kind != b.kind || a.is_degenerate_point != b.is_degenerate_point) return false;
    if (std::abs(a.value - b.value) > rel_tol * std::max(scale, 1e-300)) return false;
  }
  auto ex = x.edges, ey = y.edges;
  std::sort(ex.begin(), ex.end());
  std::sort(ey.begin(), ey.end());
  return ex == ey;
}

// Contours -----------------------------------------------------------------------

namespace {

using Key = std::tuple<int, int, int>;  // lower vertex, upper vertex, crossing index on the edge

struct Crossing {
  Key key;
  Point2 point;
};

struct Piece {
  Key start, end;
  std::vector<Point2> points;
  int triangle = -1;
};

// Crossings of value == iso on the canonical edge lo -> hi of a linear field.
std::vector<Crossing> linear_crossings(int a, int b, const std::vector<Point2>& xy, const std::vector<double>& val,
                                       double iso) {
  const int lo = std::min(a, b), hi = std::max(a, b);
  const bool in_lo = val[lo] <= iso, in_hi = val[hi] <= iso;
  if (in_lo == in_hi) return {};
  const double t = std::clamp((iso - val[lo]) / (val[hi] - val[lo]), 0.0, 1.0);
  return {{Key{lo, hi, 0}, xy[lo] + t * (xy[hi] - xy[lo])}};
}

// Crossings of the quadratic anisotropy restricted to a canonical edge.
std::vector<Crossing> quadratic_crossings(int a, int b, const TensorMesh& m, const std::vector<double>& val, double iso) {
  const int lo = std::min(a, b), hi = std::max(a, b);
  const EdgeRestriction<double> r(m.tensors[lo], m.tensors[hi]);
  const bool in_lo = val[lo] <= iso, in_hi = val[hi] <= iso;
  const double qa = r.quadratic(), qb = r.linear(), qc = r.constant() - iso;
  std::vector<double> roots;
  const double scale = std::abs(qa) + std::abs(qb) + std::abs(qc);
  if (qa > 1e-14 * scale) {
    const double disc = qb * qb - 4 * qa * qc;
    if (disc > 0) {
      const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
      roots.push_back(q / qa);
      if (q != 0) roots.push_back(qc / q);
    }
  } else if (qb != 0) {
    roots.push_back(-qc / qb);
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> ts;
  if (in_lo != in_hi) {
    for (double t : roots) {
      if (t >= -1e-12 && t <= 1 + 1e-12) ts.push_back(std::clamp(t, 0.0, 1.0));
    }
    if (ts.size() != 1) {
      // Bisection on the sign change fixed by the endpoint classification.
      double x0 = 0, x1 = 1;
      for (int it = 0; it < 200 && x1 - x0 > 1e-16; ++it) {
        const double xm = 0.5 * (x0 + x1);
        ((r(xm) <= iso) == in_lo ? x0 : x1) = xm;
      }
      ts.assign(1, 0.5 * (x0 + x1));
    }
  } else {
    for (double t : roots) {
      if (t > 0 && t < 1) ts.push_back(t);
    }
    if (ts.size() != 2) ts.clear();
  }
  std::vector<Crossing> out;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    out.push_back({Key{lo, hi, static_cast<int>(k)}, m.vertices[lo] + ts[k] * (m.vertices[hi] - m.vertices[lo])});
  }
  return out;
}

// Signed-orientation-independent containment margin: min barycentric coordinate.
double containment(const std::array<Point2, 3>& c, const Point2& p) {
  const double area = cross2(Point2(c[1] - c[0]), Point2(c[2] - c[0]));
  if (area == 0) return -1;
  const double l0 = cross2(Point2(c[1] - p), Point2(c[2] - p)) / area;
  const double l1 = cross2(Point2(c[2] - p), Point2(c[0] - p)) / area;
  return std::min({l0, l1, 1 - l0 - l1});
}

std::vector<Piece> arc_pieces(const std::vector<Crossing>& cross, const MonotoneTriangle& mt, const Frame& frame,
                              double iso, double tol, int tri) {
  const std::size_t m = cross.size();
  if (m < 2 || m % 2) return {};
  struct Polar {
    double phi;
    std::size_t idx;
  };
  std::vector<Polar> polar(m);
  for (std::size_t k = 0; k < m; ++k) {
    const Point2 s = frame.to_normalized(cross[k].point);
    polar[k] = {std::atan2(s.y(), s.x()), k};
  }
  std::sort(polar.begin(), polar.end(), [](const Polar& x, const Polar& y) { return x.phi < y.phi; });
  const double radius = std::sqrt(iso);
  const double two_pi = 2 * std::numbers::pi;
  auto span = [&](std::size_t k) {
    double d = polar[(k + 1) % m].phi - polar[k].phi;
    if (d <= 0) d += two_pi;
    return d;
  };
  auto score = [&](std::size_t k) {
    const double mid = polar[k].phi + span(k) / 2;
    return containment(mt.normalized, Point2(radius * std::cos(mid), radius * std::sin(mid)));
  };
  double even = 0, odd = 0;
  for (std::size_t k = 0; k < m; ++k) (k % 2 ? odd : even) += score(k);
  const std::size_t first = even >= odd ? 0 : 1;

  // Chordal error of a step d on the circle, mapped back by at most 1 / sqrt(smallest scale).
  const double stretch = 1.0 / std::sqrt(std::min(frame.scales(0), frame.scales(1)));
  const double allowed = std::clamp(tol / (radius * stretch), 1e-12, 1.0);
  const double max_step = 2 * std::acos(1 - allowed);

  std::vector<Piece> out;
  for (std::size_t k = first; k < m; k += 2) {
    const auto& c0 = cross[polar[k].idx];
    const auto& c1 = cross[polar[(k + 1) % m].idx];
    const double d = span(k);
    const int steps = std::clamp(static_cast<int>(std::ceil(d / max_step)), 1, 4096);
    Piece p{c0.key, c1.key, {c0.point}, tri};
    for (int s = 1; s < steps; ++s) {
      const double phi = polar[k].phi + d * s / steps;
      p.points.push_back(frame.from_normalized(Point2(radius * std::cos(phi), radius * std::sin(phi))));
    }
    p.points.push_back(c1.point);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Piece> strip_pieces(const std::vector<Crossing>& cross, const StripModel<double>& strip, int tri) {
  std::vector<Piece> out;
  for (int side : {-1, 1}) {
    std::vector<const Crossing*> group;
    for (const auto& c : cross) {
      const double s = strip.coordinate(c.point) - strip.t0;
      if ((s < 0 ? -1 : 1) == side) group.push_back(&c);
    }
    if (group.size() == 2) out.push_back({group[0]->key, group[1]->key, {group[0]->point, group[1]->point}, tri});
  }
  return out;
}

std::vector<ContourPolyline> chain(std::vector<Piece>& pieces) {
  std::map<Key, std::vector<int>> at;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    at[pieces[i].start].push_back(static_cast<int>(i));
    at[pieces[i].end].push_back(static_cast<int>(i));
  }
  std::vector<char> used(pieces.size(), 0);
  std::vector<ContourPolyline> out;

  auto walk = [&](int first, const Key& from) {
    ContourPolyline line;
    Key key = from;
    int cur = first;
    while (cur >= 0) {
      used[cur] = 1;
      Piece& p = pieces[cur];
      const bool forward = p.start == key;
      std::vector<Point2> pts = p.points;
      if (!forward) std::reverse(pts.begin(), pts.end());
      line.points.insert(line.points.end(), pts.begin() + (line.points.empty() ? 0 : 1), pts.end());
      line.segment_triangle.insert(line.segment_triangle.end(), pts.size() - 1, p.triangle);
      key = forward ? p.end : p.start;
      cur = -1;
      for (int q : at[key]) {
        if (!used[q]) {
          cur = q;
          break;
        }
      }
    }
    line.closed = key == from && line.points.size() > 2;
    if (line.closed) line.points.back() = line.points.front();
    return line;
  };

  for (const auto& [key, list] : at) {
    if (list.size() == 1 && !used[list[0]]) out.push_back(walk(list[0], key));
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!used[i]) out.push_back(walk(static_cast<int>(i), pieces[i].start));
  }
  return out;
}

}  // namespace

ContourSet extract_contours(const SpectrumSource& src, Mode mode, double isovalue, const ContourOptions& opts) {
  ContourSet set;
  set.isovalue = isovalue;
  set.mode = mode;
  if (!(isovalue > 0) || !std::isfinite(isovalue)) return set;
  const double tol = opts.chordal_tolerance > 0 ? opts.chordal_tolerance : 1e-3 * bounding_box_diagonal(src.mesh());

  const SubdividedMesh* sub = mode == Mode::LinearOriginal ? nullptr : &src.subdivided();
  const TensorMesh& mesh = sub ? sub->mesh : src.mesh();
  const std::vector<double>& val = sub ? sub->values : src.vertex_values();
  std::vector<std::vector<Piece>> per(mesh.triangles.size());

  parallel_for(per.size(), src.workers(), [&](std::size_t t) {
    const Triangle& tri = mesh.triangles[t];
    std::vector<Crossing> cross;
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k], b = tri[(k + 1) % 3];
      auto c = mode == Mode::QuadraticExact ? quadratic_crossings(a, b, mesh, val, isovalue)
                                            : linear_crossings(a, b, mesh.vertices, val, isovalue);
      cross.insert(cross.end(), c.begin(), c.end());
    }
    if (cross.empty()) return;
    const int id = static_cast<int>(t);
    if (mode != Mode::QuadraticExact) {
      if (cross.size() == 2) per[t].push_back({cross[0].key, cross[1].key, {cross[0].point, cross[1].point}, id});
      return;
    }
    const MonotoneTriangle& mt = sub->monotone[t];
    const ParentModel& parent = sub->parents[mt.parent];
    per[t] = mt.kind == MonotoneCase::DegenerateStrip || !parent.frame
                 ? strip_pieces(cross, parent.strip, id)
                 : arc_pieces(cross, mt, *parent.frame, isovalue, tol, id);
  });

  std::vector<Piece> pieces;
  for (auto& v : per) {
    for (auto& p : v) pieces.push_back(std::move(p));
  }
  set.polylines = chain(pieces);
  return set;
}

}  // namespace anisospec
