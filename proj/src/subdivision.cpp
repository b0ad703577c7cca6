#include "anisospec/subdivision.hpp"

#include "anisospec/parallel.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace anisospec {

const char* to_string(MonotoneCase c) {
  switch (c) {
    case MonotoneCase::MinAtVertex: return "min_at_vertex";
    case MonotoneCase::Generic: return "generic";
    case MonotoneCase::DegenerateStrip: return "degenerate_strip";
  }
  return "unknown";
}

namespace {

constexpr double kEdgeSnap = 1e-10;
constexpr double kInteriorTol = 1e-10;

using LocalTri = std::array<int, 3>;

// Connectivity of the monotone pieces in local ids (see kLocalCritical).
std::vector<LocalTri> split_pattern(bool interior, const std::array<bool, 3>& has_min,
                                    const std::array<double, 3>& min_value) {
  std::vector<LocalTri> out;
  if (interior) {
    for (int k = 0; k < 3; ++k) {
      const int next = (k + 1) % 3;
      if (has_min[k]) {
        out.push_back({kLocalCritical, k, 3 + k});
        out.push_back({kLocalCritical, 3 + k, next});
      } else {
        out.push_back({kLocalCritical, k, next});
      }
    }
    return out;
  }
  std::vector<int> edges;
  for (int k = 0; k < 3; ++k) {
    if (has_min[k]) edges.push_back(k);
  }
  switch (edges.size()) {
    case 0:
      out.push_back({0, 1, 2});
      break;
    case 1: {
      const int k = edges[0];
      const int m = 3 + k;
      // edge from the edge minimum to the opposite vertex
      out.push_back({k, m, (k + 2) % 3});
      out.push_back({m, (k + 1) % 3, (k + 2) % 3});
      break;
    }
    case 2: {
      // the two edges share one corner
      const int ka = edges[0], kb = edges[1];
      const int shared = (ka + 1) % 3 == kb ? kb : ka;  // corner common to both edges
      auto other_end = [&](int k) { return k == shared ? (k + 1) % 3 : k; };
      const int pa = other_end(ka), pb = other_end(kb);
      const int ma = 3 + ka, mb = 3 + kb;
      out.push_back({shared, ma, mb});  // edge between the two edge minima
      // edge from the lower edge minimum to its opposite corner
      if (min_value[ka] <= min_value[kb]) {
        out.push_back({ma, pa, pb});
        out.push_back({ma, pb, mb});
      } else {
        out.push_back({mb, ma, pa});
        out.push_back({mb, pa, pb});
      }
      break;
    }
    default: {
      int low = 0;
      for (int k = 1; k < 3; ++k) {
        if (min_value[k] < min_value[low]) low = k;
      }
      const int a = low, b = (low + 1) % 3, c = (low + 2) % 3;
      const int pm = 3 + a, mb = 3 + b, mc = 3 + c;
      out.push_back({a, pm, mc});
      out.push_back({pm, b, mb});
      out.push_back({pm, mb, c});
      out.push_back({pm, c, mc});
      break;
    }
  }
  return out;
}

bool contains_strictly(const std::array<Point2, 3>& c, const Point2& p) {
  const double total = signed_area<double>(c[0], c[1], c[2]);
  if (total == 0.0) return false;
  for (int k = 0; k < 3; ++k) {
    const double b = signed_area<double>(p, c[(k + 1) % 3], c[(k + 2) % 3]) / total;
    if (!(b > kInteriorTol)) return false;
  }
  return true;
}

MonotoneTriangle make_monotone(const ParentModel& model, int parent, std::array<Point2, 3> pts,
                               std::array<int, 3> ids, const std::array<bool, 3>& critical) {
  MonotoneTriangle mt;
  mt.parent = parent;
  mt.area = std::abs(signed_area<double>(pts[0], pts[1], pts[2]));
  std::array<Point2, 3> norm;
  std::array<double, 3> vals{};
  bool has_critical = false;
  for (int k = 0; k < 3; ++k) {
    if (model.frame) {
      norm[k] = critical[k] ? Point2::Zero() : model.frame->to_normalized(pts[k]);
      vals[k] = norm[k].squaredNorm();
      has_critical = has_critical || critical[k];
    } else {
      norm[k] = pts[k];
      vals[k] = model.strip(pts[k]);
    }
  }
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    if (critical[i] != critical[j]) return critical[i];
    return vals[i] < vals[j];
  });
  for (int k = 0; k < 3; ++k) {
    mt.corners[k] = pts[order[k]];
    mt.normalized[k] = norm[order[k]];
    mt.values[k] = vals[order[k]];
    mt.vertices[k] = ids[order[k]];
  }
  if (model.frame) {
    mt.kind = has_critical ? MonotoneCase::MinAtVertex : MonotoneCase::Generic;
    mt.area_factor = model.frame->area_factor;
  } else {
    mt.kind = MonotoneCase::DegenerateStrip;
    mt.area_factor = 1.0;
  }
  return mt;
}

std::optional<EdgeMinimum> interior_parameter(double t, const Point2& p, const Point2& r, double value) {
  if (!(t > kEdgeSnap && t < 1.0 - kEdgeSnap)) return std::nullopt;
  return EdgeMinimum{p + t * (r - p), value, t};
}

}  // namespace

std::optional<EdgeMinimum> edge_minimum(const Quadricd& q, const Point2& p, const Point2& r) {
  const Point2 d = r - p;
  const double curvature = d.dot(q.form() * d);
  if (!(curvature > 0.0)) return std::nullopt;
  const double slope = q.gradient(p).dot(d);
  const double t = -slope / (2.0 * curvature);
  auto m = interior_parameter(t, p, r, 0.0);
  if (m) m->value = q(m->point);
  return m;
}

std::optional<EdgeMinimum> edge_minimum(const Tensor2& ta, const Tensor2& tb, const Point2& p, const Point2& r) {
  const EdgeRestriction<double> er(ta, tb);
  const double t = er.argmin();
  if (std::isnan(t)) return std::nullopt;
  return interior_parameter(t, p, r, er.min_value());
}

ParentModel make_parent_model(const TensorMesh& mesh, std::size_t triangle_index) {
  ParentModel m;
  m.field = tensor_field_coeffs(mesh, triangle_index);
  m.quadric = build_quadric(m.field);
  if (m.quadric.kind == QuadricKind::EllipticMin) {
    m.frame = normalize(m.quadric);
    m.interior_minimum = contains_strictly(mesh.corners(triangle_index), *m.quadric.critical_point);
  } else {
    m.strip = strip_model(m.quadric);
  }
  return m;
}

std::vector<MonotoneTriangle> subdivide_triangle(const Quadricd& q, const std::optional<Frame>& frame,
                                                 const std::array<Point2, 3>& corners) {
  ParentModel model;
  model.quadric = q;
  if (q.kind == QuadricKind::EllipticMin) {
    model.frame = frame ? frame : std::optional<Frame>(normalize(q));
    model.interior_minimum = contains_strictly(corners, *q.critical_point);
  } else {
    model.strip = strip_model(q);
  }
  std::array<Point2, 7> local;
  std::array<bool, 3> has_min{};
  std::array<double, 3> min_value{};
  for (int k = 0; k < 3; ++k) {
    local[k] = corners[k];
    if (auto m = edge_minimum(q, corners[k], corners[(k + 1) % 3])) {
      has_min[k] = true;
      min_value[k] = m->value;
      local[3 + k] = m->point;
    }
  }
  if (model.interior_minimum) local[kLocalCritical] = *q.critical_point;
  std::vector<MonotoneTriangle> out;
  for (const auto& lt : split_pattern(model.interior_minimum, has_min, min_value)) {
    std::array<Point2, 3> pts{local[lt[0]], local[lt[1]], local[lt[2]]};
    std::array<int, 3> ids = lt;
    if (signed_area<double>(pts[0], pts[1], pts[2]) < 0) {
      std::swap(pts[1], pts[2]);
      std::swap(ids[1], ids[2]);
    }
    const std::array<bool, 3> crit{ids[0] == kLocalCritical, ids[1] == kLocalCritical, ids[2] == kLocalCritical};
    out.push_back(make_monotone(model, -1, pts, ids, crit));
  }
  return out;
}

SubdividedMesh subdivide_mesh(const TensorMesh& mesh, int workers) {
  const std::size_t nt = mesh.num_triangles();
  const std::size_t nv = mesh.num_vertices();

  // canonical edges, lower vertex index first
  std::map<std::pair<int, int>, int> edge_ids;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> tri_edges(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    const auto& tri = mesh.triangles[t];
    for (int k = 0; k < 3; ++k) {
      const int a = std::min(tri[k], tri[(k + 1) % 3]);
      const int b = std::max(tri[k], tri[(k + 1) % 3]);
      auto [it, inserted] = edge_ids.emplace(std::make_pair(a, b), static_cast<int>(edges.size()));
      if (inserted) edges.push_back({a, b});
      tri_edges[t][k] = it->second;
    }
  }
  std::vector<std::optional<EdgeMinimum>> edge_min(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [a, b] = edges[e];
    edge_min[e] = edge_minimum(mesh.tensors[a], mesh.tensors[b], mesh.vertices[a], mesh.vertices[b]);
  }

  SubdividedMesh out;
  out.original_vertices = nv;
  out.parents.resize(nt);
  std::vector<std::vector<LocalTri>> patterns(nt);
  parallel_for(nt, workers, [&](std::size_t t) {
    try {
      out.parents[t] = make_parent_model(mesh, t);
    } catch (const std::exception& ex) {
      throw TriangleError(static_cast<int>(t), ex.what());
    }
    std::array<bool, 3> has_min{};
    std::array<double, 3> min_value{};
    for (int k = 0; k < 3; ++k) {
      const auto& m = edge_min[tri_edges[t][k]];
      has_min[k] = m.has_value();
      min_value[k] = m ? m->value : 0.0;
    }
    patterns[t] = split_pattern(out.parents[t].interior_minimum, has_min, min_value);
  });

  // welding: originals, then edge minima in canonical edge order, then interior minima
  auto& sm = out.mesh;
  sm.vertices = mesh.vertices;
  sm.tensors = mesh.tensors;
  out.values.reserve(nv);
  for (const auto& t : mesh.tensors) out.values.push_back(anisotropy(t));
  out.vertex_info.assign(nv, SubdividedVertexInfo{});
  std::vector<int> edge_vertex(edges.size(), -1);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!edge_min[e]) continue;
    const auto [a, b] = edges[e];
    edge_vertex[e] = static_cast<int>(sm.vertices.size());
    sm.vertices.push_back(edge_min[e]->point);
    sm.tensors.push_back(lerp(mesh.tensors[a], mesh.tensors[b], edge_min[e]->t));
    out.values.push_back(edge_min[e]->value);
    out.vertex_info.push_back({VertexOrigin::EdgeMinimum, -1, {a, b}});
  }
  std::vector<int> critical_vertex(nt, -1);
  for (std::size_t t = 0; t < nt; ++t) {
    const auto& model = out.parents[t];
    if (!model.interior_minimum) continue;
    const Point2 pc = *model.quadric.critical_point;
    critical_vertex[t] = static_cast<int>(sm.vertices.size());
    sm.vertices.push_back(pc);
    sm.tensors.push_back(model.field(pc));
    out.values.push_back(0.0);  // the isolated minimum of the anisotropy is zero
    out.vertex_info.push_back({VertexOrigin::InteriorMinimum, static_cast<int>(t), {-1, -1}});
  }

  for (std::size_t t = 0; t < nt; ++t) {
    const auto& tri = mesh.triangles[t];
    auto global = [&](int local) {
      if (local < 3) return tri[local];
      if (local == kLocalCritical) return critical_vertex[t];
      return edge_vertex[tri_edges[t][local - 3]];
    };
    for (const auto& lt : patterns[t]) {
      std::array<int, 3> ids{global(lt[0]), global(lt[1]), global(lt[2])};
      std::array<Point2, 3> pts{sm.vertices[ids[0]], sm.vertices[ids[1]], sm.vertices[ids[2]]};
      std::array<bool, 3> crit{lt[0] == kLocalCritical, lt[1] == kLocalCritical, lt[2] == kLocalCritical};
      if (signed_area<double>(pts[0], pts[1], pts[2]) < 0) {
        std::swap(ids[1], ids[2]);
        std::swap(pts[1], pts[2]);
        std::swap(crit[1], crit[2]);
      }
      sm.triangles.push_back(ids);
      out.provenance.push_back(static_cast<int>(t));
      out.monotone.push_back(make_monotone(out.parents[t], static_cast<int>(t), pts, ids, crit));
    }
  }
  return out;
}

}  // namespace anisospec
