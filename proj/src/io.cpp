#include "anisospec/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace anisospec {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

TensorMesh read_mesh_json(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw MeshError(std::string("mesh JSON: ") + e.what());
  }
  TensorMesh m;
  try {
    for (const auto& v : j.at("vertices")) m.vertices.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    for (const auto& t : j.at("triangles")) m.triangles.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
    for (const auto& t : j.at("tensors")) m.tensors.push_back({t.at(0).get<double>(), t.at(1).get<double>(), t.at(2).get<double>()});
  } catch (const json::exception& e) {
    throw MeshError(std::string("mesh JSON: ") + e.what());
  }
  return m;
}

TensorMesh read_mesh_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw MeshError("mesh CSV: empty input");
  line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }), line.end());
  if (line != "x,y,e,f,g") throw MeshError("mesh CSV: expected header x,y,e,f,g");
  struct Row {
    double x, y;
    Tensor2 t;
  };
  std::vector<Row> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::stringstream ss(line);
    std::string cell;
    std::array<double, 5> v{};
    int k = 0;
    while (std::getline(ss, cell, ',')) {
      if (k >= 5) throw MeshError("mesh CSV line " + std::to_string(lineno) + ": too many columns");
      try {
        std::size_t used = 0;
        v[k] = std::stod(cell, &used);
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw MeshError("mesh CSV line " + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
      ++k;
    }
    if (k != 5) throw MeshError("mesh CSV line " + std::to_string(lineno) + ": expected 5 columns");
    rows.push_back({v[0], v[1], {v[2], v[3], v[4]}});
  }
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    xs.push_back(r.x);
    ys.push_back(r.y);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  const std::size_t nx = xs.size(), ny = ys.size();
  if (nx < 2 || ny < 2 || rows.size() != nx * ny) {
    throw MeshError("mesh CSV: rows do not form a full grid (" + std::to_string(rows.size()) + " rows, " +
                    std::to_string(nx) + " x " + std::to_string(ny) + " coordinates)");
  }
  TensorMesh m;
  m.vertices.resize(nx * ny);
  m.tensors.resize(nx * ny);
  std::vector<char> seen(nx * ny, 0);
  for (const auto& r : rows) {
    const std::size_t i = std::lower_bound(xs.begin(), xs.end(), r.x) - xs.begin();
    const std::size_t j = std::lower_bound(ys.begin(), ys.end(), r.y) - ys.begin();
    const std::size_t id = j * nx + i;
    if (seen[id]) throw MeshError("mesh CSV: duplicate grid point");
    seen[id] = 1;
    m.vertices[id] = Point2(r.x, r.y);
    m.tensors[id] = r.t;
  }
  for (std::size_t j = 0; j + 1 < ny; ++j) {
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      const int v00 = static_cast<int>(j * nx + i), v10 = v00 + 1;
      const int v01 = static_cast<int>((j + 1) * nx + i), v11 = v01 + 1;
      m.triangles.push_back({v00, v10, v11});
      m.triangles.push_back({v00, v11, v01});
    }
  }
  return m;
}

TensorMesh read_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open '" + path + "'");
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  return csv ? read_mesh_csv(in) : read_mesh_json(in);
}

json mesh_to_json(const TensorMesh& mesh) {
  json v = json::array(), t = json::array(), s = json::array();
  for (const auto& p : mesh.vertices) v.push_back({p.x(), p.y()});
  for (const auto& tri : mesh.triangles) t.push_back({tri[0], tri[1], tri[2]});
  for (const auto& x : mesh.tensors) s.push_back({x.e, x.f, x.g});
  return json{{"vertices", v}, {"triangles", t}, {"tensors", s}};
}

void write_mesh_json(std::ostream& out, const TensorMesh& mesh) { out << mesh_to_json(mesh).dump() << '\n'; }

void write_subdivided_json(std::ostream& out, const SubdividedMesh& sub) {
  json j = mesh_to_json(sub.mesh);
  j["values"] = sub.values;
  j["provenance"] = sub.provenance;
  out << j.dump() << '\n';
}

void write_quadrics_csv(std::ostream& out, const SubdividedMesh& sub) {
  out << "tri,A,B,C,D,E,F,H,I,kind,xc,yc\n";
  for (std::size_t t = 0; t < sub.parents.size(); ++t) {
    const Quadricd& q = sub.parents[t].quadric;
    out << t << ',' << format_double(q.a) << ',' << format_double(q.b) << ',' << format_double(q.c) << ','
        << format_double(q.d) << ',' << format_double(q.e) << ',' << format_double(q.f) << ',' << format_double(q.h)
        << ',' << format_double(q.i_inv) << ',' << to_string(q.kind) << ',';
    if (q.critical_point) {
      out << format_double(q.critical_point->x()) << ',' << format_double(q.critical_point->y());
    } else {
      out << ',';
    }
    out << '\n';
  }
}

void write_spectra_csv(std::ostream& out, const std::vector<ContourSpectrum>& spectra) {
  if (spectra.empty()) return;
  out << "value";
  for (const auto& s : spectra) out << ",cumulative_" << mode_letter(s.mode);
  for (const auto& s : spectra) out << ",density_" << mode_letter(s.mode);
  out << '\n';
  const auto& thresholds = spectra.front().bin_values;
  for (std::size_t j = 0; j < thresholds.size(); ++j) {
    out << format_double(thresholds[j]);
    for (const auto& s : spectra) out << ',' << format_double(s.cumulative[j]);
    for (const auto& s : spectra) {
      out << ',';
      if (j < s.density.size()) out << format_double(s.density[j]);
    }
    out << '\n';
  }
}

json spectra_to_json(const std::vector<ContourSpectrum>& spectra) {
  json j;
  if (spectra.empty()) return j;
  j["value"] = spectra.front().bin_values;
  for (const auto& s : spectra) {
    const std::string m(1, mode_letter(s.mode));
    j["cumulative_" + m] = s.cumulative;
    j["density_" + m] = s.density;
  }
  j["total_area"] = spectra.front().total_area;
  return j;
}

json tree_to_json(const JoinTree& tree) {
  json nodes = json::array(), edges = json::array();
  for (const auto& n : tree.nodes) {
    nodes.push_back({{"id", n.id},
                     {"value", n.value},
                     {"x", n.position.x()},
                     {"y", n.position.y()},
                     {"kind", to_string(n.kind)},
                     {"degenerate", n.is_degenerate_point}});
  }
  for (const auto& [c, p] : tree.edges) edges.push_back({c, p});
  return json{{"nodes", nodes}, {"edges", edges}};
}

void write_contours_csv(std::ostream& out, const std::vector<ContourSet>& sets) {
  out << "contour_id,x,y\n";
  int id = 0;
  for (const auto& s : sets) {
    for (const auto& line : s.polylines) {
      for (const auto& p : line.points) out << id << ',' << format_double(p.x()) << ',' << format_double(p.y()) << '\n';
      ++id;
    }
  }
}

}  // namespace anisospec
