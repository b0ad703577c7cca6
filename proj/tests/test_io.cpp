#include "doctest.h"

#include "anisospec/io.hpp"

#include <sstream>

using namespace anisospec;

TEST_CASE("mesh JSON round trip") {
  const auto mesh = generate_random(5, 2);
  std::stringstream ss;
  write_mesh_json(ss, mesh);
  const auto back = read_mesh_json(ss);
  CHECK(back.vertices == mesh.vertices);
  CHECK(back.triangles == mesh.triangles);
  CHECK(back.tensors == mesh.tensors);
}

TEST_CASE("malformed mesh JSON") {
  std::stringstream a("{\"vertices\": [[0,0]], \"triangles\": [[0,1,2]]}");
  CHECK_THROWS_AS(read_mesh_json(a), MeshError);
  std::stringstream b("not json");
  CHECK_THROWS_AS(read_mesh_json(b), MeshError);
  CHECK_THROWS_AS(read_mesh("/nonexistent/mesh.json"), MeshError);
}

TEST_CASE("grid CSV") {
  std::stringstream ss("x,y,e,f,g\n1,1,4,0,0\n0,0,1,0,0\n1,0,2,0,0\n0,1,3,0,0\n");
  const auto m = read_mesh_csv(ss);
  CHECK(m.vertices.size() == 4);
  CHECK(m.triangles.size() == 2);
  CHECK(m.vertices[3] == Point2(1, 1));
  CHECK(m.tensors[3].e == 4);
  CHECK(m.tensors[2].e == 3);
  auto copy = m;
  CHECK(validate_mesh(copy).ok());

  std::stringstream missing("x,y,e,f,g\n0,0,1,0,0\n1,0,2,0,0\n0,1,3,0,0\n");
  CHECK_THROWS_AS(read_mesh_csv(missing), MeshError);
  std::stringstream header("x,y,e\n0,0,1\n");
  CHECK_THROWS_AS(read_mesh_csv(header), MeshError);
  std::stringstream bad("x,y,e,f,g\n0,0,1,0,zz\n");
  CHECK_THROWS_AS(read_mesh_csv(bad), MeshError);
}

TEST_CASE("spectrum CSV layout") {
  const SpectrumSource src(generate_random(5, 1));
  std::vector<ContourSpectrum> spectra;
  for (Mode m : {Mode::LinearOriginal, Mode::QuadraticExact}) spectra.push_back(cumulative_histogram(src, m, 4));
  std::stringstream ss;
  write_spectra_csv(ss, spectra);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "value,cumulative_a,cumulative_c,density_a,density_c");
  int rows = 0;
  while (std::getline(ss, line)) ++rows;
  CHECK(rows == 5);
  const auto j = spectra_to_json(spectra);
  CHECK(j["value"].size() == 5);
  CHECK(j["density_c"].size() == 4);
}

TEST_CASE("numbers round trip through text") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456789.123456789}) CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("tree JSON layout") {
  const std::vector<Point2> xy{Point2(0, 0), Point2(1, 0), Point2(0, 1)};
  const auto tree = merge_tree(xy, {{0, 1, 2}}, {0.0, 1.0, 2.0}, false, 1e-7);
  const auto j = tree_to_json(tree);
  REQUIRE(j["nodes"].size() == 2);
  CHECK(j["nodes"][0]["kind"] == "minimum");
  CHECK(j["nodes"][0]["degenerate"] == true);
  CHECK(j["nodes"][1]["kind"] == "root");
  CHECK(j["edges"][0][0] == 0);
  CHECK(j["edges"][0][1] == 1);
  for (const char* key : {"id", "value", "x", "y", "kind", "degenerate"}) CHECK(j["nodes"][0].contains(key));
}

TEST_CASE("subdivided mesh and quadric exports") {
  const SpectrumSource src(generate_synthetic(5, 3, {}, true));
  std::stringstream ss;
  write_subdivided_json(ss, src.subdivided());
  const auto j = nlohmann::json::parse(ss.str());
  CHECK(j["values"].size() == j["vertices"].size());
  CHECK(j["provenance"].size() == j["triangles"].size());
  std::stringstream qs;
  write_quadrics_csv(qs, src.subdivided());
  std::string line;
  std::getline(qs, line);
  CHECK(line == "tri,A,B,C,D,E,F,H,I,kind,xc,yc");
  int rows = 0;
  while (std::getline(qs, line)) ++rows;
  CHECK(rows == 32);
}
