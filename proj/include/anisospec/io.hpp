#ifndef ANISOSPEC_IO_HPP
#define ANISOSPEC_IO_HPP

#include "anisospec/mesh.hpp"
#include "anisospec/spectrum.hpp"
#include "anisospec/subdivision.hpp"
#include "anisospec/topology.hpp"

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace anisospec {

/// {"vertices": [[x,y],...], "triangles": [[i,j,k],...], "tensors": [[e,f,g],...]}
TensorMesh read_mesh_json(std::istream& in);
/// Header x,y,e,f,g; rows form a full tensor-product grid in any order.
TensorMesh read_mesh_csv(std::istream& in);
/// Dispatches on the extension (.csv, anything else is JSON). Throws MeshError.
TensorMesh read_mesh(const std::string& path);

nlohmann::json mesh_to_json(const TensorMesh& mesh);
void write_mesh_json(std::ostream& out, const TensorMesh& mesh);

/// Mesh JSON plus "values" per vertex and "provenance" per triangle.
void write_subdivided_json(std::ostream& out, const SubdividedMesh& sub);

/// tri,A,B,C,D,E,F,H,I,kind,xc,yc for every parent triangle.
void write_quadrics_csv(std::ostream& out, const SubdividedMesh& sub);

/// value,cumulative_<m>...,density_<m>... ; the density of the last row is empty.
void write_spectra_csv(std::ostream& out, const std::vector<ContourSpectrum>& spectra);
nlohmann::json spectra_to_json(const std::vector<ContourSpectrum>& spectra);

nlohmann::json tree_to_json(const JoinTree& tree);

/// contour_id,x,y ; ids run over all sets in order.
void write_contours_csv(std::ostream& out, const std::vector<ContourSet>& sets);

/// Shortest round-trip decimal representation.
std::string format_double(double x);

}  // namespace anisospec

#endif  // ANISOSPEC_IO_HPP
