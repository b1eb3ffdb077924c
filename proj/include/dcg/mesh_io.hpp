#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dcg/mesh.hpp"
#include "dcg/types.hpp"

namespace dcg {

/// On-disk mesh document. Fields: `vertices` (list of [id] or [id,x,y]),
/// `faces` (list of id triples), optional `edge_lengths` ([i,j,length]) and
/// optional `factors` ([i,u_i]). Readers reject unknown fields. Coordinates
/// are all-or-none.
struct MeshFile {
  std::vector<VertexId> vertex_order;
  std::vector<Face> faces;
  std::optional<PlanarCoords> coordinates;
  std::optional<PLMetric> edge_lengths;
  std::optional<ConformalFactor> factors;
};

MeshFile read_mesh(std::istream& is);
MeshFile read_mesh_file(const std::string& path);
void write_mesh(std::ostream& os, const MeshFile& mesh);
void write_mesh_file(const std::string& path, const MeshFile& mesh);

/// The metric a document describes: explicit edge_lengths when present,
/// otherwise the metric induced by its coordinates. Throws FormatError when
/// neither is available.
PLMetric metric_from_mesh(const Triangulation& T, const MeshFile& mesh);

}  // namespace dcg
