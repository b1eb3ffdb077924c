#include "dcg/mesh_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "dcg/euclid.hpp"

namespace dcg {

using nlohmann::json;

namespace {

json load_json(std::istream& is) {
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::FormatError, std::string("invalid mesh document: ") + e.what());
  }
  return doc;
}

}  // namespace

MeshFile read_mesh(std::istream& is) {
  json doc = load_json(is);
  if (!doc.is_object()) fail(ErrorCode::FormatError, "mesh document must be an object");
  static const std::set<std::string> known = {"vertices", "faces", "edge_lengths", "factors"};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (!known.count(key)) fail(ErrorCode::FormatError, "unknown field '" + key + "'");
  }
  if (!doc.contains("vertices") || !doc.contains("faces"))
    fail(ErrorCode::FormatError, "mesh document needs 'vertices' and 'faces'");

  MeshFile mesh;
  int with_coords = 0;
  std::set<VertexId> ids;
  for (const auto& entry : doc.at("vertices")) {
    if (!entry.is_array() || (entry.size() != 1 && entry.size() != 3))
      fail(ErrorCode::FormatError, "vertex entries are [id] or [id,x,y]");
    VertexId id = entry.at(0).get<VertexId>();
    if (id < 0) fail(ErrorCode::FormatError, "negative vertex id");
    if (!ids.insert(id).second)
      fail(ErrorCode::FormatError, "duplicate vertex id " + std::to_string(id));
    mesh.vertex_order.push_back(id);
    if (entry.size() == 3) {
      if (!mesh.coordinates) mesh.coordinates.emplace();
      mesh.coordinates->positions[id] =
          Complex(entry.at(1).get<double>(), entry.at(2).get<double>());
      ++with_coords;
    }
  }
  if (with_coords != 0 && with_coords != int(mesh.vertex_order.size()))
    fail(ErrorCode::FormatError, "coordinates must be given for all vertices or none");

  for (const auto& entry : doc.at("faces")) {
    if (!entry.is_array() || entry.size() != 3)
      fail(ErrorCode::FormatError, "face entries are [i,j,k]");
    Face f = {entry.at(0).get<VertexId>(), entry.at(1).get<VertexId>(),
              entry.at(2).get<VertexId>()};
    for (VertexId v : f)
      if (!ids.count(v))
        fail(ErrorCode::FormatError, "face references unknown vertex " + std::to_string(v));
    mesh.faces.push_back(f);
  }

  if (doc.contains("edge_lengths")) {
    mesh.edge_lengths.emplace();
    for (const auto& entry : doc.at("edge_lengths")) {
      if (!entry.is_array() || entry.size() != 3)
        fail(ErrorCode::FormatError, "edge_lengths entries are [i,j,length]");
      VertexId i = entry.at(0).get<VertexId>(), j = entry.at(1).get<VertexId>();
      double length = entry.at(2).get<double>();
      if (!ids.count(i) || !ids.count(j))
        fail(ErrorCode::FormatError, "edge_lengths references unknown vertex");
      if (!(length > 0.0)) fail(ErrorCode::FormatError, "edge lengths must be positive");
      mesh.edge_lengths->lengths[Edge(i, j)] = length;
    }
  }

  if (doc.contains("factors")) {
    mesh.factors.emplace();
    for (const auto& entry : doc.at("factors")) {
      if (!entry.is_array() || entry.size() != 2)
        fail(ErrorCode::FormatError, "factors entries are [i,u]");
      VertexId i = entry.at(0).get<VertexId>();
      if (!ids.count(i)) fail(ErrorCode::FormatError, "factors references unknown vertex");
      mesh.factors->values[i] = entry.at(1).get<double>();
    }
  }
  return mesh;
}

MeshFile read_mesh_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::FormatError, "cannot open " + path);
  return read_mesh(is);
}

namespace {

std::string num(double x) { return json(x).dump(); }  // shortest round-trip

// One row per line keeps the documents diffable.
void write_rows(std::ostream& os, const char* name, const std::vector<std::string>& rows,
                bool last) {
  os << "  \"" << name << "\": [";
  for (std::size_t i = 0; i < rows.size(); ++i)
    os << (i ? ",\n    " : "\n    ") << rows[i];
  os << "\n  ]" << (last ? "" : ",") << "\n";
}

}  // namespace

void write_mesh(std::ostream& os, const MeshFile& mesh) {
  std::vector<std::string> vertex_rows;
  for (VertexId v : mesh.vertex_order) {
    if (mesh.coordinates) {
      Complex z = mesh.coordinates->at(v);
      vertex_rows.push_back("[" + std::to_string(v) + ", " + num(z.real()) + ", " +
                            num(z.imag()) + "]");
    } else {
      vertex_rows.push_back("[" + std::to_string(v) + "]");
    }
  }
  std::vector<std::string> face_rows;
  for (const Face& f : mesh.faces)
    face_rows.push_back("[" + std::to_string(f[0]) + ", " + std::to_string(f[1]) + ", " +
                        std::to_string(f[2]) + "]");

  std::vector<std::string> length_rows;
  if (mesh.edge_lengths) {
    std::vector<Edge> edges;
    for (const auto& [e, len] : mesh.edge_lengths->lengths) edges.push_back(e);
    std::sort(edges.begin(), edges.end());
    for (const Edge& e : edges)
      length_rows.push_back("[" + std::to_string(e.a) + ", " + std::to_string(e.b) + ", " +
                            num(mesh.edge_lengths->at(e)) + "]");
  }
  std::vector<std::string> factor_rows;
  if (mesh.factors) {
    std::vector<VertexId> vs;
    for (const auto& [v, u] : mesh.factors->values) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    for (VertexId v : vs)
      factor_rows.push_back("[" + std::to_string(v) + ", " + num(mesh.factors->at(v)) + "]");
  }

  os << "{\n";
  write_rows(os, "vertices", vertex_rows, false);
  write_rows(os, "faces", face_rows, !mesh.edge_lengths && !mesh.factors);
  if (mesh.edge_lengths) write_rows(os, "edge_lengths", length_rows, !mesh.factors);
  if (mesh.factors) write_rows(os, "factors", factor_rows, true);
  os << "}\n";
}

void write_mesh_file(const std::string& path, const MeshFile& mesh) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::FormatError, "cannot write " + path);
  write_mesh(os, mesh);
}

PLMetric metric_from_mesh(const Triangulation& T, const MeshFile& mesh) {
  if (mesh.edge_lengths) {
    for (const Edge& e : T.edges())
      if (!mesh.edge_lengths->lengths.count(e))
        fail(ErrorCode::FormatError, "edge_lengths missing edge " + edge_name(e));
    return *mesh.edge_lengths;
  }
  if (mesh.coordinates) return induced_metric(T, *mesh.coordinates);
  fail(ErrorCode::FormatError, "mesh has neither edge_lengths nor coordinates");
}

}  // namespace dcg
