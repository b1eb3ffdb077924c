#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dcg/types.hpp"

namespace dcg {

/// Combinatorial triangulation of a disk.
///
/// Validated at construction: every edge lies in one (boundary) or two
/// (interior) faces, all vertex links are single fans, the face adjacency
/// graph is connected, face orientations are mutually consistent, the Euler
/// characteristic is 1 and the boundary is a single nonempty cycle.
/// Immutable after construction; safe to share between threads.
class Triangulation {
 public:
  /// Empty complex; only build() produces a usable one.
  Triangulation() = default;

  /// Builds and validates a triangulation from oriented vertex triples.
  /// Face orientations are flipped as needed to make them mutually
  /// consistent (the first face is kept as given). Degenerate input
  /// (repeated vertex in a face, duplicate faces, negative ids) is rejected.
  static Triangulation build(const std::vector<Face>& faces);

  const std::vector<VertexId>& vertices() const { return vertices_; }  // ascending
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<Edge>& edges() const { return edges_; }  // ascending
  const std::vector<VertexId>& interior_vertices() const { return interior_; }
  const std::vector<VertexId>& boundary_vertices() const { return boundary_; }
  const std::vector<Edge>& interior_edges() const { return interior_edges_; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t face_count() const { return faces_.size(); }

  bool contains_vertex(VertexId v) const;
  bool is_boundary(VertexId v) const;
  bool is_interior_edge(Edge e) const;
  int degree(VertexId v) const;

  /// Index of v in vertices(); throws if absent.
  std::size_t vertex_index(VertexId v) const;
  /// Index of v in interior_vertices(); throws if absent or boundary.
  std::size_t interior_index(VertexId v) const;

  const std::vector<VertexId>& neighbors(VertexId v) const;  // ascending
  const std::vector<int>& faces_at(VertexId v) const;        // face indices, ascending
  const std::vector<int>& faces_of_edge(Edge e) const;       // 1 or 2 face indices

  /// The vertex of face `face_index` not on edge `e`.
  VertexId opposite_vertex(int face_index, Edge e) const;
  /// The two vertices opposite an interior edge, ordered by face index.
  std::array<VertexId, 2> opposite_vertices(Edge e) const;

  /// Boundary vertices in cycle order, following the face orientation,
  /// starting at the smallest boundary id.
  std::vector<VertexId> boundary_cycle() const;

 private:
  std::vector<VertexId> vertices_;
  std::vector<Face> faces_;
  std::vector<Edge> edges_;
  std::vector<VertexId> interior_;
  std::vector<VertexId> boundary_;
  std::vector<Edge> interior_edges_;

  VertexMap<std::size_t> vertex_index_;
  VertexMap<std::size_t> interior_index_;
  VertexMap<bool> is_boundary_;
  VertexMap<std::vector<VertexId>> neighbors_;
  VertexMap<std::vector<int>> vertex_faces_;
  EdgeMap<std::vector<int>> edge_faces_;
};

/// 1-ring neighborhood of an interior vertex: the subcomplex generated by
/// the center and its neighbors.
struct OneRing {
  VertexId center = -1;
  Triangulation ring;
  /// Neighbors in cyclic order consistent with the parent orientation,
  /// starting at the smallest neighbor id.
  std::vector<VertexId> cycle;
};

Triangulation build_triangulation(const std::vector<Face>& faces);

/// Throws BoundaryVertex if i lies on the boundary of T.
OneRing one_ring(const Triangulation& T, VertexId i);

/// Partition of the vertex set into (interior, boundary).
std::pair<std::vector<VertexId>, std::vector<VertexId>> classify_boundary(const Triangulation& T);

/// Subcomplex generated by S: all faces with their three vertices in S.
/// Throws EmptyResult if no face survives; NotADisk if the generated
/// complex is not a disk.
Triangulation subcomplex(const Triangulation& T, const std::vector<VertexId>& S);

}  // namespace dcg
