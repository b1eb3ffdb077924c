#include "dcg/mesh.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace dcg {

std::string edge_name(Edge e) {
  std::ostringstream os;
  os << "(" << e.a << "," << e.b << ")";
  return os.str();
}

namespace {

std::string face_name(const Face& f) {
  std::ostringstream os;
  os << "(" << f[0] << "," << f[1] << "," << f[2] << ")";
  return os.str();
}

Face rotate_to_front(const Face& f, VertexId v) {
  if (f[0] == v) return f;
  if (f[1] == v) return {f[1], f[2], f[0]};
  return {f[2], f[0], f[1]};
}

// Directed edge (u,v) appears in exactly one face of a consistently
// oriented manifold patch.
struct DirectedEdgeKey {
  VertexId u, v;
  bool operator<(const DirectedEdgeKey& o) const {
    return u < o.u || (u == o.u && v < o.v);
  }
};

}  // namespace

Triangulation Triangulation::build(const std::vector<Face>& input) {
  if (input.empty()) fail(ErrorCode::NotADisk, "empty face list");

  Triangulation T;
  T.faces_ = input;

  std::set<std::array<VertexId, 3>> seen;
  for (const Face& f : T.faces_) {
    if (f[0] < 0 || f[1] < 0 || f[2] < 0)
      fail(ErrorCode::NotADisk, "negative vertex id in face " + face_name(f));
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
      fail(ErrorCode::NotADisk, "repeated vertex in face " + face_name(f));
    std::array<VertexId, 3> key = {f[0], f[1], f[2]};
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) fail(ErrorCode::NotADisk, "duplicate face " + face_name(f));
  }

  // Edge -> incident faces; at most two allowed.
  for (int fi = 0; fi < int(T.faces_.size()); ++fi) {
    const Face& f = T.faces_[fi];
    for (int k = 0; k < 3; ++k) {
      Edge e(f[k], f[(k + 1) % 3]);
      auto& fs = T.edge_faces_[e];
      fs.push_back(fi);
      if (fs.size() > 2) fail(ErrorCode::NonManifold, "edge " + edge_name(e) + " in 3+ faces");
    }
  }

  // Orientation sweep: flip faces so adjacent faces traverse shared edges in
  // opposite directions. The first face is kept as given.
  {
    std::vector<int> state(T.faces_.size(), 0);  // 0 unseen, 1 as-given, -1 flipped
    std::queue<int> queue;
    state[0] = 1;
    queue.push(0);
    int reached = 0;
    auto directed_in = [&](int fi, Edge e) {
      // +1 if face fi (in its current stored order) walks e.a -> e.b
      const Face& f = T.faces_[fi];
      for (int k = 0; k < 3; ++k) {
        VertexId u = f[k], v = f[(k + 1) % 3];
        if (u == e.a && v == e.b) return +1;
        if (u == e.b && v == e.a) return -1;
      }
      return 0;
    };
    while (!queue.empty()) {
      int fi = queue.front();
      queue.pop();
      ++reached;
      const Face f = T.faces_[fi];
      for (int k = 0; k < 3; ++k) {
        Edge e(f[k], f[(k + 1) % 3]);
        for (int gj : T.edge_faces_.at(e)) {
          if (gj == fi) continue;
          // gj must traverse e opposite to fi's effective direction.
          int fi_dir = directed_in(fi, e) * state[fi];
          int need_state = (directed_in(gj, e) == -fi_dir) ? 1 : -1;
          if (state[gj] == 0) {
            state[gj] = need_state;
            queue.push(gj);
          } else if (state[gj] != need_state) {
            fail(ErrorCode::OrientationConflict, "around edge " + edge_name(e));
          }
        }
      }
    }
    if (reached != int(T.faces_.size())) fail(ErrorCode::NotADisk, "disconnected face set");
    for (int fi = 0; fi < int(T.faces_.size()); ++fi)
      if (state[fi] == -1) std::swap(T.faces_[fi][1], T.faces_[fi][2]);
  }

  // Rebuild edge incidence against the final orientation and gather vertices.
  T.edge_faces_.clear();
  std::set<VertexId> vset;
  for (int fi = 0; fi < int(T.faces_.size()); ++fi) {
    const Face& f = T.faces_[fi];
    for (int k = 0; k < 3; ++k) {
      T.edge_faces_[Edge(f[k], f[(k + 1) % 3])].push_back(fi);
      vset.insert(f[k]);
    }
  }
  T.vertices_.assign(vset.begin(), vset.end());
  for (std::size_t i = 0; i < T.vertices_.size(); ++i) T.vertex_index_[T.vertices_[i]] = i;

  for (auto& [e, fs] : T.edge_faces_) std::sort(fs.begin(), fs.end());
  T.edges_.reserve(T.edge_faces_.size());
  for (const auto& [e, fs] : T.edge_faces_) T.edges_.push_back(e);
  std::sort(T.edges_.begin(), T.edges_.end());

  // With consistent orientation, each directed edge occurs at most once;
  // a duplicate means two faces glue along e in the same direction.
  {
    std::set<DirectedEdgeKey> directed;
    for (const Face& f : T.faces_)
      for (int k = 0; k < 3; ++k)
        if (!directed.insert({f[k], f[(k + 1) % 3]}).second)
          fail(ErrorCode::OrientationConflict,
               "directed edge repeated at " + edge_name(Edge(f[k], f[(k + 1) % 3])));
  }

  // Per-vertex incidence and link fans.
  for (int fi = 0; fi < int(T.faces_.size()); ++fi)
    for (VertexId v : T.faces_[fi]) T.vertex_faces_[v].push_back(fi);

  for (VertexId v : T.vertices_) {
    auto& vf = T.vertex_faces_[v];
    std::sort(vf.begin(), vf.end());

    // Walk the fan around v: in face (v,a,b) the link step is a -> b.
    std::map<VertexId, VertexId> next;
    std::set<VertexId> link;
    for (int fi : vf) {
      Face f = rotate_to_front(T.faces_[fi], v);
      next[f[1]] = f[2];
      link.insert(f[1]);
      link.insert(f[2]);
    }
    // Sources: link vertices with no incoming step. A single open fan has
    // exactly one source; a closed fan has none.
    std::set<VertexId> has_incoming;
    for (const auto& [a, b] : next) has_incoming.insert(b);
    std::vector<VertexId> sources;
    for (VertexId l : link)
      if (!has_incoming.count(l) && next.count(l)) sources.push_back(l);

    bool boundary;
    std::size_t walked = 0;
    VertexId start;
    if (sources.empty()) {
      boundary = false;
      start = *link.begin();
    } else if (sources.size() == 1) {
      boundary = true;
      start = sources[0];
    } else {
      fail(ErrorCode::NotADisk, "pinched vertex " + std::to_string(v));
    }
    VertexId cur = start;
    while (next.count(cur)) {
      VertexId nxt = next.at(cur);
      next.erase(cur);
      cur = nxt;
      ++walked;
      if (!boundary && cur == start) break;
    }
    if (walked != vf.size() || !next.empty())
      fail(ErrorCode::NotADisk, "vertex " + std::to_string(v) + " link is not a single fan");
    T.is_boundary_[v] = boundary;

    std::vector<VertexId> nb(link.begin(), link.end());
    T.neighbors_[v] = std::move(nb);
  }

  for (VertexId v : T.vertices_)
    (T.is_boundary_.at(v) ? T.boundary_ : T.interior_).push_back(v);
  for (std::size_t i = 0; i < T.interior_.size(); ++i) T.interior_index_[T.interior_[i]] = i;

  for (const Edge& e : T.edges_)
    if (T.edge_faces_.at(e).size() == 2) T.interior_edges_.push_back(e);

  if (T.boundary_.empty()) fail(ErrorCode::NotADisk, "no boundary (closed surface)");
  long euler = long(T.vertices_.size()) - long(T.edges_.size()) + long(T.faces_.size());
  if (euler != 1)
    fail(ErrorCode::NotADisk, "Euler characteristic " + std::to_string(euler) + " != 1");

  return T;
}

bool Triangulation::contains_vertex(VertexId v) const { return vertex_index_.count(v) > 0; }

bool Triangulation::is_boundary(VertexId v) const {
  return detail::map_at(is_boundary_, v, "vertex", std::to_string(v));
}

bool Triangulation::is_interior_edge(Edge e) const { return faces_of_edge(e).size() == 2; }

int Triangulation::degree(VertexId v) const { return int(neighbors(v).size()); }

std::size_t Triangulation::vertex_index(VertexId v) const {
  return detail::map_at(vertex_index_, v, "vertex", std::to_string(v));
}

std::size_t Triangulation::interior_index(VertexId v) const {
  return detail::map_at(interior_index_, v, "interior vertex", std::to_string(v));
}

const std::vector<VertexId>& Triangulation::neighbors(VertexId v) const {
  return detail::map_at(neighbors_, v, "vertex", std::to_string(v));
}

const std::vector<int>& Triangulation::faces_at(VertexId v) const {
  return detail::map_at(vertex_faces_, v, "vertex", std::to_string(v));
}

const std::vector<int>& Triangulation::faces_of_edge(Edge e) const {
  return detail::map_at(edge_faces_, e, "edge", edge_name(e));
}

VertexId Triangulation::opposite_vertex(int face_index, Edge e) const {
  for (VertexId v : faces_[face_index])
    if (v != e.a && v != e.b) return v;
  fail(ErrorCode::FormatError, "edge " + edge_name(e) + " not in face");
}

std::array<VertexId, 2> Triangulation::opposite_vertices(Edge e) const {
  const auto& fs = faces_of_edge(e);
  if (fs.size() != 2) fail(ErrorCode::BoundaryVertex, "edge " + edge_name(e) + " is boundary");
  return {opposite_vertex(fs[0], e), opposite_vertex(fs[1], e)};
}

std::vector<VertexId> Triangulation::boundary_cycle() const {
  // Boundary directed edges follow the orientation of their single face.
  std::map<VertexId, VertexId> succ;
  for (const Face& f : faces_)
    for (int k = 0; k < 3; ++k) {
      VertexId u = f[k], v = f[(k + 1) % 3];
      if (edge_faces_.at(Edge(u, v)).size() == 1) succ[u] = v;
    }
  std::vector<VertexId> cycle;
  VertexId start = boundary_.front();  // smallest boundary id (boundary_ is ascending)
  VertexId cur = start;
  do {
    cycle.push_back(cur);
    cur = succ.at(cur);
  } while (cur != start && cycle.size() <= succ.size());
  if (cur != start) fail(ErrorCode::NotADisk, "boundary is not a single cycle");
  return cycle;
}

Triangulation build_triangulation(const std::vector<Face>& faces) {
  return Triangulation::build(faces);
}

OneRing one_ring(const Triangulation& T, VertexId i) {
  if (!T.contains_vertex(i)) fail(ErrorCode::FormatError, "unknown vertex " + std::to_string(i));
  if (T.is_boundary(i)) fail(ErrorCode::BoundaryVertex, std::to_string(i));

  // Cyclic neighbor order from the fan: in face (i,a,b), a -> b.
  std::map<VertexId, VertexId> next;
  for (int fi : T.faces_at(i)) {
    Face f = T.faces()[fi];
    if (f[1] == i) f = {f[1], f[2], f[0]};
    if (f[2] == i) f = {f[2], f[0], f[1]};
    next[f[1]] = f[2];
  }
  std::vector<VertexId> cycle;
  VertexId start = T.neighbors(i).front();
  VertexId cur = start;
  do {
    cycle.push_back(cur);
    cur = next.at(cur);
  } while (cur != start);

  std::vector<Face> ring_faces;
  for (int fi : T.faces_at(i)) ring_faces.push_back(T.faces()[fi]);

  OneRing ring;
  ring.center = i;
  ring.ring = Triangulation::build(ring_faces);
  ring.cycle = std::move(cycle);
  return ring;
}

std::pair<std::vector<VertexId>, std::vector<VertexId>> classify_boundary(const Triangulation& T) {
  return {T.interior_vertices(), T.boundary_vertices()};
}

Triangulation subcomplex(const Triangulation& T, const std::vector<VertexId>& S) {
  std::set<VertexId> keep(S.begin(), S.end());
  std::vector<Face> faces;
  for (const Face& f : T.faces())
    if (keep.count(f[0]) && keep.count(f[1]) && keep.count(f[2])) faces.push_back(f);
  if (faces.empty()) fail(ErrorCode::EmptyResult, "no face has all vertices in S");
  return Triangulation::build(faces);
}

}  // namespace dcg
