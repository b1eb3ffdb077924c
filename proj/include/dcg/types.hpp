#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "dcg/error.hpp"

namespace dcg {

/// Vertex ids are opaque nonnegative integers supplied by the caller; the
/// library never renumbers them.
using VertexId = int;
using Complex = std::complex<double>;
using Face = std::array<VertexId, 3>;

/// Unordered vertex pair, stored normalized (a < b).
struct Edge {
  VertexId a = -1;
  VertexId b = -1;

  Edge() = default;
  Edge(VertexId i, VertexId j) : a(i < j ? i : j), b(i < j ? j : i) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct EdgeHash {
  std::size_t operator()(const Edge& e) const noexcept {
    return std::hash<std::uint64_t>()(
        (std::uint64_t(std::uint32_t(e.a)) << 32) | std::uint32_t(e.b));
  }
};

template <class T>
using EdgeMap = std::unordered_map<Edge, T, EdgeHash>;
template <class T>
using VertexMap = std::unordered_map<VertexId, T>;

std::string edge_name(Edge e);

namespace detail {
template <class Map, class Key>
const typename Map::mapped_type& map_at(const Map& m, const Key& k, const char* what,
                                        const std::string& key_name) {
  auto it = m.find(k);
  if (it == m.end()) throw std::out_of_range(std::string(what) + " missing for " + key_name);
  return it->second;
}
}  // namespace detail

/// Positive edge lengths making every face a Euclidean triangle.
struct PLMetric {
  EdgeMap<double> lengths;
  double at(Edge e) const { return detail::map_at(lengths, e, "edge length", edge_name(e)); }
};

/// Positive edge lengths making every face a hyperbolic triangle.
struct HypPLMetric {
  EdgeMap<double> lengths;
  double at(Edge e) const { return detail::map_at(lengths, e, "edge length", edge_name(e)); }
};

/// Per-vertex log-scale exponents (Euclidean u or hyperbolic u^h).
struct ConformalFactor {
  VertexMap<double> values;
  double at(VertexId v) const {
    return detail::map_at(values, v, "conformal factor", std::to_string(v));
  }
};

/// Per-vertex angle defects, in radians.
struct CurvatureVector {
  VertexMap<double> values;
  double at(VertexId v) const {
    return detail::map_at(values, v, "curvature", std::to_string(v));
  }
};

/// Half-sums of the cotangents opposite each interior edge.
struct CotWeights {
  EdgeMap<double> values;
  double at(Edge e) const { return detail::map_at(values, e, "cot weight", edge_name(e)); }
};

/// Corner angles per face, slot k is the angle at face vertex k.
struct CornerAngles {
  std::vector<std::array<double, 3>> angles;
};

/// Straight-line vertex positions in the plane.
struct PlanarCoords {
  VertexMap<Complex> positions;
  Complex at(VertexId v) const {
    return detail::map_at(positions, v, "coordinate", std::to_string(v));
  }
};

/// Vertex positions strictly inside the unit disk.
struct DiskCoords {
  VertexMap<Complex> positions;
  Complex at(VertexId v) const {
    return detail::map_at(positions, v, "coordinate", std::to_string(v));
  }
  PlanarCoords as_planar() const { return PlanarCoords{positions}; }
};

/// Outcome of a predicate-style check. `margin` is operation specific (see
/// the operation's documentation); `detail` names the failing condition and
/// witness when `pass` is false.
struct MarginReport {
  bool pass = false;
  double margin = 0.0;
  std::string detail;
};

}  // namespace dcg
