#include "dcg/euclid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace dcg {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

int orientation_sign(Complex p, Complex q, Complex r) {
  double a = signed_area(p, q, r);
  return (a > 0.0) - (a < 0.0);
}

bool on_segment(Complex p, Complex q, Complex x) {
  // assumes p,q,x collinear
  return std::min(p.real(), q.real()) <= x.real() && x.real() <= std::max(p.real(), q.real()) &&
         std::min(p.imag(), q.imag()) <= x.imag() && x.imag() <= std::max(p.imag(), q.imag());
}

}  // namespace

double signed_area(Complex p, Complex q, Complex r) {
  return 0.5 * ((q.real() - p.real()) * (r.imag() - p.imag()) -
                (q.imag() - p.imag()) * (r.real() - p.real()));
}

double angle_at(Complex p0, Complex p1, Complex p2) {
  Complex u = p1 - p0, v = p2 - p0;
  double dot = u.real() * v.real() + u.imag() * v.imag();
  double cross = u.real() * v.imag() - u.imag() * v.real();
  return std::abs(std::atan2(cross, dot));
}

bool segments_intersect(Complex p, Complex q, Complex r, Complex s) {
  int d1 = orientation_sign(p, q, r);
  int d2 = orientation_sign(p, q, s);
  int d3 = orientation_sign(r, s, p);
  int d4 = orientation_sign(r, s, q);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(p, q, r)) return true;
  if (d2 == 0 && on_segment(p, q, s)) return true;
  if (d3 == 0 && on_segment(r, s, p)) return true;
  if (d4 == 0 && on_segment(r, s, q)) return true;
  return false;
}

double point_segment_distance(Complex x, Complex p, Complex q) {
  Complex d = q - p;
  double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(x - p);
  double t = ((x - p).real() * d.real() + (x - p).imag() * d.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(x - (p + t * d));
}

Circumcircle circumcircle(Complex p, Complex q, Complex r) {
  double area2 = 2.0 * 2.0 * signed_area(p, q, r);
  if (area2 == 0.0) fail(ErrorCode::DegenerateFace, "collinear circumcircle triple");
  double pp = std::norm(p), qq = std::norm(q), rr = std::norm(r);
  double cx = (pp * (q.imag() - r.imag()) + qq * (r.imag() - p.imag()) +
               rr * (p.imag() - q.imag())) /
              area2;
  double cy = (pp * (r.real() - q.real()) + qq * (p.real() - r.real()) +
               rr * (q.real() - p.real())) /
              area2;
  Complex c(cx, cy);
  return {c, std::abs(p - c)};
}

bool triangle_valid(double a, double b, double c) {
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0)) return false;
  double slack = tol::kTriangleRel * std::max({a, b, c});
  return a + b - c > slack && a + c - b > slack && b + c - a > slack;
}

double corner_angle(double a, double b, double c) {
  if (!triangle_valid(a, b, c))
    fail(ErrorCode::InvalidTriangle,
         "sides (" + fmt(a) + "," + fmt(b) + "," + fmt(c) + ") violate triangle inequalities");
  double cosv = (a * a + b * b - c * c) / (2.0 * a * b);
  cosv = std::clamp(cosv, -1.0, 1.0);
  return std::acos(cosv);
}

void validate_metric(const Triangulation& T, const PLMetric& l) {
  for (const Face& f : T.faces()) {
    double a = l.at(Edge(f[0], f[1]));
    double b = l.at(Edge(f[1], f[2]));
    double c = l.at(Edge(f[0], f[2]));
    if (!triangle_valid(a, b, c))
      fail(ErrorCode::InvalidTriangle, "face (" + std::to_string(f[0]) + "," +
                                           std::to_string(f[1]) + "," + std::to_string(f[2]) +
                                           ") fails triangle inequalities");
  }
}

CornerAngles corner_angles(const Triangulation& T, const PLMetric& l) {
  CornerAngles out;
  out.angles.reserve(T.face_count());
  for (const Face& f : T.faces()) {
    double lij = l.at(Edge(f[0], f[1]));
    double ljk = l.at(Edge(f[1], f[2]));
    double lik = l.at(Edge(f[0], f[2]));
    out.angles.push_back({corner_angle(lij, lik, ljk),    // at f[0]
                          corner_angle(lij, ljk, lik),    // at f[1]
                          corner_angle(lik, ljk, lij)});  // at f[2]
  }
  return out;
}

namespace {

template <class AngleFn>
CurvatureVector curvature_from_angles(const Triangulation& T, AngleFn&& face_angles) {
  VertexMap<double> sums;
  for (VertexId v : T.vertices()) sums[v] = 0.0;
  for (std::size_t fi = 0; fi < T.face_count(); ++fi) {
    std::array<double, 3> a = face_angles(int(fi));
    const Face& f = T.faces()[fi];
    for (int k = 0; k < 3; ++k) sums[f[k]] += a[k];
  }
  CurvatureVector K;
  for (VertexId v : T.vertices()) {
    double full = T.is_boundary(v) ? M_PI : 2.0 * M_PI;
    K.values[v] = full - sums.at(v);
  }
  return K;
}

}  // namespace

CurvatureVector curvature_vector(const Triangulation& T, const PLMetric& l) {
  CornerAngles A = corner_angles(T, l);
  return curvature_from_angles(T, [&](int fi) { return A.angles[fi]; });
}

namespace {

// Angle opposite edge e in face fi.
double opposite_angle(const Triangulation& T, const PLMetric& l, int fi, Edge e) {
  VertexId k = T.opposite_vertex(fi, e);
  return corner_angle(l.at(Edge(k, e.a)), l.at(Edge(k, e.b)), l.at(e));
}

}  // namespace

CotWeights cot_weights(const Triangulation& T, const PLMetric& l) {
  CotWeights w;
  for (const Edge& e : T.interior_edges()) {
    const auto& fs = T.faces_of_edge(e);
    double t0 = opposite_angle(T, l, fs[0], e);
    double t1 = opposite_angle(T, l, fs[1], e);
    w.values[e] = 0.5 * (1.0 / std::tan(t0) + 1.0 / std::tan(t1));
  }
  return w;
}

double delaunay_margin(const Triangulation& T, const PLMetric& l) {
  double margin = std::numeric_limits<double>::infinity();
  for (const Edge& e : T.interior_edges()) {
    const auto& fs = T.faces_of_edge(e);
    double s = opposite_angle(T, l, fs[0], e) + opposite_angle(T, l, fs[1], e);
    margin = std::min(margin, M_PI - s);
  }
  return margin;
}

double nondegeneracy_margin(const Triangulation& T, const PLMetric& l) {
  CornerAngles A = corner_angles(T, l);
  double m = std::numeric_limits<double>::infinity();
  for (const auto& a : A.angles) m = std::min({m, a[0], a[1], a[2]});
  return m;
}

double acuteness_margin(const Triangulation& T, const PLMetric& l) {
  CornerAngles A = corner_angles(T, l);
  double m = std::numeric_limits<double>::infinity();
  for (const auto& a : A.angles) m = std::min(m, M_PI / 2.0 - std::max({a[0], a[1], a[2]}));
  return m;
}

PLMetric apply_conformal(const Triangulation& T, const PLMetric& l, const ConformalFactor& u) {
  PLMetric out;
  for (const Edge& e : T.edges())
    out.lengths[e] = std::exp(0.5 * (u.at(e.a) + u.at(e.b))) * l.at(e);
  for (const Face& f : T.faces()) {
    double a = out.at(Edge(f[0], f[1]));
    double b = out.at(Edge(f[1], f[2]));
    double c = out.at(Edge(f[0], f[2]));
    if (!triangle_valid(a, b, c))
      fail(ErrorCode::TriangleInequalityViolated,
           "scaled face (" + std::to_string(f[0]) + "," + std::to_string(f[1]) + "," +
               std::to_string(f[2]) + ")");
  }
  return out;
}

namespace detail {

VertexMap<double> solve_vertex_scales(const Triangulation& T, const EdgeMap<double>& d,
                                      double tolerance, const char* label) {
  VertexMap<double> u;
  auto d_at = [&](Edge e) { return detail::map_at(d, e, "edge target", edge_name(e)); };

  // Seed from face 0: u_i + u_j = d_ij for its three edges.
  {
    const Face& f = T.faces()[0];
    double dij = d_at(Edge(f[0], f[1]));
    double djk = d_at(Edge(f[1], f[2]));
    double dik = d_at(Edge(f[0], f[2]));
    u[f[0]] = 0.5 * (dij + dik - djk);
    u[f[1]] = 0.5 * (dij + djk - dik);
    u[f[2]] = 0.5 * (dik + djk - dij);
  }

  // Propagate across face adjacency; each new face shares an edge with a
  // visited one, so at most one vertex is undetermined.
  std::vector<bool> seen(T.face_count(), false);
  std::queue<int> queue;
  seen[0] = true;
  queue.push(0);
  while (!queue.empty()) {
    int fi = queue.front();
    queue.pop();
    const Face& f = T.faces()[fi];
    for (int k = 0; k < 3; ++k) {
      VertexId p = f[k], q = f[(k + 1) % 3];
      if (u.count(p) && !u.count(q)) u[q] = d_at(Edge(p, q)) - u.at(p);
      if (u.count(q) && !u.count(p)) u[p] = d_at(Edge(p, q)) - u.at(q);
      for (int gj : T.faces_of_edge(Edge(p, q)))
        if (!seen[gj]) {
          seen[gj] = true;
          queue.push(gj);
        }
    }
  }

  double worst = 0.0;
  Edge worst_edge;
  for (const Edge& e : T.edges()) {
    double r = std::abs(u.at(e.a) + u.at(e.b) - d_at(e));
    if (r > worst) {
      worst = r;
      worst_edge = e;
    }
  }
  if (worst > tolerance)
    fail(ErrorCode::NotConformal, std::string(label) + ": residual " + fmt(worst) +
                                      " at edge " + edge_name(worst_edge));
  return u;
}

}  // namespace detail

ConformalFactor conformal_factor_between(const Triangulation& T, const PLMetric& l,
                                         const PLMetric& l2, double tolerance) {
  EdgeMap<double> d;
  for (const Edge& e : T.edges()) d[e] = 2.0 * std::log(l2.at(e) / l.at(e));
  ConformalFactor u;
  u.values = detail::solve_vertex_scales(T, d, tolerance, "metrics are not conformal");
  return u;
}

PLMetric induced_metric(const Triangulation& T, const PlanarCoords& coords) {
  for (const Face& f : T.faces())
    if (signed_area(coords.at(f[0]), coords.at(f[1]), coords.at(f[2])) == 0.0)
      fail(ErrorCode::DegenerateFace, "face (" + std::to_string(f[0]) + "," +
                                          std::to_string(f[1]) + "," + std::to_string(f[2]) +
                                          ") has zero area");
  PLMetric l;
  for (const Edge& e : T.edges()) l.lengths[e] = std::abs(coords.at(e.a) - coords.at(e.b));
  return l;
}

MarginReport is_geodesic_embedding(const Triangulation& T, const PlanarCoords& coords,
                                   const EmbeddingOptions& options) {
  MarginReport report;
  report.margin = std::numeric_limits<double>::infinity();

  // (a) positive signed areas
  for (const Face& f : T.faces()) {
    double a = signed_area(coords.at(f[0]), coords.at(f[1]), coords.at(f[2]));
    report.margin = std::min(report.margin, a);
    if (a <= 0.0) {
      report.detail = "nonpositive area at face (" + std::to_string(f[0]) + "," +
                      std::to_string(f[1]) + "," + std::to_string(f[2]) + ")";
      return report;
    }
  }

  // (b) interior coordinate angle sums equal 2*pi
  for (VertexId v : T.interior_vertices()) {
    double sum = 0.0;
    for (int fi : T.faces_at(v)) {
      Face f = T.faces()[fi];
      if (f[1] == v) f = {f[1], f[2], f[0]};
      if (f[2] == v) f = {f[2], f[0], f[1]};
      sum += angle_at(coords.at(f[0]), coords.at(f[1]), coords.at(f[2]));
    }
    if (std::abs(sum - 2.0 * M_PI) > options.angle_sum_tol) {
      report.detail = "angle sum " + fmt(sum) + " at interior vertex " + std::to_string(v);
      return report;
    }
  }

  // (c) simple boundary polygon
  std::vector<VertexId> cycle = T.boundary_cycle();
  std::size_t n = cycle.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // skip adjacent boundary edges (sharing an endpoint)
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      Complex p = coords.at(cycle[i]), q = coords.at(cycle[(i + 1) % n]);
      Complex r = coords.at(cycle[j]), s = coords.at(cycle[(j + 1) % n]);
      if (segments_intersect(p, q, r, s)) {
        report.detail = "boundary edges " + edge_name(Edge(cycle[i], cycle[(i + 1) % n])) +
                        " and " + edge_name(Edge(cycle[j], cycle[(j + 1) % n])) + " cross";
        return report;
      }
    }
  }

  // (d) exhaustive pairwise edge intersection
  if (options.exhaustive) {
    const auto& edges = T.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      for (std::size_t j = i + 1; j < edges.size(); ++j) {
        const Edge& e = edges[i];
        const Edge& g = edges[j];
        if (e.a == g.a || e.a == g.b || e.b == g.a || e.b == g.b) continue;
        if (segments_intersect(coords.at(e.a), coords.at(e.b), coords.at(g.a), coords.at(g.b))) {
          report.detail = "edges " + edge_name(e) + " and " + edge_name(g) + " cross";
          return report;
        }
      }
    }
  }

  report.pass = true;
  return report;
}

PlanarCoords develop_flat_metric(const Triangulation& T, const PLMetric& l, int root_face,
                                 double flat_tol) {
  validate_metric(T, l);
  CurvatureVector K = curvature_vector(T, l);
  for (VertexId v : T.interior_vertices())
    if (std::abs(K.at(v)) > flat_tol)
      fail(ErrorCode::NotFlat,
           "interior curvature " + fmt(K.at(v)) + " at vertex " + std::to_string(v));

  PlanarCoords coords;
  auto place_third = [&](VertexId w, VertexId p, VertexId q) {
    // Face (w,p,q) is counterclockwise; rotate q-p by the angle at p.
    double lpq = l.at(Edge(p, q));
    double lpw = l.at(Edge(p, w));
    double lqw = l.at(Edge(q, w));
    double theta = corner_angle(lpq, lpw, lqw);
    Complex zp = coords.at(p), zq = coords.at(q);
    return zp + (zq - zp) * std::polar(lpw / lpq, theta);
  };

  // Root face: first edge on the positive real axis.
  {
    const Face& f = T.faces()[root_face];
    double lij = l.at(Edge(f[0], f[1]));
    double lik = l.at(Edge(f[0], f[2]));
    double ljk = l.at(Edge(f[1], f[2]));
    coords.positions[f[0]] = Complex(0.0, 0.0);
    coords.positions[f[1]] = Complex(lij, 0.0);
    coords.positions[f[2]] = std::polar(lik, corner_angle(lij, lik, ljk));
  }

  std::vector<bool> placed(T.face_count(), false);
  std::queue<int> queue;
  placed[root_face] = true;
  queue.push(root_face);
  while (!queue.empty()) {
    int fi = queue.front();
    queue.pop();
    const Face& f = T.faces()[fi];
    for (int k = 0; k < 3; ++k) {
      for (int gj : T.faces_of_edge(Edge(f[k], f[(k + 1) % 3]))) {
        if (placed[gj]) continue;
        placed[gj] = true;
        Face g = T.faces()[gj];
        // rotate so the vertex to place (or re-check) comes first
        int w_slot = 0;
        for (int s = 0; s < 3; ++s)
          if (coords.positions.count(g[s]) == 0) w_slot = s;
        if (coords.positions.count(g[0]) && coords.positions.count(g[1]) &&
            coords.positions.count(g[2]))
          w_slot = 0;  // all placed; verify against slot 0
        Face r = g;
        if (w_slot == 1) r = {g[1], g[2], g[0]};
        if (w_slot == 2) r = {g[2], g[0], g[1]};
        Complex z = place_third(r[0], r[1], r[2]);
        auto it = coords.positions.find(r[0]);
        if (it == coords.positions.end()) {
          coords.positions[r[0]] = z;
        } else {
          double scale = std::max({1.0, std::abs(it->second), std::abs(z)});
          if (std::abs(it->second - z) > tol::kHolonomy * scale)
            fail(ErrorCode::InconsistentDevelopment,
                 "vertex " + std::to_string(r[0]) + " re-placed " +
                     fmt(std::abs(it->second - z)) + " away");
        }
        queue.push(gj);
      }
    }
  }
  return coords;
}

MarginReport circumcircle_delaunay(const Triangulation& T, const PlanarCoords& coords) {
  // Exact cocircularity counts as Delaunay; margins within kCocircular of
  // zero are flagged as cocircular rather than failed.
  constexpr double kCocircular = 1e-12;
  MarginReport report;
  report.pass = true;
  report.margin = std::numeric_limits<double>::infinity();
  for (const Edge& e : T.interior_edges()) {
    const auto& fs = T.faces_of_edge(e);
    for (int side = 0; side < 2; ++side) {
      const Face& f = T.faces()[fs[side]];
      VertexId opp = T.opposite_vertex(fs[1 - side], e);
      Circumcircle c = circumcircle(coords.at(f[0]), coords.at(f[1]), coords.at(f[2]));
      double m = std::abs(coords.at(opp) - c.center) / c.radius - 1.0;
      if (m < report.margin) {
        report.margin = m;
        if (std::abs(m) <= kCocircular) {
          report.detail = "cocircular across edge " + edge_name(e);
        } else if (m < 0.0) {
          report.pass = false;
          report.detail = "vertex " + std::to_string(opp) + " inside circumcircle across edge " +
                          edge_name(e);
        }
      }
    }
  }
  return report;
}

}  // namespace dcg
