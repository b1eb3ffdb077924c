#include "dcg/hyper.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dcg {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

void check_in_disk(Complex z, const char* what) {
  if (!(std::abs(z) < 1.0))
    fail(ErrorCode::OutOfDisk, std::string(what) + " |z| = " + fmt(std::abs(z)));
}

}  // namespace

double hyp_distance(Complex z, Complex w) {
  check_in_disk(z, "first point");
  check_in_disk(w, "second point");
  double t = std::abs((z - w) / (1.0 - std::conj(z) * w));
  return 2.0 * std::atanh(t);
}

Complex mobius_to_origin(Complex z0, Complex z) {
  check_in_disk(z0, "base point");
  if (!(std::abs(z) <= 1.0)) fail(ErrorCode::OutOfDisk, "point |z| = " + fmt(std::abs(z)));
  return (z - z0) / (1.0 - std::conj(z0) * z);
}

LogVector log_map(Complex z0, Complex z) {
  check_in_disk(z0, "base point");
  check_in_disk(z, "target point");
  if (z == z0) fail(ErrorCode::CoincidentPoints, "log map at its base point");
  Complex m = mobius_to_origin(z0, z);
  return std::polar(hyp_distance(z0, z), std::arg(m));
}

double hyp_corner_angle(double a, double b, double c) {
  // Hyperbolic triangles exist under the same side inequalities.
  if (!triangle_valid(a, b, c))
    fail(ErrorCode::InvalidTriangle,
         "sides (" + fmt(a) + "," + fmt(b) + "," + fmt(c) + ") violate triangle inequalities");
  double cosv = (std::cosh(a) * std::cosh(b) - std::cosh(c)) / (std::sinh(a) * std::sinh(b));
  cosv = std::clamp(cosv, -1.0, 1.0);
  return std::acos(cosv);
}

void validate_hyp_metric(const Triangulation& T, const HypPLMetric& lh) {
  for (const Face& f : T.faces()) {
    double a = lh.at(Edge(f[0], f[1]));
    double b = lh.at(Edge(f[1], f[2]));
    double c = lh.at(Edge(f[0], f[2]));
    if (!triangle_valid(a, b, c))
      fail(ErrorCode::InvalidTriangle, "face (" + std::to_string(f[0]) + "," +
                                           std::to_string(f[1]) + "," + std::to_string(f[2]) +
                                           ") fails triangle inequalities");
  }
}

CornerAngles hyp_corner_angles(const Triangulation& T, const HypPLMetric& lh) {
  CornerAngles out;
  out.angles.reserve(T.face_count());
  for (const Face& f : T.faces()) {
    double lij = lh.at(Edge(f[0], f[1]));
    double ljk = lh.at(Edge(f[1], f[2]));
    double lik = lh.at(Edge(f[0], f[2]));
    out.angles.push_back({hyp_corner_angle(lij, lik, ljk), hyp_corner_angle(lij, ljk, lik),
                          hyp_corner_angle(lik, ljk, lij)});
  }
  return out;
}

CurvatureVector hyp_curvature_vector(const Triangulation& T, const HypPLMetric& lh) {
  CornerAngles A = hyp_corner_angles(T, lh);
  VertexMap<double> sums;
  for (VertexId v : T.vertices()) sums[v] = 0.0;
  for (std::size_t fi = 0; fi < T.face_count(); ++fi) {
    const Face& f = T.faces()[fi];
    for (int k = 0; k < 3; ++k) sums[f[k]] += A.angles[fi][k];
  }
  CurvatureVector K;
  for (VertexId v : T.vertices()) {
    double full = T.is_boundary(v) ? M_PI : 2.0 * M_PI;
    K.values[v] = full - sums.at(v);
  }
  return K;
}

HypPLMetric induced_hyp_metric(const Triangulation& T, const DiskCoords& coords) {
  HypPLMetric lh;
  for (const Edge& e : T.edges()) lh.lengths[e] = hyp_distance(coords.at(e.a), coords.at(e.b));
  return lh;
}

HypPLMetric apply_hyp_conformal(const Triangulation& T, const HypPLMetric& lh,
                                const ConformalFactor& uh) {
  HypPLMetric out;
  for (const Edge& e : T.edges()) {
    double s = std::exp(0.5 * (uh.at(e.a) + uh.at(e.b))) * std::sinh(0.5 * lh.at(e));
    out.lengths[e] = 2.0 * std::asinh(s);
  }
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

ConformalFactor hyp_factor_between(const Triangulation& T, const HypPLMetric& lh,
                                   const HypPLMetric& lh2, double tolerance) {
  EdgeMap<double> d;
  for (const Edge& e : T.edges())
    d[e] = 2.0 * std::log(std::sinh(0.5 * lh2.at(e)) / std::sinh(0.5 * lh.at(e)));
  ConformalFactor uh;
  uh.values = detail::solve_vertex_scales(T, d, tolerance, "hyperbolic metrics are not conformal");
  return uh;
}

MarginReport is_hyp_delaunay(const Triangulation& T, const DiskCoords& coords) {
  for (VertexId v : T.vertices()) check_in_disk(coords.at(v), "vertex coordinate");
  return circumcircle_delaunay(T, coords.as_planar());
}

std::pair<DiskCoords, ClaimReport> induce_hyperbolic_embedding(const OneRing& ring,
                                                               const DiskCoords& coords,
                                                               double eps,
                                                               const InduceOptions& options) {
  const Triangulation& T = ring.ring;
  for (VertexId v : T.vertices()) check_in_disk(coords.at(v), "ring coordinate");
  Complex z0 = coords.at(ring.center);

  // Hypothesis: the ring embeds with every corner angle >= eps ...
  PlanarCoords planar = coords.as_planar();
  MarginReport emb = is_geodesic_embedding(T, planar);
  if (!emb.pass)
    fail(ErrorCode::HypothesisViolated, "ring is not a geodesic embedding: " + emb.detail);
  PLMetric l = induced_metric(T, planar);
  double min_angle = nondegeneracy_margin(T, l);
  if (min_angle < eps)
    fail(ErrorCode::HypothesisViolated,
         "corner angle " + fmt(min_angle) + " below eps = " + fmt(eps));

  // ... and edges at the center shorter than (1-|z0|^2) sin(eps). Strict
  // mode extends the bound to the rim edges as well.
  double bound = (1.0 - std::norm(z0)) * std::sin(eps);
  for (const Edge& e : T.edges()) {
    bool incident = (e.a == ring.center || e.b == ring.center);
    if (!incident && !options.strict_all_edges) continue;
    if (!(l.at(e) < bound))
      fail(ErrorCode::HypothesisViolated, "edge " + edge_name(e) + " length " + fmt(l.at(e)) +
                                              " >= (1-|z0|^2) sin(eps) = " + fmt(bound));
  }

  // Claims: log-vector turns between consecutive neighbors lie in (0,pi)
  // and close up to exactly 2*pi.
  ClaimReport report;
  std::size_t m = ring.cycle.size();
  std::vector<LogVector> v(m);
  for (std::size_t k = 0; k < m; ++k) v[k] = log_map(z0, coords.at(ring.cycle[k]));
  report.turns.resize(m);
  report.claim1_margin = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    double turn = std::arg(v[(k + 1) % m] / v[k]);
    report.turns[k] = turn;
    report.claim1_margin = std::min(report.claim1_margin, std::min(turn, M_PI - turn));
    sum += turn;
    if (!(turn > -options.claim1_slack && turn < M_PI + options.claim1_slack))
      fail(ErrorCode::ClaimFailed, "turn " + fmt(turn) + " at neighbor " +
                                       std::to_string(ring.cycle[k]) + " outside (0,pi)");
  }
  report.claim2_deviation = std::abs(sum - 2.0 * M_PI);
  if (report.claim2_deviation > options.claim2_tol)
    fail(ErrorCode::ClaimFailed, "turn sum deviates from 2*pi by " + fmt(report.claim2_deviation));
  report.pass = true;

  return {coords, report};
}

}  // namespace dcg
